"""Sparse Clifford algebra arithmetic over GF(2), exact rationals and float64.

Blades are stored as integer bitmasks: bit ``i`` set means generator ``e_i``
is a factor, and factors are always taken in ascending index order. A
multivector is a mapping ``bitmask -> coefficient`` with no zero entries.
"""

from __future__ import annotations

import enum
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from fractions import Fraction
from numbers import Number
from typing import Union

from .errors import ConfigurationError, RingMismatchError, UnsupportedRingError

Scalar = Union[int, Fraction, float]


class Ring(enum.Enum):
    """Coefficient ring of a multivector."""

    GF2 = "gf2"
    RATIONAL = "rational"
    FLOAT = "float"

    @property
    def signed(self) -> bool:
        return self is not Ring.GF2

    @property
    def zero(self) -> Scalar:
        return {Ring.GF2: 0, Ring.RATIONAL: Fraction(0), Ring.FLOAT: 0.0}[self]

    @property
    def one(self) -> Scalar:
        return {Ring.GF2: 1, Ring.RATIONAL: Fraction(1), Ring.FLOAT: 1.0}[self]

    def coerce(self, value) -> Scalar:
        """Convert ``value`` into this ring, refusing lossy conversions."""
        if isinstance(value, bool):
            value = int(value)
        if self is Ring.GF2:
            if isinstance(value, Fraction) and value.denominator == 1:
                value = value.numerator
            if isinstance(value, int):
                return value % 2
            raise UnsupportedRingError(f"cannot use {value!r} as a GF(2) coefficient")
        if self is Ring.RATIONAL:
            if isinstance(value, (int, Fraction)):
                return Fraction(value)
            raise UnsupportedRingError(
                f"cannot use inexact {value!r} as an exact rational coefficient"
            )
        if isinstance(value, (int, Fraction, float)):
            return float(value)
        raise UnsupportedRingError(f"cannot use {value!r} as a float coefficient")


@dataclass(frozen=True)
class Signature:
    """Diagonal metric: the square (+1 or -1) of every generator."""

    squares: tuple[int, ...]

    def __post_init__(self):
        squares = tuple(int(s) for s in self.squares)
        if any(s not in (1, -1) for s in squares):
            raise ConfigurationError(f"generator squares must be +1 or -1, got {squares}")
        object.__setattr__(self, "squares", squares)
        mask = 0
        for i, s in enumerate(squares):
            if s < 0:
                mask |= 1 << i
        object.__setattr__(self, "_neg_mask", mask)

    @classmethod
    def euclidean(cls, k: int) -> Signature:
        return cls((1,) * k)

    @classmethod
    def from_counts(cls, n_plus: int, n_minus: int = 0) -> Signature:
        return cls((1,) * n_plus + (-1,) * n_minus)

    @classmethod
    def parse(cls, text: str) -> Signature:
        """Parse a compact sign string such as ``"++-"`` (empty string allowed)."""
        try:
            return cls(tuple({"+": 1, "-": -1}[ch] for ch in text.strip()))
        except KeyError:
            raise ConfigurationError(f"signature string must contain only '+' and '-': {text!r}")

    def __len__(self) -> int:
        return len(self.squares)

    @property
    def k(self) -> int:
        return len(self.squares)

    @property
    def n_plus(self) -> int:
        return self.squares.count(1)

    @property
    def n_minus(self) -> int:
        return self.squares.count(-1)

    @property
    def neg_mask(self) -> int:
        return self._neg_mask

    def __str__(self) -> str:
        return "".join("+" if s > 0 else "-" for s in self.squares)


class FourGroup(enum.Enum):
    """The four natural involutions: identity, transposition, conjugation, both."""

    I = "I"
    T = "T"
    C = "C"
    H = "H"

    def __matmul__(self, other: FourGroup) -> FourGroup:
        # composition in the Klein four-group; every element is its own inverse
        t = (self in (FourGroup.T, FourGroup.H)) != (other in (FourGroup.T, FourGroup.H))
        c = (self in (FourGroup.C, FourGroup.H)) != (other in (FourGroup.C, FourGroup.H))
        return {(False, False): FourGroup.I, (True, False): FourGroup.T,
                (False, True): FourGroup.C, (True, True): FourGroup.H}[(t, c)]

    def blade_sign(self, grade: int) -> int:
        """Sign this involution applies to a blade of the given grade."""
        if self is FourGroup.I:
            e = 0
        elif self is FourGroup.T:
            e = grade * (grade - 1) // 2
        elif self is FourGroup.C:
            e = grade
        else:
            e = grade * (grade + 1) // 2
        return -1 if e & 1 else 1

    @property
    def reverses_products(self) -> bool:
        return self in (FourGroup.T, FourGroup.H)


# -- blades -------------------------------------------------------------------


def blade(indices: Iterable[int]) -> int:
    """Bitmask of the blade whose factors are ``indices`` (0-based, no repeats)."""
    bits = 0
    for i in indices:
        if i < 0:
            raise ConfigurationError(f"negative generator index {i}")
        if bits >> i & 1:
            raise ConfigurationError(f"repeated generator index {i}")
        bits |= 1 << i
    return bits


def blade_indices(bits: int) -> tuple[int, ...]:
    out = []
    i = 0
    while bits:
        if bits & 1:
            out.append(i)
        bits >>= 1
        i += 1
    return tuple(out)


def grade(bits: int) -> int:
    return bits.bit_count()


def reorder_sign(a: int, b: int) -> int:
    """Sign from sorting the concatenated factor string of ``a`` then ``b``.

    Each factor of ``b`` must pass every factor of ``a`` with a larger index.
    """
    a >>= 1
    swaps = 0
    while a:
        swaps += (a & b).bit_count()
        a >>= 1
    return -1 if swaps & 1 else 1


def blade_mul(a: int, b: int, sig: Signature) -> tuple[int, int]:
    """Product of two basis blades: ``(sign, result_blade)``.

    >>> blade_mul(0b11, 0b01, Signature.euclidean(2))
    (-1, 2)
    """
    if (a | b) >> sig.k:
        raise ConfigurationError(
            f"blade uses a generator beyond the {sig.k} in signature {sig}"
        )
    sign = reorder_sign(a, b)
    if (a & b & sig.neg_mask).bit_count() & 1:
        sign = -sign
    return sign, a ^ b


def blade_square(bits: int, sig: Signature) -> int:
    """Sign of ``b*b`` for a basis blade (always a scalar +1 or -1)."""
    g = bits.bit_count()
    e = g * (g - 1) // 2 + (bits & sig.neg_mask).bit_count()
    return -1 if e & 1 else 1


# -- multivectors -------------------------------------------------------------


class Multivector:
    """Immutable sparse element of a Clifford algebra (a cliffor).

    Over :attr:`Ring.GF2` elements are binors: signs are dropped and
    coefficients live in {0, 1}.
    """

    __slots__ = ("ring", "sig", "_terms", "_hash")

    def __init__(self, ring: Ring, sig: Signature, terms: Mapping[int, Scalar] | None = None):
        self.ring = ring
        self.sig = sig
        clean: dict[int, Scalar] = {}
        limit = 1 << sig.k
        for bits, c in (terms or {}).items():
            if not 0 <= bits < limit:
                raise ConfigurationError(f"blade {bits:#b} outside signature {sig}")
            c = ring.coerce(c)
            if c != 0:
                clean[bits] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, ring: Ring, sig: Signature, terms: dict[int, Scalar]) -> Multivector:
        # trusted constructor: terms already coerced and zero-free
        obj = cls.__new__(cls)
        obj.ring = ring
        obj.sig = sig
        obj._terms = terms
        obj._hash = None
        return obj

    # constructors

    @classmethod
    def zero(cls, ring: Ring, sig: Signature) -> Multivector:
        return cls._raw(ring, sig, {})

    @classmethod
    def scalar(cls, ring: Ring, sig: Signature, value: Scalar = 1) -> Multivector:
        return cls(ring, sig, {0: value})

    @classmethod
    def basis(cls, ring: Ring, sig: Signature, bits: int, coeff: Scalar = 1) -> Multivector:
        return cls(ring, sig, {bits: coeff})

    @classmethod
    def generator(cls, ring: Ring, sig: Signature, index: int) -> Multivector:
        if not 0 <= index < sig.k:
            raise ConfigurationError(f"generator index {index} out of range for {sig.k} generators")
        return cls._raw(ring, sig, {1 << index: ring.one})

    @classmethod
    def top(cls, ring: Ring, sig: Signature) -> Multivector:
        """Product of all generators in ascending order (the pseudoscalar)."""
        return cls._raw(ring, sig, {(1 << sig.k) - 1: ring.one})

    # access

    @property
    def terms(self) -> dict[int, Scalar]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def coefficient(self, bits: int) -> Scalar:
        return self._terms.get(bits, self.ring.zero)

    def grades(self) -> set[int]:
        return {b.bit_count() for b in self._terms}

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    # arithmetic

    def _check(self, other: Multivector) -> None:
        if self.ring is not other.ring:
            raise RingMismatchError(f"ring mismatch: {self.ring.value} vs {other.ring.value}")
        if self.sig != other.sig:
            raise RingMismatchError(f"signature mismatch: {self.sig} vs {other.sig}")

    def _lift(self, other) -> Multivector:
        if isinstance(other, Multivector):
            self._check(other)
            return other
        if isinstance(other, Number):
            return Multivector.scalar(self.ring, self.sig, other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return linear_combine([(1, self), (1, other)])

    __radd__ = __add__

    def __neg__(self) -> Multivector:
        if self.ring is Ring.GF2:
            return self
        return Multivector._raw(self.ring, self.sig, {b: -c for b, c in self._terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return linear_combine([(1, self), (-1, other)])

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return linear_combine([(1, other), (-1, self)])

    def __mul__(self, other):
        if isinstance(other, Multivector):
            return gp(self, other)
        if isinstance(other, Number):
            return linear_combine([(other, self)])
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, Number):
            return linear_combine([(other, self)])
        return NotImplemented

    # comparison

    def __eq__(self, other) -> bool:
        if isinstance(other, Multivector):
            return self.ring is other.ring and self.sig == other.sig and self._terms == other._terms
        if isinstance(other, Number):
            if not self._terms:
                return other == 0
            return len(self._terms) == 1 and self._terms.get(0) == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, self.sig, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        from .expr import print_expression

        return f"Multivector({self.ring.value}, {self.sig}, {print_expression(self)!r})"


def _combine(ring: Ring, acc: dict[int, Scalar], bits: int, c: Scalar) -> None:
    if ring is Ring.GF2:
        if bits in acc:
            del acc[bits]
        else:
            acc[bits] = 1
        return
    v = acc.get(bits, 0) + c
    if v == 0:
        acc.pop(bits, None)
    else:
        acc[bits] = v


def gp(x: Multivector, y: Multivector) -> Multivector:
    """Geometric (Clifford) product, the bilinear extension of :func:`blade_mul`."""
    x._check(y)
    ring, sig = x.ring, x.sig
    acc: dict[int, Scalar] = {}
    neg = sig.neg_mask
    if ring is Ring.GF2:
        for a in x._terms:
            for b in y._terms:
                _combine(ring, acc, a ^ b, 1)
        return Multivector._raw(ring, sig, acc)
    for a, ca in x._terms.items():
        for b, cb in y._terms.items():
            sign = reorder_sign(a, b)
            if (a & b & neg).bit_count() & 1:
                sign = -sign
            _combine(ring, acc, a ^ b, ca * cb if sign > 0 else -(ca * cb))
    return Multivector._raw(ring, sig, acc)


def linear_combine(pairs: Iterable[tuple[Scalar, Multivector]]) -> Multivector:
    """``sum(c * x for c, x in pairs)`` in canonical sparse form."""
    pairs = list(pairs)
    if not pairs:
        raise ConfigurationError("linear_combine needs at least one operand")
    first = pairs[0][1]
    ring, sig = first.ring, first.sig
    acc: dict[int, Scalar] = {}
    for c, x in pairs:
        first._check(x)
        c = ring.coerce(c)
        if c == 0:
            continue
        for b, v in x._terms.items():
            _combine(ring, acc, b, c * v)
    return Multivector._raw(ring, sig, acc)


def involution(x: Multivector, g: FourGroup) -> Multivector:
    """Apply one of I, T (transposition), C (conjugation), H = TC blade by blade."""
    if g is FourGroup.I or x.ring is Ring.GF2:
        return x
    terms = {}
    for b, c in x._terms.items():
        terms[b] = c if g.blade_sign(b.bit_count()) > 0 else -c
    return Multivector._raw(x.ring, x.sig, terms)


def scalar_part(x: Multivector) -> Scalar:
    return x._terms.get(0, x.ring.zero)


def norm_form(x: Multivector, g: FourGroup = FourGroup.I) -> Scalar:
    """The quadratic form ``Re(x^g x)``; ``g = I`` is the default norm."""
    if x.ring is Ring.GF2:
        raise UnsupportedRingError("quadratic forms are not evaluated over GF(2)")
    # distinct blades multiply to a non-scalar, so only diagonal pairs contribute
    total = x.ring.zero
    for b, c in x._terms.items():
        s = g.blade_sign(b.bit_count()) * blade_square(b, x.sig)
        total += c * c if s > 0 else -(c * c)
    return total


def grade_project(x: Multivector, g: int) -> Multivector:
    if g < 0:
        raise ConfigurationError(f"grade must be non-negative, got {g}")
    return Multivector._raw(
        x.ring, x.sig, {b: c for b, c in x._terms.items() if b.bit_count() == g}
    )


def random_multivector(
    rng, ring: Ring, sig: Signature, max_terms: int = 6, max_num: int = 9
) -> Multivector:
    """Random element with up to ``max_terms`` terms, for property checks.

    ``rng`` is a :class:`random.Random`. Rational coefficients have small
    numerators and denominators; float coefficients are uniform in [-1, 1].
    """
    n = 1 << sig.k
    count = rng.randint(1, min(max_terms, n))
    if n <= 1 << 20:
        blades = rng.sample(range(n), count)
    else:
        blades = [rng.randrange(n) for _ in range(count)]
    if ring is Ring.GF2:
        coeffs = [1] * count
    elif ring is Ring.RATIONAL:
        coeffs = [Fraction(rng.randint(-max_num, max_num), rng.randint(1, max_num)) for _ in blades]
    else:
        coeffs = [rng.uniform(-1.0, 1.0) for _ in blades]
    return Multivector(ring, sig, dict(zip(blades, coeffs)))
