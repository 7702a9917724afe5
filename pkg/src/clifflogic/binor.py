"""Binor logic: the Clifford algebra over GF(2) read as a second-order logic.

A binor is a :class:`~clifflogic.algebra.Multivector` over ``Ring.GF2``.
Monomials are sharp states, sums of monomials are crisp states, ``1`` is the
empty set (FALSE, the vacuum) and ``0`` is the meaningless value.

The Boolean reference operations on truth-valued functions live here too, so
the two logics can be compared side by side.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .algebra import Multivector, Ring, Signature, gp
from .errors import BoundExceededError, ConfigurationError, DomainError, RingMismatchError

MAX_FULL_STATE_GENERATORS = 20


def binor_signature(n: int) -> Signature:
    """Signature for ``n`` uniquadratic atoms (all squares +1)."""
    return Signature.euclidean(n)


def _require_binor(*xs: Multivector) -> None:
    for x in xs:
        if x.ring is not Ring.GF2:
            raise RingMismatchError(f"expected a binor (GF(2) multivector), got ring {x.ring.value}")


def iota_unit(s: int, sig: Signature) -> Multivector:
    """The unit set ``gamma_s``: a grade-1 monomial squaring to 1."""
    if not 0 <= s < sig.k:
        raise ConfigurationError(f"atom index {s} out of range for {sig.k} atoms")
    return Multivector.generator(Ring.GF2, sig, s)


def binor_one(sig: Signature) -> Multivector:
    return Multivector.scalar(Ring.GF2, sig, 1)


def binor_zero(sig: Signature) -> Multivector:
    return Multivector.zero(Ring.GF2, sig)


def binor_xor(a: Multivector, b: Multivector) -> Multivector:
    """Binor product ``A XOR B := AB``."""
    _require_binor(a, b)
    return gp(a, b)


def binor_sum(a: Multivector, b: Multivector) -> Multivector:
    """Termwise addition mod 2. A zero result means 'undefined'."""
    _require_binor(a, b)
    return a + b


def binor_sup(a: Multivector, b: Multivector) -> Multivector:
    """OR: monomial terms present in either or both."""
    _require_binor(a, b)
    a._check(b)
    return Multivector._raw(Ring.GF2, a.sig, {t: 1 for t in a.terms.keys() | b.terms.keys()})


def binor_inf(a: Multivector, b: Multivector) -> Multivector:
    """AND: monomial terms present in both."""
    _require_binor(a, b)
    a._check(b)
    return Multivector._raw(Ring.GF2, a.sig, {t: 1 for t in a.terms.keys() & b.terms.keys()})


def complement_top(a: Multivector) -> Multivector:
    """Complementation duality: multiplication by the top state."""
    _require_binor(a)
    return gp(Multivector.top(Ring.GF2, a.sig), a)


def binor_xand(a: Multivector, b: Multivector) -> Multivector:
    """``A XAND B := top * A * B``."""
    return complement_top(binor_xor(a, b))


def full_algebra_state(sig: Signature, bound: int = MAX_FULL_STATE_GENERATORS) -> Multivector:
    """The formal sum of all monomials, built as the product of ``(1 + gamma_s)``."""
    if sig.k > bound:
        raise BoundExceededError(f"{sig.k} generators exceeds the enumeration bound {bound}")
    state = binor_one(sig)
    for s in range(sig.k):
        state = gp(state, binor_one(sig) + iota_unit(s, sig))
    return state


def monomial_grade(a: Multivector) -> int:
    """Cardinality of the set a sharp (monomial) binor describes."""
    _require_binor(a)
    if not a.is_monomial():
        raise DomainError(f"grade is defined only for monomials; got {len(a)} terms")
    (bits,) = a.terms
    return bits.bit_count()


# -- Boolean reference logic --------------------------------------------------


class BoolOp(enum.Enum):
    OR = "OR"
    AND = "AND"
    XOR = "XOR"
    XAND = "XAND"
    POR = "POR"
    PAND = "PAND"


@dataclass(frozen=True)
class BoolFn:
    """A truth-valued function on a finite sample space, one bit per point."""

    values: tuple[int, ...]

    def __post_init__(self):
        vals = tuple(int(v) for v in self.values)
        if any(v not in (0, 1) for v in vals):
            raise DomainError(f"truth values must be 0 or 1, got {vals}")
        object.__setattr__(self, "values", vals)

    def __len__(self) -> int:
        return len(self.values)

    @classmethod
    def constant(cls, value: int, size: int) -> BoolFn:
        return cls((value,) * size)


def bool_eval(op: BoolOp | str, a: BoolFn, b: BoolFn) -> BoolFn:
    """Pointwise Boolean operation, all arithmetic mod 2.

    POR and PAND have global guards (``AB`` identically 0, resp. ``A+B``
    identically 1); when the guard fails the result is the constant-0 default.
    """
    op = BoolOp(op)
    if len(a) != len(b):
        raise DomainError("truth functions live on different sample spaces")
    pairs = list(zip(a.values, b.values))
    if op is BoolOp.OR:
        return BoolFn(tuple(x | y for x, y in pairs))
    if op is BoolOp.AND:
        return BoolFn(tuple(x & y for x, y in pairs))
    if op is BoolOp.XOR:
        return BoolFn(tuple((x + y) % 2 for x, y in pairs))
    if op is BoolOp.XAND:
        return BoolFn(tuple((1 + x + y) % 2 for x, y in pairs))
    if op is BoolOp.POR:
        if all(x * y == 0 for x, y in pairs):
            return BoolFn(tuple((x + y) % 2 for x, y in pairs))
        return BoolFn.constant(0, len(a))
    if all((x + y) % 2 == 1 for x, y in pairs):
        return BoolFn(tuple((1 + x + y) % 2 for x, y in pairs))
    return BoolFn.constant(0, len(a))
