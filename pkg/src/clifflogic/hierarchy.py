"""Iterated Clifford algebras ``C_{n+1} = Cliff(C_n)``.

Each algebra is made a quadratic space by one of the four natural forms
``Re(z^g z)``; its basis blades then become the generators of the next
level. Two sign conventions are not fixed by the construction itself: whether
a new generator squares to ``+||z||`` or ``-||z||``, and whether
``Cliff(p, q)`` lists the positive or negative squares first. Every
combination is computable and :func:`search_convention` ranks them against
:data:`REFERENCE_CHAIN`.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .algebra import FourGroup, Multivector, Signature
from .errors import BoundExceededError, ConfigurationError

MAX_ENUM_GENERATORS = 24
MAX_LEVEL = 6

# reference generator signatures of C_1 .. C_6, each as listed (p, q)
REFERENCE_CHAIN: tuple[tuple[int, int], ...] = (
    (0, 0),
    (1, 0),
    (2, 0),
    (3, 1),
    (10, 6),
    (32832, 32704),
)


class SquareRule(enum.Enum):
    Q = "Q"
    MINUS_Q = "MinusQ"


class NotationOrder(enum.Enum):
    PLUS_FIRST = "PlusFirst"
    MINUS_FIRST = "MinusFirst"


@dataclass(frozen=True)
class ConventionConfig:
    form_variant: FourGroup = FourGroup.I
    square_rule: SquareRule = SquareRule.Q
    notation_order: NotationOrder = NotationOrder.PLUS_FIRST

    @classmethod
    def all(cls) -> list[ConventionConfig]:
        """All 16 combinations in a fixed order."""
        return [
            cls(f, r, o)
            for f, r, o in itertools.product(FourGroup, SquareRule, NotationOrder)
        ]

    @classmethod
    def from_dict(cls, d: dict) -> ConventionConfig:
        return cls(
            FourGroup(d.get("form_variant", "I")),
            SquareRule(d.get("square_rule", "Q")),
            NotationOrder(d.get("notation_order", "PlusFirst")),
        )

    def to_dict(self) -> dict:
        return {
            "form_variant": self.form_variant.value,
            "square_rule": self.square_rule.value,
            "notation_order": self.notation_order.value,
        }

    @property
    def isometric(self) -> bool:
        """Whether the embedding of a level into the next preserves the form.

        A grade-1 vector picks up the form's sign on grade 1 (+ for I, T and
        - for C, H); the square rule must cancel it.
        """
        vector_sign = self.form_variant.blade_sign(1)
        rule_sign = 1 if self.square_rule is SquareRule.Q else -1
        return vector_sign * rule_sign == 1


@dataclass(frozen=True)
class QuadraticSignature:
    n_plus: int
    n_minus: int

    @property
    def dim(self) -> int:
        return self.n_plus + self.n_minus

    def as_tuple(self) -> tuple[int, int]:
        return (self.n_plus, self.n_minus)


def blade_norm_signs(sig: Signature, form: FourGroup = FourGroup.I) -> np.ndarray:
    """``Re(b^g b)`` for every basis blade ``b``, indexed by bitmask.

    Closed form: the blade square ``(-1)^(g(g-1)/2) * prod(squares)`` times the
    involution's per-grade sign.
    """
    k = sig.k
    if k > MAX_ENUM_GENERATORS:
        raise BoundExceededError(
            f"{k} generators exceeds the enumeration bound {MAX_ENUM_GENERATORS}"
        )
    blades = np.arange(1 << k, dtype=np.uint32)
    g = np.bitwise_count(blades).astype(np.int64)
    neg = np.bitwise_count(blades & np.uint32(sig.neg_mask)).astype(np.int64)
    exponent = g * (g - 1) // 2 + neg
    if form is FourGroup.T:
        exponent += g * (g - 1) // 2
    elif form is FourGroup.C:
        exponent += g
    elif form is FourGroup.H:
        exponent += g * (g + 1) // 2
    return np.where(exponent & 1, -1, 1).astype(np.int8)


def induced_signature(
    sig: Signature, cfg: ConventionConfig | FourGroup = FourGroup.I
) -> QuadraticSignature:
    """Count the basis blades of positive and negative norm."""
    form = cfg.form_variant if isinstance(cfg, ConventionConfig) else cfg
    signs = blade_norm_signs(sig, form)
    n_minus = int(np.count_nonzero(signs < 0))
    return QuadraticSignature(signs.size - n_minus, n_minus)


def next_signature(sig: Signature, cfg: ConventionConfig) -> Signature:
    """Generator squares of ``Cliff`` of this algebra: one generator per blade."""
    signs = blade_norm_signs(sig, cfg.form_variant)
    if cfg.square_rule is SquareRule.MINUS_Q:
        signs = -signs
    return Signature(tuple(signs.tolist()))


@dataclass(frozen=True)
class HierarchyLevel:
    """One algebra ``C_n`` of the chain.

    ``generators`` is its generator signature; ``induced`` is the signature of
    its own norm form, absent when the algebra is too big to enumerate.
    """

    n: int
    generators: Signature
    notated: tuple[int, int]
    induced: QuadraticSignature | None

    @property
    def dim_log2(self) -> int:
        return self.generators.k

    @property
    def dim(self) -> int:
        return 1 << self.generators.k

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "generator_count": self.generators.k,
            "dim_log2": self.dim_log2,
            "generator_squares": {
                "plus": self.generators.n_plus,
                "minus": self.generators.n_minus,
            },
            "notated": list(self.notated),
            "induced": None if self.induced is None else list(self.induced.as_tuple()),
        }


def _notate(sig: Signature, order: NotationOrder) -> tuple[int, int]:
    if order is NotationOrder.PLUS_FIRST:
        return (sig.n_plus, sig.n_minus)
    return (sig.n_minus, sig.n_plus)


@dataclass
class Hierarchy:
    cfg: ConventionConfig
    levels: list[HierarchyLevel] = field(default_factory=list)

    def level(self, n: int) -> HierarchyLevel:
        if not 1 <= n <= len(self.levels):
            raise ConfigurationError(f"level {n} not constructed (have 1..{len(self.levels)})")
        return self.levels[n - 1]

    def level_of(self, x: Multivector) -> int:
        for lv in self.levels:
            if lv.generators == x.sig:
                return lv.n
        raise ConfigurationError("multivector does not live in any constructed level")

    def iota_embed(self, x: Multivector) -> Multivector:
        """Vector image of a cliffor of ``C_n`` in ``C_{n+1}``.

        Basis blade number ``b`` of ``C_n`` becomes generator ``b`` of the
        next level.
        """
        n = self.level_of(x)
        if n + 1 > len(self.levels):
            raise ConfigurationError(f"target level {n + 1} not constructed")
        target = self.levels[n].generators
        return Multivector(x.ring, target, {1 << b: c for b, c in x.items()})


def hierarchy_chain(n_max: int, cfg: ConventionConfig | None = None) -> Hierarchy:
    """Build ``C_1 .. C_{n_max}`` starting from the reals (no generators)."""
    cfg = cfg or ConventionConfig()
    if not 1 <= n_max <= MAX_LEVEL:
        raise BoundExceededError(f"n_max must be in 1..{MAX_LEVEL}, got {n_max}")
    h = Hierarchy(cfg)
    sig = Signature(())
    for n in range(1, n_max + 1):
        induced = None
        if sig.k <= MAX_ENUM_GENERATORS:
            induced = induced_signature(sig, cfg)
        h.levels.append(HierarchyLevel(n, sig, _notate(sig, cfg.notation_order), induced))
        if n < n_max:
            sig = next_signature(sig, cfg)
    return h


@dataclass(frozen=True)
class SqrtCheck:
    """Does ``|p - q|`` equal the square root of the generator count?"""

    level: int
    difference: int
    generator_count: int
    holds: bool

    def to_dict(self) -> dict:
        return {
            "level": self.level,
            "difference": self.difference,
            "sqrt_generator_count": math.sqrt(self.generator_count),
            "holds": self.holds,
        }


@dataclass(frozen=True)
class MatchReport:
    cfg: ConventionConfig
    computed: tuple[tuple[int, int], ...]
    matches: tuple[bool, ...]
    sqrt_checks: tuple[SqrtCheck, ...]

    @property
    def n_matches(self) -> int:
        return sum(self.matches)

    @property
    def first_mismatch(self) -> int | None:
        for i, ok in enumerate(self.matches, start=1):
            if not ok:
                return i
        return None

    def to_dict(self) -> dict:
        return {
            "config": self.cfg.to_dict(),
            "computed": [list(t) for t in self.computed],
            "expected": [list(t) for t in REFERENCE_CHAIN[: len(self.computed)]],
            "matches": list(self.matches),
            "n_matches": self.n_matches,
            "first_mismatch": self.first_mismatch,
            "sqrt_checks": [c.to_dict() for c in self.sqrt_checks],
        }


def sqrt_law(level: int, notated: tuple[int, int]) -> SqrtCheck:
    p, q = notated
    diff = abs(p - q)
    count = p + q
    root = math.isqrt(count)
    return SqrtCheck(level, diff, count, root * root == count and root == diff)


def match_paper_chain(cfg: ConventionConfig, n_max: int = MAX_LEVEL) -> MatchReport:
    h = hierarchy_chain(n_max, cfg)
    computed = tuple(lv.notated for lv in h.levels)
    matches = tuple(c == e for c, e in zip(computed, REFERENCE_CHAIN))
    checks = tuple(sqrt_law(lv.n, lv.notated) for lv in h.levels if lv.n >= 2)
    return MatchReport(cfg, computed, matches, checks)


def search_convention(n_max: int = MAX_LEVEL) -> list[tuple[ConventionConfig, MatchReport]]:
    """Evaluate every convention; best match count first (stable on ties)."""
    rows = [(cfg, match_paper_chain(cfg, n_max)) for cfg in ConventionConfig.all()]
    rows.sort(key=lambda row: -row[1].n_matches)
    return rows


def reference_consistency() -> dict:
    """Arithmetic checks on the reference chain itself."""
    p5, q5 = REFERENCE_CHAIN[4]
    p6, q6 = REFERENCE_CHAIN[5]
    return {
        "level6_sum_is_65536": p6 + q6 == 65536,
        "level5_sum_is_16": p5 + q5 == 16,
        "level5_difference_is_sqrt16": p5 - q5 == math.isqrt(16),
        "level6_difference": p6 - q6,
        "level6_difference_is_sqrt65536": p6 - q6 == math.isqrt(65536),
    }

