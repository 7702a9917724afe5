"""Independent reference computations used only by the tests."""

from __future__ import annotations

from fractions import Fraction
from math import comb


def bubble_product(a: list[int], b: list[int], squares: tuple[int, ...]) -> tuple[int, list[int]]:
    """Multiply two generator words by literal bubble sort and contraction.

    Words are lists of generator indices. Returns (sign, canonical word).
    """
    word = list(a) + list(b)
    sign = 1
    changed = True
    while changed:
        changed = False
        i = 0
        while i < len(word) - 1:
            x, y = word[i], word[i + 1]
            if x > y:
                word[i], word[i + 1] = y, x
                sign = -sign
                changed = True
                i += 1
            elif x == y:
                sign *= squares[x]
                del word[i : i + 2]
                changed = True
            else:
                i += 1
    return sign, word


def bits_of(word: list[int]) -> int:
    out = 0
    for i in word:
        out |= 1 << i
    return out


def word_of(bits: int) -> list[int]:
    return [i for i in range(bits.bit_length()) if bits >> i & 1]


def time_spectrum_reference(n: int) -> dict[int, int]:
    """Eigenvalues of a sum of n commuting +-1 involutions on 16**n states.

    Each octad term has eigenvalues +-1 with equal multiplicity 8.
    """
    return {n - 2 * k: comb(n, k) * 8**n for k in range(n + 1)}


def eta_moduli_reference(n: int) -> set[Fraction]:
    """|sum of n commuting square-minus-one terms| / n has moduli |n - 2k| / n."""
    return {Fraction(abs(n - 2 * k), n) for k in range(n + 1)}


def form_sign_by_words(bits: int, squares: tuple[int, ...], form: str) -> int:
    """Scalar ``Re(b^g b)`` of a basis blade, from explicit generator words.

    T writes the word backwards; C negates every factor.
    """
    word = word_of(bits)
    left = word[::-1] if form in ("T", "H") else word
    sign, rest = bubble_product(left, word, squares)
    assert not rest
    if form in ("C", "H") and len(word) % 2:
        sign = -sign
    return sign


def induced_counts(squares: tuple[int, ...], form: str) -> tuple[int, int]:
    plus = minus = 0
    for bits in range(1 << len(squares)):
        if form_sign_by_words(bits, squares, form) > 0:
            plus += 1
        else:
            minus += 1
    return plus, minus


def induced_counts_by_grade(p: int, q: int, form: str) -> tuple[int, int]:
    """Same counts from binomials over (grade, negative factors)."""
    extra = {"I": lambda g: 0, "T": lambda g: g * (g - 1) // 2, "C": lambda g: g, "H": lambda g: g * (g + 1) // 2}[form]
    plus = minus = 0
    for j in range(q + 1):
        for i in range(p + 1):
            g = i + j
            n = comb(p, i) * comb(q, j)
            if (g * (g - 1) // 2 + j + extra(g)) % 2:
                minus += n
            else:
                plus += n
    return plus, minus


_PIECES = [
    "e1", "e2", "e3", "e25", "e0", "a", "b", "z", "1", "0", "7/3", "1/0", "2.5", "1e999", ".5e-3",
    "+", "-", "*", "(", ")", ",", "T(", "C(", "H(", "Re(", "grade(", "top(", "top()", " ", "\n",
    "@", "^", "/", "π", "\x00", "e", "ee1", "1.2.3", "e1e2", "grade(e1,", "Re", "--", "**", "99999999999999999999",
]


def malformed_text(rng) -> str:
    """Random token soup, mostly ill-formed; used to check parser totality."""
    kind = rng.random()
    if kind < 0.6:
        return "".join(rng.choice(_PIECES) for _ in range(rng.randint(1, 12)))
    if kind < 0.8:
        return "".join(chr(rng.randint(0, 0x2FF)) for _ in range(rng.randint(1, 20)))
    if kind < 0.9:
        depth = rng.randint(150, 400)
        return "(" * depth + "e1" + ")" * rng.randint(0, depth)
    return rng.choice(["-", "T(", "9"]) * rng.randint(100, 6000)
