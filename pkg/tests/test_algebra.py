import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from clifflogic.algebra import (
    FourGroup,
    Multivector,
    Ring,
    Signature,
    blade,
    blade_indices,
    blade_mul,
    blade_square,
    gp,
    grade_project,
    involution,
    linear_combine,
    norm_form,
    random_multivector,
    scalar_part,
)
from clifflogic.errors import (
    ConfigurationError,
    RingMismatchError,
    UnsupportedRingError,
)
from oracles import bits_of, bubble_product, word_of

Q = Ring.RATIONAL


def mv(sig, terms, ring=Q):
    return Multivector(ring, sig, terms)


def e(sig, i, ring=Q):
    return Multivector.generator(ring, sig, i)


# -- signatures and blades ---------------------------------------------------


def test_signature_parse_and_counts():
    sig = Signature.parse("++-+")
    assert sig.k == 4 and sig.n_plus == 3 and sig.n_minus == 1
    assert sig.neg_mask == 0b0100
    assert str(sig) == "++-+"
    assert Signature.from_counts(2, 1).squares == (1, 1, -1)


@pytest.mark.parametrize("text", ["+x", "0"])
def test_signature_rejects_garbage(text):
    with pytest.raises(ConfigurationError):
        Signature.parse(text)


def test_blade_roundtrip():
    assert blade([0, 2, 5]) == 0b100101
    assert blade_indices(0b100101) == (0, 2, 5)


def test_blade_mul_examples():
    sig = Signature.euclidean(2)
    assert blade_mul(0b1, 0b1, sig) == (1, 0)
    s01, r01 = blade_mul(0b01, 0b10, sig)
    s10, r10 = blade_mul(0b10, 0b01, sig)
    assert r01 == r10 == 0b11 and s01 == -s10
    assert blade_mul(0b11, 0b01, sig) == (-1, 0b10)


def test_blade_mul_out_of_range():
    with pytest.raises(ConfigurationError):
        blade_mul(0b100, 0b1, Signature.euclidean(2))


@pytest.mark.parametrize("k", range(0, 5))
def test_blade_mul_matches_oracle_every_signature(k):
    for squares in itertools.product((1, -1), repeat=k):
        sig = Signature(squares)
        for a in range(1 << k):
            for b in range(1 << k):
                s, w = bubble_product(word_of(a), word_of(b), squares)
                assert blade_mul(a, b, sig) == (s, bits_of(w))


def test_blade_square_matches_product():
    sig = Signature.parse("+-+-+")
    for b in range(32):
        s, r = blade_mul(b, b, sig)
        assert r == 0 and s == blade_square(b, sig)


# -- multivector basics ------------------------------------------------------


def test_canonical_sparse_form():
    sig = Signature.euclidean(2)
    x = mv(sig, {0: 0, 1: Fraction(1, 2), 3: 0})
    assert x.terms == {1: Fraction(1, 2)}
    assert mv(sig, {0: 1}) == Multivector.scalar(Q, sig, 1)
    assert hash(mv(sig, {1: 2, 2: 3})) == hash(mv(sig, {2: 3, 1: 2}))


def test_gp_examples():
    sig = Signature.euclidean(2)
    v = e(sig, 0) + e(sig, 1)
    assert gp(v, v) == Multivector.scalar(Q, sig, 2)
    vb = e(sig, 0, Ring.GF2) + e(sig, 1, Ring.GF2)
    assert not gp(vb, vb)
    x = mv(sig, {0: 3, 3: Fraction(-1, 7)})
    assert gp(Multivector.scalar(Q, sig, 1), x) == x


def test_linear_combine_examples():
    sig = Signature.euclidean(3)
    x = mv(sig, {1: 2, 6: Fraction(1, 3)})
    assert linear_combine([(1, x), (1, Multivector.zero(Q, sig))]) == x
    assert not linear_combine([(1, x), (-1, x)])
    xb = mv(sig, {1: 1, 6: 1}, Ring.GF2)
    assert not (xb + xb)


def test_ring_and_signature_mismatch():
    a = Multivector.generator(Q, Signature.euclidean(2), 0)
    with pytest.raises(RingMismatchError):
        gp(a, Multivector.generator(Ring.FLOAT, Signature.euclidean(2), 0))
    with pytest.raises(RingMismatchError):
        gp(a, Multivector.generator(Q, Signature.euclidean(3), 0))


def test_gf2_coercion():
    sig = Signature.euclidean(1)
    assert mv(sig, {1: 3}, Ring.GF2).terms == {1: 1}
    assert not mv(sig, {1: 2}, Ring.GF2)
    with pytest.raises(TypeError):
        mv(sig, {1: 0.5})


def test_involution_examples():
    sig = Signature.euclidean(2)
    e0, e1 = e(sig, 0), e(sig, 1)
    assert involution(e0, FourGroup.T) == e0
    assert involution(e0, FourGroup.C) == -e0
    assert involution(e0, FourGroup.H) == -e0
    assert involution(gp(e0, e1), FourGroup.T) == gp(e1, e0) == -gp(e0, e1)


def test_four_group_table():
    I, T, C, H = FourGroup
    assert T @ C == C @ T == H
    for g in FourGroup:
        assert g @ g == I
        for grade in range(6):
            assert g.blade_sign(grade) in (1, -1)
    assert T.reverses_products and H.reverses_products and not C.reverses_products


def test_scalar_part_examples():
    sig = Signature.euclidean(2)
    assert scalar_part(mv(sig, {0: 3, 1: 1})) == 3
    assert scalar_part(gp(e(sig, 0), e(sig, 1))) == 0


def test_norm_form_complex_numbers():
    sig = Signature((-1,))
    i = e(sig, 0)
    one = Multivector.scalar(Q, sig, 1)
    assert norm_form(i, FourGroup.I) == -1
    assert norm_form(i, FourGroup.H) == 1
    assert norm_form(one + i) == 0


def test_norm_form_gf2_unsupported():
    with pytest.raises(UnsupportedRingError):
        norm_form(Multivector.scalar(Ring.GF2, Signature.euclidean(1)))


def test_grade_project_examples():
    sig = Signature.euclidean(2)
    x = mv(sig, {0: 1, 1: 1, 3: 1})
    assert grade_project(x, 1) == e(sig, 0)
    assert grade_project(gp(e(sig, 0), e(sig, 1)), 2) == mv(sig, {3: 1})
    total = Multivector.zero(Q, sig)
    for g in range(3):
        total = total + grade_project(x, g)
    assert total == x
    with pytest.raises(ConfigurationError):
        grade_project(x, -1)


# -- properties --------------------------------------------------------------

SIGS = st.lists(st.sampled_from((1, -1)), min_size=0, max_size=6).map(lambda s: Signature(tuple(s)))


@st.composite
def rational_mvs(draw, count=3):
    sig = draw(SIGS)
    seed = draw(st.integers(0, 2**32 - 1))
    rng = random.Random(seed)
    return [random_multivector(rng, Q, sig) for _ in range(count)]


@given(rational_mvs())
def test_associativity(xs):
    x, y, z = xs
    assert gp(gp(x, y), z) == gp(x, gp(y, z))


@given(rational_mvs())
def test_distributivity(xs):
    x, y, z = xs
    assert gp(x, y + z) == gp(x, y) + gp(x, z)
    assert gp(y + z, x) == gp(y, x) + gp(z, x)


@given(rational_mvs(2))
def test_trace_symmetry(xs):
    x, y = xs
    assert scalar_part(gp(x, y)) == scalar_part(gp(y, x))


@given(rational_mvs(2))
def test_involution_laws(xs):
    x, y = xs
    T, C, H = FourGroup.T, FourGroup.C, FourGroup.H
    xy = gp(x, y)
    assert involution(xy, T) == gp(involution(y, T), involution(x, T))
    assert involution(xy, C) == gp(involution(x, C), involution(y, C))
    assert involution(xy, H) == gp(involution(y, H), involution(x, H))
    for g in FourGroup:
        assert involution(involution(x, g), g) == x
    assert involution(involution(x, T), C) == involution(x, H)


@given(SIGS, st.data())
def test_anticommutation(sig, data):
    if sig.k < 2:
        return
    a, b = data.draw(st.lists(st.integers(0, sig.k - 1), min_size=2, max_size=2, unique=True))
    assert gp(e(sig, a), e(sig, b)) == -gp(e(sig, b), e(sig, a))
    ga, gb = e(sig, a, Ring.GF2), e(sig, b, Ring.GF2)
    assert gp(ga, gb) == gp(gb, ga)


@given(SIGS, st.lists(st.fractions(max_denominator=20).filter(lambda f: abs(f) < 50), min_size=6, max_size=6))
def test_clifford_law(sig, coeffs):
    v = mv(sig, {1 << i: coeffs[i] for i in range(sig.k)})
    expected = sum((coeffs[i] ** 2 * sig.squares[i] for i in range(sig.k)), Fraction(0))
    assert gp(v, v) == Multivector.scalar(Q, sig, expected)


@given(rational_mvs(1))
def test_norm_form_matches_full_product(xs):
    (x,) = xs
    for g in FourGroup:
        assert norm_form(x, g) == scalar_part(gp(involution(x, g), x))
