from fractions import Fraction

import numpy as np
import pytest
import scipy.sparse as sp

from clifflogic.dirac import (
    MU_INDICES,
    MassMode,
    OctadConfig,
    build_toy_model,
    commutator_xp,
    eta_moduli_oracle,
    eta_spectrum,
    evolution_derivative_error,
    mass_evolution,
    octad_factorization_check,
    octad_parity,
    time_spectrum,
    time_spectrum_oracle,
)
from clifflogic.errors import BoundExceededError, ConfigurationError, DomainError
from clifflogic.matrix_rep import OperatorMatrix, max_dev, spectrum
from oracles import eta_moduli_reference, time_spectrum_reference


@pytest.fixture(scope="module")
def models():
    return {n: build_toy_model(OctadConfig(N=n)) for n in (1, 2)}


def random_hermitian(d, seed):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    return OperatorMatrix((a + a.conj().T) / 2)


def test_config_validation():
    cfg = OctadConfig(N=2, tau=0.5, hbar=3.0)
    assert cfg.ergon * cfg.N * cfg.tau == pytest.approx(cfg.hbar)
    assert cfg.dim == 256
    for bad in (dict(N=0), dict(N=7), dict(tau=0), dict(hbar=-1), dict(octad_squares=(1,) * 7), dict(time_index=5)):
        with pytest.raises(ConfigurationError):
            OctadConfig(**bad)
    assert OctadConfig(mass_mode="average").mass_mode is MassMode.AVERAGE


def test_build_dimensions(models):
    assert models[1].x[1].dim == 16
    assert models[2].eta.dim == 256
    with pytest.raises(BoundExceededError):
        build_toy_model(OctadConfig(N=4))
    with pytest.raises(BoundExceededError):
        build_toy_model(OctadConfig(N=4), eigensolve=False)


def test_pairs_commute_across_octads(models):
    ops = models[2]
    for mu in MU_INDICES:
        for nu in MU_INDICES:
            a, b = ops.pair(1, mu, 5), ops.pair(2, nu, 6)
            assert max_dev(a @ b, b @ a) <= 1e-12


def test_operator_symmetries(models):
    for ops in models.values():
        eta = ops.eta.tocsr()
        assert max_dev(eta, -eta.conj().T) <= 1e-12
        for mu in MU_INDICES:
            for op in (ops.x[mu], ops.p[mu]):
                m = op.tocsr()
                assert max_dev(m, m.conj().T) <= 1e-12


def test_time_spectrum_oracles_agree():
    for n in range(1, 7):
        assert time_spectrum_oracle(n) == time_spectrum_reference(n)
        assert set(eta_moduli_oracle(n)) == eta_moduli_reference(n)
    assert eta_moduli_oracle(3) == [Fraction(1, 3), Fraction(1)]


@pytest.mark.parametrize("n", [1, 2])
def test_time_spectrum(models, n):
    rep = time_spectrum(OctadConfig(N=n), models[n])
    assert rep.extras["integer_deviation"] <= 1e-9
    assert rep.extras["max_imag"] <= 1e-9
    assert rep.extras["within_bounds"]
    got = {int(round(v.real)): m for v, m in zip(rep.values, rep.multiplicities)}
    assert got == time_spectrum_reference(n)


def test_time_spectrum_scales_with_tau():
    cfg = OctadConfig(N=1, tau=0.25)
    rep = time_spectrum(cfg)
    assert np.allclose(rep.values, (-0.25, 0.25))
    assert rep.extras["values_in_tau"] == [-1, 1]


def test_spectra_identical_across_mu(models):
    ops = models[2]
    ref = spectrum(ops.x[1]).as_multiset()
    for mu in MU_INDICES[1:]:
        assert spectrum(ops.x[mu]).as_multiset() == ref
        assert spectrum(ops.p[mu]).as_multiset() == spectrum(ops.p[1]).as_multiset()


@pytest.mark.parametrize("n", [1, 2])
def test_eta_spectrum(models, n):
    rep = eta_spectrum(OctadConfig(N=n), models[n])
    assert rep.extras["max_modulus"] <= 1 + 1e-12
    assert rep.extras["max_real_part"] <= 1e-12
    expected = sorted(float(f) for f in eta_moduli_reference(n))
    assert np.allclose(rep.extras["distinct_moduli"], expected, atol=1e-12)


@pytest.mark.parametrize("n", [1, 2])
def test_commutators(models, n):
    cfg = OctadConfig(N=n)
    for mu in MU_INDICES:
        for nu in MU_INDICES:
            r = commutator_xp(cfg, mu, nu, models[n])
            if mu == nu:
                assert r.c == 2 and r.residual <= 1e-12
            else:
                assert r.norm <= 1e-12


def test_commutator_bad_index():
    with pytest.raises(ConfigurationError):
        commutator_xp(OctadConfig(), 1, 5)


def test_commutator_scales_with_hbar():
    r = commutator_xp(OctadConfig(N=1, hbar=2.5, tau=0.7), 2, 2)
    assert r.c == 2 and r.residual <= 1e-12


def test_evolution_trivial_cases(models):
    cfg = OctadConfig(N=1)
    x = random_hermitian(16, 1)
    assert mass_evolution(cfg, x, 0.0, models[1]) is x
    ident = OperatorMatrix(np.eye(16))
    assert np.allclose(mass_evolution(cfg, ident, 0.37, models[1]).toarray(), np.eye(16), atol=1e-12)


def test_evolution_errors(models):
    cfg = OctadConfig(N=1)
    with pytest.raises(ConfigurationError):
        mass_evolution(cfg, OperatorMatrix(np.eye(8)), 0.1, models[1])
    with pytest.raises(DomainError):
        mass_evolution(cfg, OperatorMatrix(np.full((16, 16), np.nan)), 0.1, models[1])
    with pytest.raises(DomainError):
        mass_evolution(cfg, OperatorMatrix(np.eye(16)), float("inf"), models[1])


@pytest.mark.parametrize("mode", list(MassMode))
def test_evolution_derivative(mode):
    cfg = OctadConfig(N=2, mass_mode=mode)
    ops = build_toy_model(cfg, eigensolve=False)
    assert evolution_derivative_error(cfg, random_hermitian(256, 5), ops=ops) <= 1e-6


def test_evolution_is_similarity(models):
    cfg = OctadConfig(N=1)
    # M_f is anti-Hermitian here, so U is not unitary; spectra survive anyway
    mass = models[1].mass.tocsr()
    assert max_dev(mass, -mass.conj().T) == 0.0
    x = random_hermitian(16, 2)
    y = mass_evolution(cfg, x, 0.2, models[1]).toarray()
    got = np.sort_complex(np.linalg.eigvals(y))
    assert np.allclose(got, np.linalg.eigvalsh(x.toarray()), atol=1e-8)
    back = mass_evolution(cfg, OperatorMatrix(y), -0.2, models[1]).toarray()
    assert np.allclose(back, x.toarray(), atol=1e-9)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_factorization(n):
    ok, dev = octad_factorization_check(OctadConfig(N=n))
    assert ok and dev <= 1e-12


def test_factorization_negative_control():
    bad_chain = octad_parity().copy()
    bad_chain[0, 0] *= -1
    ok, dev = octad_factorization_check(OctadConfig(N=2), chain=bad_chain)
    assert not ok and dev > 0.5
    with pytest.raises(BoundExceededError):
        octad_factorization_check(OctadConfig(N=4))


def test_provenance(models):
    prov = models[1].provenance
    assert prov["config"]["N"] == 1 and prov["relation_deviation"] <= 1e-12


def test_operators_are_even():
    # every operator is a sum of grade-2 blade images: it commutes with the total parity
    ops = build_toy_model(OctadConfig(N=2), eigensolve=False)
    parity = sp.csr_matrix(np.kron(octad_parity(), octad_parity()))
    for op in (ops.eta, ops.mass, *ops.x.values(), *ops.p.values(), *ops.dx.values()):
        m = op.tocsr()
        assert max_dev(m @ parity, parity @ m) == 0.0
