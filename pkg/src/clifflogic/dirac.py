"""Finite Dirac toy model built from ``N`` octads of Clifford generators.

Generator ``alpha`` (1..8) of octad ``n`` (1..N) is global generator
``8*(n-1) + alpha - 1`` of one Jordan-Wigner representation on ``8N``
generators. With ``g^{ab}(n) = g^a(n) g^b(n)`` the correspondences are::

    x[mu]  = -i tau sum_n g^{mu5}(n)
    p[mu]  = -i (hbar / (N tau)) sum_n g^{mu6}(n)
    eta    = sum_n g^{56}(n) / N
    dx[mu] = -i tau g^{mu5}(1)

``mu`` runs over 1..4 with ``mu = 1`` the time coordinate. Generators 7 and 8
are built but unused.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
import scipy.linalg
import scipy.sparse as sp

from .algebra import Signature
from .errors import BoundExceededError, ConfigurationError, DomainError
from .matrix_rep import (
    PAULI_Z,
    OperatorMatrix,
    RepResult,
    SpectrumReport,
    jordan_wigner_rep,
    max_dev,
    spectrum,
)

OCTAD = 8
MAX_EIG_OCTADS = 3
MAX_OCTADS = 6
MU_INDICES = (1, 2, 3, 4)


class MassMode(enum.Enum):
    """Which ``g^{mu5}`` the finite mass operator uses."""

    OCTAD1 = "octad1"
    AVERAGE = "average"


@dataclass(frozen=True)
class OctadConfig:
    N: int = 1
    tau: float = 1.0
    hbar: float = 1.0
    octad_squares: tuple[int, ...] = (1,) * OCTAD
    time_index: int = 1
    mass_mode: MassMode = MassMode.OCTAD1

    def __post_init__(self):
        if not 1 <= self.N <= MAX_OCTADS:
            raise ConfigurationError(f"octad count must be in 1..{MAX_OCTADS}, got {self.N}")
        if not self.tau > 0 or not self.hbar > 0:
            raise ConfigurationError("tau and hbar must be positive")
        if len(self.octad_squares) != OCTAD:
            raise ConfigurationError(f"an octad has {OCTAD} generator squares")
        Signature(self.octad_squares)
        if self.time_index not in MU_INDICES:
            raise ConfigurationError(f"time index must be one of {MU_INDICES}")
        object.__setattr__(self, "mass_mode", MassMode(self.mass_mode))

    @property
    def ergon(self) -> float:
        return self.hbar / (self.N * self.tau)

    @property
    def dim(self) -> int:
        return 16**self.N

    @property
    def signature(self) -> Signature:
        return Signature(tuple(self.octad_squares) * self.N)

    def to_dict(self) -> dict:
        return {
            "N": self.N,
            "tau": self.tau,
            "hbar": self.hbar,
            "octad_squares": "".join("+" if s > 0 else "-" for s in self.octad_squares),
            "time_index": self.time_index,
            "mass_mode": self.mass_mode.value,
            "ergon": self.ergon,
            "dim": self.dim,
        }


def generator_index(n: int, alpha: int) -> int:
    """Global 0-based generator index of ``g_alpha(n)``, both 1-based."""
    return OCTAD * (n - 1) + alpha - 1


@dataclass
class ToyOperators:
    cfg: OctadConfig
    rep: RepResult
    x: dict[int, OperatorMatrix]
    p: dict[int, OperatorMatrix]
    eta: OperatorMatrix
    dx: dict[int, OperatorMatrix]
    mass: OperatorMatrix
    provenance: dict = field(default_factory=dict)

    def pair(self, n: int, a: int, b: int):
        return _pair(self.rep, n, a, b)


def _pair(rep: RepResult, n: int, a: int, b: int):
    """Sparse ``g^{ab}(n) = g^a(n) g^b(n)``."""
    return rep.matrices[generator_index(n, a)] @ rep.matrices[generator_index(n, b)]


def build_toy_model(cfg: OctadConfig, eigensolve: bool = True) -> ToyOperators:
    if eigensolve and cfg.N > MAX_EIG_OCTADS:
        raise BoundExceededError(
            f"N={cfg.N} gives dimension {cfg.dim} > 4096; eigensolves need N <= {MAX_EIG_OCTADS}"
        )
    rep = jordan_wigner_rep(cfg.signature)
    if not rep.faithful:
        raise ConfigurationError(f"representation failed its relations (deviation {rep.deviation})")
    N, tau, hbar = cfg.N, cfg.tau, cfg.hbar

    def pair(n, a, b):
        return _pair(rep, n, a, b)

    def octad_sum(a, b):
        return sum((pair(n, a, b) for n in range(1, N + 1)), sp.csr_matrix((cfg.dim, cfg.dim)))

    x = {mu: OperatorMatrix(-1j * tau * octad_sum(mu, 5)) for mu in MU_INDICES}
    p = {mu: OperatorMatrix(-1j * cfg.ergon * octad_sum(mu, 6)) for mu in MU_INDICES}
    eta = OperatorMatrix(octad_sum(5, 6) / N)
    dx = {mu: OperatorMatrix(-1j * tau * pair(1, mu, 5)) for mu in MU_INDICES}

    # M_f = sum_mu g^{mu5} d_mu with d_mu <- i p[mu] / hbar = sum_n g^{mu6}(n) / (N tau)
    mass = sp.csr_matrix((cfg.dim, cfg.dim), dtype=complex)
    for mu in MU_INDICES:
        if cfg.mass_mode is MassMode.OCTAD1:
            g_mu5 = pair(1, mu, 5)
        else:
            g_mu5 = octad_sum(mu, 5) / N
        mass = mass + g_mu5 @ (octad_sum(mu, 6) / (N * tau))
    provenance = {
        "config": cfg.to_dict(),
        "representation": "jordan-wigner",
        "relation_deviation": rep.deviation,
    }
    return ToyOperators(cfg, rep, x, p, eta, dx, OperatorMatrix(mass), provenance)


# -- spectra ------------------------------------------------------------------


def time_spectrum_oracle(N: int) -> dict[int, int]:
    """Exact spectrum of the time coordinate in units of tau: value -> multiplicity.

    ``N`` commuting terms each contribute +-1 with multiplicity ``dim / 2``
    per sign, so value ``N - 2k`` occurs ``C(N, k) * 8**N`` times.
    """
    out: dict[int, int] = {}
    for signs in itertools.product((1, -1), repeat=N):
        v = sum(signs)
        out[v] = out.get(v, 0) + 8**N
    return dict(sorted(out.items()))


def eta_moduli_oracle(N: int) -> list[Fraction]:
    """Distinct ``|eigenvalue|`` of eta: ``|sum of N terms +-i| / N``."""
    return sorted({Fraction(abs(sum(signs)), N) for signs in itertools.product((1, -1), repeat=N)})


def time_spectrum(cfg: OctadConfig, ops: ToyOperators | None = None) -> SpectrumReport:
    ops = ops or build_toy_model(cfg)
    rep = spectrum(ops.x[cfg.time_index])
    in_units = rep.eigenvalues.real / cfg.tau
    ints = np.rint(in_units)
    rep.extras.update(
        {
            "values_in_tau": sorted({int(v) for v in ints}),
            "integer_deviation": float(np.max(np.abs(in_units - ints))),
            "max_imag": float(np.max(np.abs(rep.eigenvalues.imag))),
            "within_bounds": bool(np.all(np.abs(ints) <= cfg.N)),
        }
    )
    return rep


def eta_spectrum(cfg: OctadConfig, ops: ToyOperators | None = None) -> SpectrumReport:
    ops = ops or build_toy_model(cfg)
    rep = spectrum(ops.eta)
    moduli = np.abs(rep.eigenvalues)
    distinct: list[float] = []
    for m in np.sort(moduli):
        if not distinct or m - distinct[-1] > 1e-9:
            distinct.append(float(m))
    rep.extras.update(
        {
            "distinct_moduli": [round(m, 12) + 0.0 for m in distinct],
            "max_modulus": float(moduli.max()),
            "max_real_part": float(np.max(np.abs(rep.eigenvalues.real))),
        }
    )
    return rep


@dataclass(frozen=True)
class CommutatorReport:
    mu: int
    nu: int
    matrix: OperatorMatrix
    c: complex
    residual: float
    norm: float

    def to_dict(self) -> dict:
        c = complex(self.c)
        return {
            "mu": self.mu,
            "nu": self.nu,
            "c": {"re": c.real, "im": c.imag},
            "residual": self.residual,
            "commutator_max_abs": self.norm,
        }


def commutator_xp(cfg: OctadConfig, mu: int, nu: int, ops: ToyOperators | None = None) -> CommutatorReport:
    """``[x[mu], p[nu]]`` and the least-squares fit ``c`` to ``c * hbar * eta``."""
    if mu not in MU_INDICES or nu not in MU_INDICES:
        raise ConfigurationError(f"indices must be in {MU_INDICES}")
    ops = ops or build_toy_model(cfg, eigensolve=False)
    xm, pn = ops.x[mu].tocsr(), ops.p[nu].tocsr()
    comm = (xm @ pn - pn @ xm).tocsr()
    basis = (cfg.hbar * ops.eta.tocsr()).tocsr()
    # least squares over the Frobenius inner product <B, A> = sum conj(B) * A
    denom = abs(basis.multiply(basis.conj()).sum())
    c = complex(basis.conj().multiply(comm).sum() / denom) if denom else 0j
    residual = max_dev(comm, c * basis)
    c = complex(round(c.real, 12) + 0.0, round(c.imag, 12) + 0.0)
    comm_op = OperatorMatrix(comm)
    return CommutatorReport(mu, nu, comm_op, c, residual, comm_op.max_abs())


# -- dynamics -----------------------------------------------------------------


def mass_evolution(
    cfg: OctadConfig, x: OperatorMatrix, delta_tau: float, ops: ToyOperators | None = None
) -> OperatorMatrix:
    """``U X U^-1`` with ``U = exp(-i M_f delta_tau)``."""
    ops = ops or build_toy_model(cfg, eigensolve=False)
    if x.dim != ops.mass.dim:
        raise ConfigurationError(f"operator dimension {x.dim} does not match model {ops.mass.dim}")
    xd = x.toarray()
    if not np.all(np.isfinite(xd)) or not np.isfinite(delta_tau):
        raise DomainError("non-finite input to mass_evolution")
    if delta_tau == 0:
        return x
    m = ops.mass.toarray()
    u = scipy.linalg.expm(-1j * delta_tau * m)
    u_inv = scipy.linalg.expm(1j * delta_tau * m)
    return OperatorMatrix(u @ xd @ u_inv)


def evolution_generator(ops: ToyOperators, x: OperatorMatrix) -> OperatorMatrix:
    """``-i [M_f, X]``, the derivative of the evolution at zero."""
    m = ops.mass.toarray()
    xd = x.toarray()
    return OperatorMatrix(-1j * (m @ xd - xd @ m))


def evolution_derivative_error(
    cfg: OctadConfig, x: OperatorMatrix, delta: float | None = None, ops: ToyOperators | None = None
) -> float:
    """Relative error of a central finite difference against ``-i[M_f, X]``."""
    ops = ops or build_toy_model(cfg, eigensolve=False)
    if delta is None:
        delta = 1e-6 * cfg.hbar / cfg.ergon
    fwd = mass_evolution(cfg, x, delta, ops).toarray()
    bwd = mass_evolution(cfg, x, -delta, ops).toarray()
    fd = (fwd - bwd) / (2 * delta)
    exact = evolution_generator(ops, x).toarray()
    scale = np.linalg.norm(exact)
    return float(np.linalg.norm(fd - exact) / scale) if scale else float(np.linalg.norm(fd))


# -- octad factorization ------------------------------------------------------


def octad_parity() -> np.ndarray:
    """Parity chain factor of one octad: Z on each of its four qubits."""
    z = PAULI_Z
    return np.kron(np.kron(z, z), np.kron(z, z))


def tensor_generator(cfg: OctadConfig, n: int, alpha: int, octad_rep: RepResult, chain=None):
    """``P x ... x P x g_alpha x I x ... x I`` with ``n - 1`` parity factors."""
    chain = octad_parity() if chain is None else chain
    factors = [chain] * (n - 1) + [octad_rep.dense(alpha - 1)] + [np.eye(16)] * (cfg.N - n)
    out = sp.csr_matrix(factors[0])
    for f in factors[1:]:
        out = sp.kron(out, sp.csr_matrix(f), format="csr")
    return out


def octad_factorization_check(cfg: OctadConfig, chain=None) -> tuple[bool, float]:
    """Compare the 8N-generator construction with an explicit octad tensor product."""
    if cfg.N > MAX_EIG_OCTADS:
        raise BoundExceededError(f"factorization check supports N <= {MAX_EIG_OCTADS}")
    full = jordan_wigner_rep(cfg.signature)
    octad = jordan_wigner_rep(Signature(cfg.octad_squares))
    dev = 0.0
    for n in range(1, cfg.N + 1):
        for alpha in range(1, OCTAD + 1):
            t = tensor_generator(cfg, n, alpha, octad, chain)
            dev = max(dev, max_dev(full.matrices[generator_index(n, alpha)], t))
    return dev <= 1e-12, dev
