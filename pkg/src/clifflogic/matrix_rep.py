"""Matrix representations of Clifford algebras and dense spectra.

Jordan-Wigner generators are Pauli strings, so they are kept as sparse CSR
matrices: 24 generators at dimension 4096 would not fit in memory densely.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from functools import lru_cache, reduce

import numpy as np
import scipy.linalg
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components

from .algebra import Multivector, Ring, Signature, blade_indices, blade_mul
from .errors import BoundExceededError, ConfigurationError, DomainError, UnsupportedRingError

MAX_JW_GENERATORS = 24
MAX_REGULAR_GENERATORS = 12
MAX_EIG_DIM = 4096
RELATION_TOL = 1e-12
NORMALITY_TOL = 1e-9
RESIDUAL_TOL = 1e-8

PAULI_I = np.eye(2, dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)


@dataclass(frozen=True)
class OperatorMatrix:
    """Square operator; real storage when every entry is real.

    ``entries`` is a dense ndarray or, for the large structured operators of
    the toy model, a CSR matrix.
    """

    entries: object

    def __post_init__(self):
        m = self.entries
        if sp.issparse(m):
            m = sp.csr_matrix(m)
        else:
            m = np.asarray(m)
            if m.ndim != 2:
                raise ConfigurationError(f"operator must be a matrix, got shape {m.shape}")
        if m.shape[0] != m.shape[1]:
            raise ConfigurationError(f"operator must be square, got shape {m.shape}")
        if np.iscomplexobj(m):
            imag = m.imag
            if not (imag.nnz if sp.issparse(m) else np.any(imag)):
                m = m.real.copy()
        else:
            m = m.astype(float)
        object.__setattr__(self, "entries", m)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @property
    def is_sparse(self) -> bool:
        return sp.issparse(self.entries)

    def toarray(self) -> np.ndarray:
        return self.entries.toarray() if self.is_sparse else self.entries

    def tocsr(self):
        return self.entries if self.is_sparse else sp.csr_matrix(self.entries)

    def __matmul__(self, other: OperatorMatrix) -> OperatorMatrix:
        return OperatorMatrix(self.entries @ other.entries)

    def __add__(self, other: OperatorMatrix) -> OperatorMatrix:
        return OperatorMatrix(self.entries + other.entries)

    def __sub__(self, other: OperatorMatrix) -> OperatorMatrix:
        return OperatorMatrix(self.entries - other.entries)

    def scale(self, c: complex) -> OperatorMatrix:
        return OperatorMatrix(c * self.entries)

    def max_abs(self) -> float:
        return max_dev(self.entries, 0 * self.entries)


def max_dev(a, b) -> float:
    d = a - b
    if sp.issparse(d):
        return float(abs(d).max()) if d.nnz else 0.0
    return float(np.max(np.abs(d))) if np.size(d) else 0.0


@dataclass
class RepResult:
    """Generator matrices of a representation, one per generator."""

    matrices: list
    spinor_dim: int
    faithful: bool = False
    deviation: float = math.nan
    sig: Signature | None = None

    def dense(self, i: int) -> np.ndarray:
        m = self.matrices[i]
        return m.toarray() if sp.issparse(m) else np.asarray(m)

    @property
    def identity(self):
        return sp.identity(self.spinor_dim, dtype=complex, format="csr")


def _kron_all(factors: list[np.ndarray]):
    if not factors:
        return sp.identity(1, dtype=complex, format="csr")
    return reduce(lambda a, b: sp.kron(a, b, format="csr"), (sp.csr_matrix(f) for f in factors))


@lru_cache(maxsize=None)
def _positive_generators(k: int) -> tuple:
    nq = (k + 1) // 2
    mats = []
    for i in range(k):
        q = i // 2
        factors = [PAULI_Z] * q + [PAULI_X if i % 2 == 0 else PAULI_Y] + [PAULI_I] * (nq - q - 1)
        mats.append(_kron_all(factors).tocsr())
    return tuple(mats)


def jordan_wigner_rep(sig: Signature, verify: bool = True) -> RepResult:
    """Pauli-string generators on ``ceil(k/2)`` qubits.

    Generator ``i`` acts as X (even ``i``) or Y (odd ``i``) on qubit ``i // 2``
    with a Z parity chain on all lower qubits. Negative squares come from
    multiplying the Hermitian involution by ``1j``.
    """
    k = sig.k
    if k > MAX_JW_GENERATORS:
        raise BoundExceededError(f"{k} generators exceeds the bound {MAX_JW_GENERATORS}")
    nq = (k + 1) // 2
    base = _positive_generators(k)
    mats = [g if s > 0 else (1j * g).tocsr() for g, s in zip(base, sig.squares)]
    rep = RepResult(mats, 1 << nq, sig=sig)
    if verify:
        rep.faithful, rep.deviation = verify_relations(rep, sig)
    return rep


def verify_relations(rep: RepResult, sig: Signature) -> tuple[bool, float]:
    """Check ``g_a g_b + g_b g_a = 2 delta_ab s_a Id``; returns (ok, max deviation)."""
    if len(rep.matrices) != sig.k:
        return False, math.inf
    d = rep.spinor_dim
    if sig.k == 0:
        return True, 0.0
    squares = np.array(sig.squares)
    mono = [_monomial_form(m) for m in rep.matrices]
    if all(f is not None for f in mono):
        dev = _monomial_anticommutator_dev(
            np.stack([f[0] for f in mono]), np.stack([f[1] for f in mono]), squares
        )
    elif d <= 64:
        g = np.stack([rep.dense(i) for i in range(sig.k)])
        prods = np.matmul(g[:, None], g[None, :])
        anti = prods + prods.transpose(1, 0, 2, 3)
        diag = np.arange(sig.k)
        anti[diag, diag] -= 2 * squares[:, None, None] * np.eye(d)
        dev = float(np.max(np.abs(anti)))
    else:
        ident = sp.identity(d, dtype=complex, format="csr")
        mats = [sp.csr_matrix(m) for m in rep.matrices]
        dev = 0.0
        for a in range(sig.k):
            for b in range(a, sig.k):
                anti = mats[a] @ mats[b] + mats[b] @ mats[a]
                target = 2 * sig.squares[a] * ident if a == b else 0 * ident
                dev = max(dev, max_dev(anti, target))
    return dev <= RELATION_TOL, dev


def _monomial_form(m):
    """``(perm, phase)`` if every row has exactly one nonzero entry, else None.

    Row ``r`` of the matrix is then ``phase[r]`` at column ``perm[r]``.
    """
    m = sp.csr_matrix(m)
    m.eliminate_zeros()
    if not np.all(np.diff(m.indptr) == 1):
        return None
    return m.indices.astype(np.int64), m.data.astype(complex)


def _monomial_anticommutator_dev(perm: np.ndarray, phase: np.ndarray, squares: np.ndarray) -> float:
    k, d = perm.shape
    rows = np.arange(d)
    # (G_a G_b)[r] = phase_a[r] * phase_b[perm_a[r]] at column perm_b[perm_a[r]]
    p_ab = perm[np.arange(k)[None, :, None], perm[:, None, :]]
    ph_ab = phase[:, None, :] * phase[np.arange(k)[None, :, None], perm[:, None, :]]
    p_ba = p_ab.transpose(1, 0, 2)
    ph_ba = ph_ab.transpose(1, 0, 2)
    same = p_ab == p_ba
    off = np.where(same, np.abs(ph_ab + ph_ba), np.maximum(np.abs(ph_ab), np.abs(ph_ba)))
    # off-diagonal pairs must vanish
    mask = ~np.eye(k, dtype=bool)
    dev = float(off[mask].max()) if k > 1 else 0.0
    # a == b: the single entry 2*G_a^2 must sit on the diagonal and equal 2*square
    for a in range(k):
        on_diag = p_ab[a, a] == rows
        target = 2.0 * squares[a]
        diag_dev = np.where(
            on_diag,
            np.abs(2 * ph_ab[a, a] - target),
            np.maximum(np.abs(2 * ph_ab[a, a]), abs(target)),
        )
        dev = max(dev, float(diag_dev.max()))
    return dev


def blade_matrix(bits: int, rep: RepResult):
    """Ordered product of generator matrices for one basis blade (sparse)."""
    out = rep.identity
    for i in blade_indices(bits):
        out = out @ rep.matrices[i]
    return out


def rep_multivector(x: Multivector, rep: RepResult) -> OperatorMatrix:
    """Linear extension of the generator map to a whole multivector."""
    if x.ring is Ring.GF2:
        raise UnsupportedRingError("matrix representations are over the reals/complexes")
    if rep.sig is not None and rep.sig != x.sig:
        raise ConfigurationError(f"signature mismatch: {x.sig} vs representation {rep.sig}")
    if len(rep.matrices) != x.sig.k:
        raise ConfigurationError("representation has the wrong number of generators")
    acc = sp.csr_matrix((rep.spinor_dim, rep.spinor_dim), dtype=complex)
    for bits, c in x.items():
        acc = acc + complex(c) * blade_matrix(bits, rep)
    return OperatorMatrix(acc.toarray())


class Side(enum.Enum):
    LEFT = "left"
    RIGHT = "right"


def regular_rep_matrix(z: Multivector, side: Side | str = Side.LEFT) -> OperatorMatrix:
    """Matrix of ``x -> z x`` (left) or ``x -> x z`` (right) in the blade basis.

    Column ``j`` is the image of blade ``j`` (bitmask order).
    """
    side = Side(side)
    if z.ring is Ring.GF2:
        raise UnsupportedRingError("regular representation is built over the reals")
    k = z.sig.k
    if k > MAX_REGULAR_GENERATORS:
        raise BoundExceededError(f"{k} generators exceeds the bound {MAX_REGULAR_GENERATORS}")
    n = 1 << k
    m = np.zeros((n, n))
    for j in range(n):
        for b, c in z.items():
            if side is Side.LEFT:
                sign, r = blade_mul(b, j, z.sig)
            else:
                sign, r = blade_mul(j, b, z.sig)
            m[r, j] += sign * float(c)
    return OperatorMatrix(m)


def is_invertible(z: Multivector, tol: float = 1e-9) -> bool:
    """Membership in the Clifford group: ``L(z)`` has full rank."""
    m = regular_rep_matrix(z, Side.LEFT).toarray()
    return int(np.linalg.matrix_rank(m, tol=tol)) == m.shape[0]


def inverse(z: Multivector) -> Multivector:
    """Float inverse of ``z`` by solving ``L(z) w = 1``."""
    if not is_invertible(z):
        raise DomainError("element is not in the Clifford group (not invertible)")
    m = regular_rep_matrix(z, Side.LEFT).toarray()
    rhs = np.zeros(m.shape[0])
    rhs[0] = 1.0
    w = np.linalg.solve(m, rhs)
    return Multivector(Ring.FLOAT, z.sig, {b: float(v) for b, v in enumerate(w) if v != 0.0})


# -- spectra ------------------------------------------------------------------


@dataclass(frozen=True)
class SpectrumReport:
    """Sorted eigenvalues and their clustered multiplicities."""

    eigenvalues: np.ndarray
    values: tuple[complex, ...]
    multiplicities: tuple[int, ...]
    max_residual: float
    method: str
    extras: dict = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return len(self.eigenvalues)

    def as_multiset(self, digits: int = 9) -> dict[complex, int]:
        return {
            complex(round(v.real, digits), round(v.imag, digits)) + 0: n
            for v, n in zip(self.values, self.multiplicities)
        }

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "method": self.method,
            "values": [_num(v) for v in self.values],
            "multiplicities": list(self.multiplicities),
            "max_residual": self.max_residual,
            **self.extras,
        }


def _num(v: complex, digits: int = 12):
    re = round(float(v.real), digits) + 0.0
    im = round(float(v.imag), digits) + 0.0
    return re if im == 0.0 else {"re": re, "im": im}


def _cluster(vals: np.ndarray, tol: float) -> tuple[tuple[complex, ...], tuple[int, ...]]:
    groups: list[list[complex]] = []
    for v in vals:
        if groups and abs(v - groups[-1][0]) <= tol:
            groups[-1].append(v)
        else:
            groups.append([v])
    return (
        tuple(complex(np.mean(g)) for g in groups),
        tuple(len(g) for g in groups),
    )


def _eig_block(a: np.ndarray, hermitian: bool, anti: bool):
    if hermitian:
        w, v = scipy.linalg.eigh(a, check_finite=False)
        return w.astype(complex), v
    if anti:
        w, v = scipy.linalg.eigh(-1j * a, check_finite=False)
        return 1j * w, v
    t, v = scipy.linalg.schur(a.astype(complex), output="complex")
    return np.diag(t).copy(), v


def spectrum(m: OperatorMatrix, cluster_tol: float = 1e-8) -> SpectrumReport:
    """Eigenvalues of a normal matrix with a per-eigenpair residual check.

    The matrix is first split into the connected components of its sparsity
    graph; each component is an invariant block solved densely (Hermitian and
    anti-Hermitian blocks by ``eigh``, others by complex Schur form).
    """
    n = m.dim
    if n > MAX_EIG_DIM:
        raise BoundExceededError(f"dimension {n} exceeds the eigensolver bound {MAX_EIG_DIM}")
    a = m.tocsr()
    ah = a.conj().T.tocsr()
    scale = max(1.0, m.max_abs())
    if max_dev(a @ ah, ah @ a) > NORMALITY_TOL * scale * scale:
        raise UnsupportedRingError("spectrum requires a normal matrix")
    hermitian = max_dev(a, ah) <= NORMALITY_TOL * scale
    anti = not hermitian and max_dev(a, -ah) <= NORMALITY_TOL * scale
    method = "hermitian" if hermitian else "anti-hermitian" if anti else "schur"

    pattern = (abs(a) + abs(ah)).tocsr()
    n_blocks, labels = connected_components(pattern, directed=False)
    order = np.argsort(labels, kind="stable")
    bounds = np.flatnonzero(np.diff(labels[order])) + 1
    vals_all = []
    max_res = 0.0
    for idx in np.split(order, bounds) if n else []:
        block = a[idx][:, idx].toarray()
        vals, vecs = _eig_block(block, hermitian, anti)
        res = np.linalg.norm(block @ vecs - vecs * vals[None, :], axis=0)
        max_res = max(max_res, float(res.max()))
        vals_all.append(vals)
    if max_res > RESIDUAL_TOL * scale:
        raise DomainError(f"eigenpair residual {max_res:.3e} exceeds tolerance")
    vals = np.concatenate(vals_all) if vals_all else np.zeros(0, dtype=complex)
    vals = vals[np.lexsort((vals.imag.round(9), vals.real.round(9)))]
    values, mults = _cluster(vals, cluster_tol * scale)
    return SpectrumReport(vals, values, mults, max_res, method, {"blocks": int(n_blocks)})
