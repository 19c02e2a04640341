"""Brute-force ground truth on a truncated Fock space.

For small systems the full master-equation generator is materialized as a
dense matrix acting on column-vectorized density matrices and solved
head-on: steady state from the null eigenvector, spectrum from a dense
eigensolve, time evolution by exponentiation.  Nothing here shares code
with the analytic pipeline, so agreement between the two certifies both.

Vectorization convention, fixed project-wide: column stacking, so that
vec(A rho B) = (B^T (x) A) vec(rho).  The generator of

    drho/dt = -i [H, rho] + sum_mu (2 L_mu rho L_mu† - {L_mu† L_mu, rho})

then reads

    Lmat = -i (I (x) H - H^T (x) I)
           + sum_mu [ 2 conj(L_mu) (x) L_mu
                      - I (x) (L_mu† L_mu) - (L_mu† L_mu)^T (x) I ].

Truncation to ``cutoff`` levels per mode is an approximation; its quality is
checked a posteriori through the population of the top Fock level.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg

from .errors import (
    DegenerateZeroEigenvalue,
    DimensionCap,
    TruncationInsufficient,
)
from .model import BosonicModel, bath_matrices

DEFAULT_MEMCAP = 4_000_000  # max entries of the dense generator matrix
DENSE_EIG_DIM = 2500  # largest dim**2 for which a full dense eigensolve is used
MEMCAP_ENV = "THIRDQ_MEMCAP"


def memcap_from_env(default: int = DEFAULT_MEMCAP) -> int:
    raw = os.environ.get(MEMCAP_ENV)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise DimensionCap(f"{MEMCAP_ENV} must be an integer, got {raw!r}") from None


def _check_cap(dim: int, memcap: int | None) -> None:
    cap = DEFAULT_MEMCAP if memcap is None else memcap
    entries = dim**4
    if entries > cap:
        raise DimensionCap(
            f"generator would hold {entries} entries "
            f"({dim**2}x{dim**2}), over the cap of {cap}; "
            f"raise it via {MEMCAP_ENV} or the memcap argument"
        )


@dataclass(frozen=True)
class FockOperators:
    """Per-mode annihilation operators on the truncated multi-mode space."""

    n: int
    cutoff: int
    a: tuple[np.ndarray, ...]

    @property
    def dim(self) -> int:
        return self.cutoff**self.n


def build_fock_operators(n: int, cutoff: int, memcap: int | None = None) -> FockOperators:
    """Ladder matrices lifted to the n-mode product space.

    The single-mode matrix has (a)_{m, m+1} = sqrt(m + 1); mode j acts as
    identity on every other factor, with mode 1 the leftmost Kronecker
    factor.
    """
    if cutoff < 2:
        raise DimensionCap(f"cutoff must be >= 2, got {cutoff}")
    dim = cutoff**n
    _check_cap(dim, memcap)
    a1 = np.diag(np.sqrt(np.arange(1, cutoff, dtype=float)), 1).astype(complex)
    ops = []
    for j in range(n):
        left = np.eye(cutoff**j, dtype=complex)
        right = np.eye(cutoff ** (n - j - 1), dtype=complex)
        ops.append(np.kron(np.kron(left, a1), right))
    return FockOperators(n=n, cutoff=cutoff, a=tuple(ops))


class DenseLiouvillean:
    """The master-equation generator on vec'd density matrices.

    The matrix is assembled sparse; the dense ``Lmat`` view and the full
    eigendecomposition are materialized lazily and cached.  Instances are
    not safe for concurrent mutation (the caches), but independent
    instances may be used in parallel.
    """

    def __init__(self, ops: FockOperators, Lsp: sp.spmatrix):
        self.ops = ops
        self.dim = ops.dim
        self._Lsp = Lsp.tocsr()
        self._dense: np.ndarray | None = None
        self._eig: tuple[np.ndarray, np.ndarray] | None = None

    @property
    def Lmat(self) -> np.ndarray:
        if self._dense is None:
            self._dense = self._Lsp.toarray()
        return self._dense

    @property
    def Lmat_sparse(self) -> sp.csr_matrix:
        return self._Lsp

    def eig(self) -> tuple[np.ndarray, np.ndarray]:
        if self._eig is None:
            w, R = np.linalg.eig(self.Lmat)
            self._eig = (w, R)
        return self._eig

    def trace_preservation_residual(self) -> float:
        """|vec(I)† Lmat| / |Lmat|_F; zero for any Lindblad generator."""
        vec_id = np.eye(self.dim, dtype=complex).ravel(order="F")
        lhs = np.linalg.norm(vec_id.conj() @ self._Lsp)
        scale = scipy.sparse.linalg.norm(self._Lsp)
        return float(lhs / scale) if scale > 0 else float(lhs)


def _assemble_operators(model: BosonicModel, ops: FockOperators):
    n = model.n
    a = ops.a
    ad = [m.conj().T for m in a]
    H = sum(
        model.H[j, k] * (ad[j] @ a[k]) for j in range(n) for k in range(n)
    ) + sum(
        model.K[j, k] * (a[j] @ a[k]) + np.conj(model.K[j, k]) * (ad[j] @ ad[k])
        for j in range(n)
        for k in range(n)
    )
    if model.forces is not None:
        for j in range(n):
            H = H + model.forces[j] * a[j] + np.conj(model.forces[j]) * ad[j]
    jumps = []
    for ch in model.channels:
        L = sum(ch.l[j] * a[j] + ch.k[j] * ad[j] for j in range(n))
        if ch.offset != 0:
            L = L + ch.offset * np.eye(ops.dim)
        jumps.append(L)
    return H, jumps


def build_liouvillean_matrix(
    model: BosonicModel, cutoff: int, memcap: int | None = None
) -> DenseLiouvillean:
    """Materialize the generator for ``model`` at the given Fock cutoff."""
    ops = build_fock_operators(model.n, cutoff, memcap=memcap)
    H, jumps = _assemble_operators(model, ops)
    I = sp.identity(ops.dim, dtype=complex, format="csr")
    Hs = sp.csr_matrix(H)
    Lmat = -1j * (sp.kron(I, Hs) - sp.kron(Hs.T, I))
    for L in jumps:
        Ls = sp.csr_matrix(L)
        LdL = (Ls.conj().T @ Ls).tocsr()
        Lmat = (
            Lmat
            + 2 * sp.kron(Ls.conj(), Ls)
            - sp.kron(I, LdL)
            - sp.kron(LdL.T, I)
        )
    return DenseLiouvillean(ops, Lmat)


@dataclass(frozen=True)
class OracleSteadyState:
    rho: np.ndarray
    eigenvalue: complex
    pair_aa: np.ndarray
    pair_adad: np.ndarray
    normal_ad_a: np.ndarray
    occupations: np.ndarray
    wick4: np.ndarray  # per-mode tr(a†_j a†_j a_j a_j rho)
    top_populations: np.ndarray


@dataclass(frozen=True)
class OracleTrajectory:
    times: np.ndarray
    cov: np.ndarray  # (T, 2n, 2n) normal-ordered correlator matrices
    means: np.ndarray  # (T, 2n) first moments of (a, a†)
    trace: np.ndarray


def _moment_tables(ops: FockOperators, rho: np.ndarray):
    n = ops.n
    a = ops.a
    ad = [m.conj().T for m in a]
    pair_aa = np.empty((n, n), dtype=complex)
    pair_adad = np.empty((n, n), dtype=complex)
    normal_ad_a = np.empty((n, n), dtype=complex)
    for j in range(n):
        for k in range(n):
            pair_aa[j, k] = np.trace(a[j] @ a[k] @ rho)
            pair_adad[j, k] = np.trace(ad[j] @ ad[k] @ rho)
            normal_ad_a[j, k] = np.trace(ad[k] @ a[j] @ rho)  # <a†_k a_j>
    return pair_aa, pair_adad, normal_ad_a


def normal_covariance(ops: FockOperators, rho: np.ndarray) -> np.ndarray:
    """Normal-ordered correlator matrix <: b_r b_s :> in block layout."""
    pair_aa, pair_adad, normal_ad_a = _moment_tables(ops, rho)
    return np.block([[pair_aa, normal_ad_a], [normal_ad_a.T, pair_adad]])


def _top_level_populations(ops: FockOperators, rho: np.ndarray) -> np.ndarray:
    d, n = ops.cutoff, ops.n
    diag = np.real(np.diag(rho)).reshape((d,) * n)
    return np.array(
        [np.take(diag, d - 1, axis=j).sum() for j in range(n)], dtype=float
    )


def oracle_steady_state(
    lio: DenseLiouvillean, top_level_tol: float = 1e-8
) -> OracleSteadyState:
    """Steady state from the eigenvector at the eigenvalue nearest zero.

    The vector is reshaped, Hermitized and trace-normalized.  A second
    eigenvalue indistinguishable from zero raises
    :class:`DegenerateZeroEigenvalue` (no unique steady state); a top-level
    Fock population above ``top_level_tol`` raises
    :class:`TruncationInsufficient` because the reported moments would be
    dominated by truncation bias.
    """
    dim = lio.dim
    if dim * dim <= DENSE_EIG_DIM:
        w, R = lio.eig()
        order = np.argsort(np.abs(w))
        scale = max(1.0, float(np.abs(w).max()))
        if len(w) > 1 and np.abs(w[order[1]]) < 1e-9 * scale:
            raise DegenerateZeroEigenvalue(
                f"two eigenvalues within {np.abs(w[order[1]]):.3e} of zero"
            )
        lam = w[order[0]]
        vec = R[:, order[0]]
    else:
        # shift-invert about a tiny nonzero shift; the zero mode dominates
        vals, vecs = scipy.sparse.linalg.eigs(
            lio.Lmat_sparse.tocsc(), k=2, sigma=1e-9, which="LM"
        )
        order = np.argsort(np.abs(vals))
        if np.abs(vals[order[1]]) < 1e-9:
            raise DegenerateZeroEigenvalue(
                f"two eigenvalues within {np.abs(vals[order[1]]):.3e} of zero"
            )
        lam = vals[order[0]]
        vec = vecs[:, order[0]]

    rho = vec.reshape((dim, dim), order="F")
    rho = (rho + rho.conj().T) / 2
    tr = np.trace(rho)
    if np.abs(tr) < 1e-12:
        raise DegenerateZeroEigenvalue("null vector has vanishing trace")
    rho = rho / tr

    top = _top_level_populations(lio.ops, rho)
    if top.max() > top_level_tol:
        raise TruncationInsufficient(
            f"top Fock level holds population {top.max():.3e} "
            f"(tolerance {top_level_tol:.1e}); increase the cutoff"
        )

    pair_aa, pair_adad, normal_ad_a = _moment_tables(lio.ops, rho)
    n = lio.ops.n
    a = lio.ops.a
    wick4 = np.array(
        [
            np.trace(a[j].conj().T @ a[j].conj().T @ a[j] @ a[j] @ rho)
            for j in range(n)
        ],
        dtype=complex,
    )
    return OracleSteadyState(
        rho=rho,
        eigenvalue=complex(lam),
        pair_aa=pair_aa,
        pair_adad=pair_adad,
        normal_ad_a=normal_ad_a,
        occupations=np.real(np.diag(normal_ad_a)).copy(),
        wick4=wick4,
        top_populations=top,
    )


def oracle_spectrum(lio: DenseLiouvillean, count: int) -> np.ndarray:
    """The ``count`` slowest generator eigenvalues, Re descending.

    Deep modes are distorted by truncation; only the leading ones are
    comparable to the analytic decay-mode lattice.
    """
    w, _ = lio.eig()
    order = np.lexsort((w.imag, -w.real))
    return w[order][:count].copy()


def vacuum_state(lio: DenseLiouvillean) -> np.ndarray:
    rho = np.zeros((lio.dim, lio.dim), dtype=complex)
    rho[0, 0] = 1.0
    return rho


def oracle_evolve(lio: DenseLiouvillean, rho0: np.ndarray, times) -> OracleTrajectory:
    """Propagate vec(rho) = expm(Lmat t) vec(rho0) on a time grid.

    Uses the cached eigendecomposition of the generator; each grid point is
    then a single matrix-vector product.  Returns normal-ordered covariance
    matrices, first moments and the trace at every time.
    """
    times = np.asarray(times, dtype=float)
    rho0 = np.asarray(rho0, dtype=complex)
    if rho0.shape != (lio.dim, lio.dim):
        raise DimensionCap(f"rho0 must be {lio.dim}x{lio.dim}, got {rho0.shape}")
    w, R = lio.eig()
    coeff = np.linalg.solve(R, rho0.ravel(order="F"))
    n = lio.ops.n
    a = lio.ops.a
    ad = [m.conj().T for m in a]
    cov = np.empty((times.size, 2 * n, 2 * n), dtype=complex)
    means = np.empty((times.size, 2 * n), dtype=complex)
    trace = np.empty(times.size, dtype=complex)
    for i, t in enumerate(times):
        vec_t = R @ (np.exp(w * t) * coeff)
        rho_t = vec_t.reshape((lio.dim, lio.dim), order="F")
        cov[i] = normal_covariance(lio.ops, rho_t)
        means[i, :n] = [np.trace(a[j] @ rho_t) for j in range(n)]
        means[i, n:] = [np.trace(ad[j] @ rho_t) for j in range(n)]
        trace[i] = np.trace(rho_t)
    return OracleTrajectory(times=times, cov=cov, means=means, trace=trace)


def default_cutoff(max_occupation: float) -> int:
    """Cutoff heuristic from the analytically predicted occupations."""
    return max(10, int(np.ceil(8.0 * (1.0 + max(0.0, float(max_occupation))))))
