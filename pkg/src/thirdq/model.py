"""Problem statement types: modes, Hamiltonian matrices, bath channels.

A problem instance is an ``n``-mode bosonic system with Hamiltonian

    H = a† . H a + a . K a + a† . conj(K) a†   (+ optional linear forces)

driven by bath channels with jump operators ``L_mu = l_mu . a + k_mu . a†``
(+ optional scalar offsets).  The channel vectors are accumulated into the
three n x n bath matrices

    M = sum_mu l_mu (x) conj(l_mu)
    N = sum_mu k_mu (x) conj(k_mu)
    L = sum_mu l_mu (x) conj(k_mu)

where ``(x (y) conj(z))_{jk} = y_j conj(z_k)``.  M and N are Hermitian and
positive semidefinite by construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, HermiticityViolation, SymmetryViolation

DEFAULT_TOL_INPUT = 1e-9


def _as_complex_matrix(A, n, name):
    A = np.array(A, dtype=complex)  # copy: the result may be frozen
    if A.shape != (n, n):
        raise DimensionMismatch(f"{name} must be {n}x{n}, got {A.shape}")
    if not np.all(np.isfinite(A.view(float))):
        raise DimensionMismatch(f"{name} contains non-finite entries")
    return A


def _as_complex_vector(v, n, name):
    v = np.array(v, dtype=complex)  # copy: the result may be frozen
    if v.shape != (n,):
        raise DimensionMismatch(f"{name} must have length {n}, got {v.shape}")
    if not np.all(np.isfinite(v.view(float))):
        raise DimensionMismatch(f"{name} contains non-finite entries")
    return v


@dataclass(frozen=True)
class LindbladChannel:
    """One bath coupling: jump operator l . a + k . a† (+ offset * identity)."""

    l: np.ndarray
    k: np.ndarray
    offset: complex = 0j


@dataclass(frozen=True)
class BathMatrices:
    """Channel vectors accumulated into the M, N, L coupling matrices."""

    M: np.ndarray
    N: np.ndarray
    L: np.ndarray


@dataclass(frozen=True)
class BosonicModel:
    """A validated quadratic bosonic open system.

    Instances are immutable after :func:`validate_model`; the arrays are
    marked read-only so a model can be shared across concurrent tasks.
    """

    n: int
    H: np.ndarray
    K: np.ndarray
    channels: tuple[LindbladChannel, ...]
    forces: np.ndarray | None = None
    repaired: bool = field(default=False, compare=False)

    @property
    def channel_offsets(self) -> np.ndarray:
        return np.array([c.offset for c in self.channels], dtype=complex)

    @property
    def has_linear_terms(self) -> bool:
        return (self.forces is not None and np.any(self.forces != 0)) or bool(
            np.any(self.channel_offsets != 0)
        )


def validate_model(
    n: int,
    H,
    K=None,
    channels=(),
    forces=None,
    tol_input: float = DEFAULT_TOL_INPUT,
) -> BosonicModel:
    """Validate and normalize a problem statement.

    H must be Hermitian and K symmetric up to a relative deviation of
    ``tol_input`` (measured in the Frobenius norm against ``max(1, |A|_F)``);
    deviations below the tolerance are repaired by averaging, larger ones are
    rejected.  File round-trips introduce last-ulp noise, which is why the
    near-symmetric case is repaired rather than refused.
    """
    if n < 1:
        raise DimensionMismatch(f"n must be >= 1, got {n}")
    H = _as_complex_matrix(H, n, "H")
    K = _as_complex_matrix(K if K is not None else np.zeros((n, n)), n, "K")

    dev_h = np.linalg.norm(H - H.conj().T)
    if dev_h > tol_input * max(1.0, np.linalg.norm(H)):
        raise HermiticityViolation(
            f"H deviates from Hermiticity by {dev_h:.3e} (tol {tol_input:.1e})"
        )
    dev_k = np.linalg.norm(K - K.T)
    if dev_k > tol_input * max(1.0, np.linalg.norm(K)):
        raise SymmetryViolation(
            f"K deviates from symmetry by {dev_k:.3e} (tol {tol_input:.1e})"
        )
    repaired = bool(dev_h > 0.0 or dev_k > 0.0)
    H = (H + H.conj().T) / 2
    K = (K + K.T) / 2

    chan_list = []
    for i, ch in enumerate(channels):
        if isinstance(ch, LindbladChannel):
            l, k, off = ch.l, ch.k, ch.offset
        else:
            l, k = ch[0], ch[1]
            off = ch[2] if len(ch) > 2 else 0j
        l = _as_complex_vector(l, n, f"channels[{i}].l")
        k = _as_complex_vector(k, n, f"channels[{i}].k")
        l.setflags(write=False)
        k.setflags(write=False)
        chan_list.append(LindbladChannel(l=l, k=k, offset=complex(off)))

    if forces is not None:
        forces = _as_complex_vector(forces, n, "forces")
        forces.setflags(write=False)

    H.setflags(write=False)
    K.setflags(write=False)
    return BosonicModel(
        n=n,
        H=H,
        K=K,
        channels=tuple(chan_list),
        forces=forces,
        repaired=repaired,
    )


def bath_matrices(channels, n: int) -> BathMatrices:
    """Accumulate channel vectors into the bath matrices M, N, L.

    M and N are re-Hermitized after accumulation so that they are Hermitian
    exactly, not only up to roundoff.
    """
    M = np.zeros((n, n), dtype=complex)
    N = np.zeros((n, n), dtype=complex)
    L = np.zeros((n, n), dtype=complex)
    for i, ch in enumerate(channels):
        l = _as_complex_vector(ch.l, n, f"channels[{i}].l")
        k = _as_complex_vector(ch.k, n, f"channels[{i}].k")
        M += np.outer(l, l.conj())
        N += np.outer(k, k.conj())
        L += np.outer(l, k.conj())
    M = (M + M.conj().T) / 2
    N = (N + N.conj().T) / 2
    return BathMatrices(M=M, N=N, L=L)
