"""Quadratic-form representation of the Liouvillean: the matrices X, Y.

Index convention, used by every downstream module: the 2n-dimensional
row/column space is split into two n-blocks, (block 0 first, then block 1),
matching the operator vector b = (a_1..a_n, a†_1..a†_n) for observables and
the corresponding adjoint-map ordering for the generator itself.

With the bath matrices M, N, L of :mod:`thirdq.model`,

    X = 1/2 [[ i conj(H) - conj(N) + M ,  -2i K - L + L^T        ],
             [ 2i conj(K) - conj(L) + conj(L)^T ,  -i H - N + conj(M) ]]

    Y = 1/2 [[ -2i conj(K) - conj(L) - conj(L)^T ,  2 N  ],
             [ 2 N^T ,  2i K - L - L^T ]]

Y is complex symmetric; X satisfies trace(X) = trace(M) - trace(N).  Both
blocks obey the conjugate pattern [[A, B], [conj(B), conj(A)]], which makes
them unitarily similar to real matrices (see :func:`realify`) and forces the
eigenvalues of X into complex-conjugate pairs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotRealSimilar
from .model import BosonicModel, bath_matrices


@dataclass(frozen=True)
class StructureMatrices:
    """The 2n x 2n generator matrices and the reordering constant."""

    X: np.ndarray
    Y: np.ndarray
    S0: complex

    @property
    def n(self) -> int:
        return self.X.shape[0] // 2


def build_structure(model: BosonicModel) -> StructureMatrices:
    """Assemble X, Y and S0 = trace(M) - trace(N) from a validated model."""
    n = model.n
    bath = bath_matrices(model.channels, n)
    M, N, L = bath.M, bath.N, bath.L
    H, K = model.H, model.K

    X = 0.5 * np.block(
        [
            [1j * H.conj() - N.conj() + M, -2j * K - L + L.T],
            [2j * K.conj() - L.conj() + L.conj().T, -1j * H - N + M.conj()],
        ]
    )
    Y = 0.5 * np.block(
        [
            [-2j * K.conj() - L.conj() - L.conj().T, 2 * N],
            [2 * N.T, 2j * K - L - L.T],
        ]
    )
    Y = (Y + Y.T) / 2
    S0 = complex(np.trace(M) - np.trace(N))
    return StructureMatrices(X=X, Y=Y, S0=S0)


def _u_matrix(n: int) -> np.ndarray:
    # (1/sqrt 2)(I_2 + i sigma_x) acting on the 2-block structure
    u2 = np.array([[1.0, 1j], [1j, 1.0]]) / np.sqrt(2.0)
    return np.kron(u2, np.eye(n))


def realify(A: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    """Return the real matrix U A U^-1 with U = (I + i sigma_x)/sqrt(2) (x) I.

    Valid only for matrices with the conjugate block pattern
    [[A11, A12], [conj(A12), conj(A11)]] that X and Y carry by construction;
    anything else leaves an imaginary remainder and raises
    :class:`NotRealSimilar`.  This is a construction diagnostic, not part of
    the solve pipeline.
    """
    A = np.asarray(A, dtype=complex)
    m = A.shape[0]
    if A.shape != (m, m) or m % 2 != 0:
        raise NotRealSimilar(f"expected an even-dimensional square matrix, got {A.shape}")
    U = _u_matrix(m // 2)
    R = U @ A @ U.conj().T
    rem = np.linalg.norm(R.imag)
    if rem > tol * max(1.0, np.linalg.norm(A)):
        raise NotRealSimilar(
            f"imaginary remainder {rem:.3e} exceeds tolerance; "
            "matrix does not have the conjugate block structure"
        )
    return R.real
