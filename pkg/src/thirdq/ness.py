"""Physical observables of the steady state and transient moment dynamics.

With the operator vector b = (a_1..a_n, a†_1..a†_n), the steady-state
normal-ordered correlator is exactly the Lyapunov solution,
<: b_r b_s :> = Z_{rs}.  Normal ordering puts creation operators on the
left, so the upper-right block holds <a†_k a_j>:

    Z[j, k]       = <a_j a_k>            (j, k < n)
    Z[j, n + k]   = <a†_k a_j>
    Z[n + j, n + k] = <a†_j a†_k>

The steady state is Gaussian; higher moments follow from pairings of Z
(:func:`wick_moment`).

Transient second moments obey dC/dt = 2 (Y - X^T C - C X), whose fixed point
is the Lyapunov solution.  First moments obey dm/dt = -2 X^T m + g with a
source assembled from linear forces f and channel offsets lambda_mu:

    g = ( -i conj(f) + sum_mu (conj(lambda_mu) k_mu - lambda_mu conj(l_mu)),
           i f       + sum_mu (lambda_mu conj(k_mu) - conj(lambda_mu) l_mu) ).

Both rate constants are certified against the brute-force oracle in the test
suite.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.integrate
import scipy.linalg

from .errors import AsymmetricZ, IndexOutOfRange, NonSymmetricInitial, NotStable
from .lyapunov import solve
from .model import BosonicModel
from .spectral import DEFAULT_TOL_MARGINAL, Stability, rapidities


@dataclass(frozen=True)
class NessSolution:
    """Steady-state correlators in mode (not block) indexing."""

    Z: np.ndarray
    pair_aa: np.ndarray
    pair_adad: np.ndarray
    normal_ad_a: np.ndarray
    occupations: np.ndarray


@dataclass(frozen=True)
class CovarianceTrajectory:
    times: np.ndarray
    C: np.ndarray
    m: np.ndarray | None = None


def physical_correlators(Z: np.ndarray, n: int, tol: float = 1e-8) -> NessSolution:
    """Slice Z into <a a>, <a† a>, <a† a†> blocks and mode occupations."""
    Z = np.asarray(Z, dtype=complex)
    if Z.shape != (2 * n, 2 * n):
        raise AsymmetricZ(f"Z must be {2 * n}x{2 * n}, got {Z.shape}")
    dev = np.linalg.norm(Z - Z.T)
    if dev > tol * max(1.0, np.linalg.norm(Z)):
        raise AsymmetricZ(f"Z deviates from symmetry by {dev:.3e}")
    pair_aa = Z[:n, :n].copy()
    normal_ad_a = Z[:n, n:].copy()  # entry (j, k) = <a†_k a_j>
    pair_adad = Z[n:, n:].copy()
    occupations = np.real(np.diag(normal_ad_a)).copy()
    return NessSolution(
        Z=Z,
        pair_aa=pair_aa,
        pair_adad=pair_adad,
        normal_ad_a=normal_ad_a,
        occupations=occupations,
    )


def wick_moment(Z: np.ndarray, indices) -> complex:
    """Normal-ordered 4-point moment <: b_p b_q b_r b_s :> of a Gaussian state.

    Equals the sum over the three pairings Z_pq Z_rs + Z_pr Z_qs + Z_ps Z_qr
    and is therefore invariant under any permutation of the four slots.
    """
    Z = np.asarray(Z, dtype=complex)
    idx = list(indices)
    if len(idx) != 4:
        raise IndexOutOfRange(f"expected 4 correlator slots, got {len(idx)}")
    dim = Z.shape[0]
    for i in idx:
        if not (0 <= int(i) < dim):
            raise IndexOutOfRange(f"slot {i} outside 0..{dim - 1}")
    p, q, r, s = (int(i) for i in idx)
    return complex(Z[p, q] * Z[r, s] + Z[p, r] * Z[q, s] + Z[p, s] * Z[q, r])


def _check_times(times) -> np.ndarray:
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or times.size == 0:
        raise NonSymmetricInitial("times must be a non-empty 1-d array")
    if np.any(np.diff(times) < 0) or times[0] < 0:
        raise NonSymmetricInitial("times must be sorted ascending and non-negative")
    return times


def covariance_trajectory(
    X: np.ndarray,
    Y: np.ndarray,
    C0: np.ndarray,
    times,
    tol_marginal: float = DEFAULT_TOL_MARGINAL,
) -> CovarianceTrajectory:
    """Integrate dC/dt = 2 (Y - X^T C - C X) from C(0) = C0.

    For a Stable spectrum the exact closed form
    C(t) = Z + E(t)^T (C0 - Z) E(t) with E(t) = expm(-2 X t) is used
    (no step-size error); otherwise the flow is integrated adaptively.
    """
    X = np.asarray(X, dtype=complex)
    Y = np.asarray(Y, dtype=complex)
    C0 = np.asarray(C0, dtype=complex)
    times = _check_times(times)
    dev = np.linalg.norm(C0 - C0.T)
    if dev > 1e-8 * max(1.0, np.linalg.norm(C0)):
        raise NonSymmetricInitial(f"C0 deviates from symmetry by {dev:.3e}")
    C0 = (C0 + C0.T) / 2

    spectrum = rapidities(X, tol_marginal)
    if spectrum.stability is Stability.STABLE:
        Z = solve(X, Y, spectrum, tol_marginal=tol_marginal).Z
        W = C0 - Z
        out = np.empty((times.size,) + C0.shape, dtype=complex)
        for i, t in enumerate(times):
            E = scipy.linalg.expm(-2.0 * X * t)
            C = Z + E.T @ W @ E
            out[i] = (C + C.T) / 2
        return CovarianceTrajectory(times=times, C=out)

    if times[-1] == 0:
        return CovarianceTrajectory(
            times=times, C=np.repeat(C0[None, :, :], times.size, axis=0)
        )

    def flow(_t, y):
        C = y.reshape(C0.shape)
        dC = 2.0 * (Y - X.T @ C - C @ X)
        return dC.ravel()

    sol = scipy.integrate.solve_ivp(
        flow,
        (0.0, float(times[-1])),
        C0.ravel(),
        t_eval=times,
        method="DOP853",
        rtol=1e-11,
        atol=1e-12,
    )
    out = sol.y.T.reshape((times.size,) + C0.shape)
    out = (out + np.transpose(out, (0, 2, 1))) / 2
    return CovarianceTrajectory(times=times, C=out)


def mean_source(model: BosonicModel) -> np.ndarray:
    """Assemble the first-moment source g from forces and channel offsets."""
    n = model.n
    f = model.forces if model.forces is not None else np.zeros(n, dtype=complex)
    g_a = -1j * f.conj()
    for ch in model.channels:
        lam = complex(ch.offset)
        g_a = g_a + np.conj(lam) * ch.k - lam * ch.l.conj()
    return np.concatenate([g_a, g_a.conj()])


def steady_mean(
    X: np.ndarray,
    g: np.ndarray,
    tol_marginal: float = DEFAULT_TOL_MARGINAL,
) -> np.ndarray:
    """Fixed point of the mean flow, solving 2 X^T m = g.  Stable only."""
    X = np.asarray(X, dtype=complex)
    g = np.asarray(g, dtype=complex)
    spectrum = rapidities(X, tol_marginal)
    if spectrum.stability is not Stability.STABLE:
        raise NotStable("steady mean requires a Stable spectrum")
    return np.linalg.solve(2.0 * X.T, g)


def mean_trajectory(
    X: np.ndarray,
    g: np.ndarray | None,
    m0: np.ndarray,
    times,
    tol_marginal: float = DEFAULT_TOL_MARGINAL,
) -> np.ndarray:
    """Integrate dm/dt = -2 X^T m + g from m(0) = m0.

    Stable spectra use the closed form m(t) = E(t) (m0 - m*) + m* with
    E(t) = expm(-2 X^T t); otherwise adaptive integration.
    """
    X = np.asarray(X, dtype=complex)
    m0 = np.asarray(m0, dtype=complex)
    times = _check_times(times)
    if g is None:
        g = np.zeros_like(m0)
    g = np.asarray(g, dtype=complex)

    spectrum = rapidities(X, tol_marginal)
    if spectrum.stability is Stability.STABLE:
        mstar = np.linalg.solve(2.0 * X.T, g) if np.any(g != 0) else np.zeros_like(m0)
        out = np.empty((times.size, m0.size), dtype=complex)
        for i, t in enumerate(times):
            E = scipy.linalg.expm(-2.0 * X.T * t)
            out[i] = E @ (m0 - mstar) + mstar
        return out

    def flow(_t, y):
        return -2.0 * X.T @ y + g

    if times[-1] == 0:
        return np.repeat(m0[None, :], times.size, axis=0)
    sol = scipy.integrate.solve_ivp(
        flow,
        (0.0, float(times[-1])),
        m0,
        t_eval=times,
        method="DOP853",
        rtol=1e-11,
        atol=1e-12,
    )
    return sol.y.T.copy()
