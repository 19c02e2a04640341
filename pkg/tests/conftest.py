import json

import numpy as np
import pytest
from scipy.optimize import linear_sum_assignment

from thirdq import (
    BosonicModel,
    LindbladChannel,
    Stability,
    build_structure,
    rapidities,
    validate_model,
)

# single-oscillator reference instance: omega=1, loss u=1, gain v=0.5,
# cross coupling w=0.25, realized by two channels
SEC4_CHANNELS = [
    ([1.0], [0.25]),
    ([0.0], [np.sqrt(0.4375)]),
]


def sec4_model(u_scale=1.0) -> BosonicModel:
    return validate_model(1, [[1.0]], [[0.0]], SEC4_CHANNELS)


def sec4_document() -> dict:
    return {
        "n": 1,
        "H": [[[1.0, 0.0]]],
        "K": [[[0.0, 0.0]]],
        "channels": [
            {"l": [[1.0, 0.0]], "k": [[0.25, 0.0]]},
            {"l": [[0.0, 0.0]], "k": [[float(np.sqrt(0.4375)), 0.0]]},
        ],
    }


def unstable_sec4_model() -> BosonicModel:
    # u=0.5, v=1 flips the sign of u - v
    return validate_model(
        1, [[1.0]], [[0.0]], [([np.sqrt(0.5)], [0.25]), ([0.0], [np.sqrt(0.9375)])]
    )


def closed_model(omega=1.0) -> BosonicModel:
    return validate_model(1, [[omega]], [[0.0]], [])


def two_mode_model() -> BosonicModel:
    """Coupled pair with per-mode loss dominating gain; occupations ~ 0.2."""
    u = [1.0, 1.1]
    v = [0.15, 0.2]
    channels = []
    for j in range(2):
        l = np.zeros(2)
        l[j] = np.sqrt(u[j])
        channels.append((l, np.zeros(2)))
        k = np.zeros(2)
        k[j] = np.sqrt(v[j])
        channels.append((np.zeros(2), k))
    H = [[1.0, 0.3], [0.3, 1.3]]
    return validate_model(2, H, None, channels)


def two_mode_document() -> dict:
    m = two_mode_model()
    from thirdq.cli import model_to_document

    return model_to_document(m)


def random_model(rng, n=None, max_channels=4, gain_scale=0.35, squeeze_scale=0.15):
    """A random valid model; loss-dominated so Stable instances are common."""
    if n is None:
        n = int(rng.integers(1, 6))
    H = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    H = (H + H.conj().T) / 2
    K = squeeze_scale * (rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n)))
    K = (K + K.T) / 2
    channels = []
    for _ in range(int(rng.integers(1, max_channels + 1))):
        l = rng.normal(size=n) + 1j * rng.normal(size=n)
        k = gain_scale * (rng.normal(size=n) + 1j * rng.normal(size=n))
        channels.append(LindbladChannel(l=l, k=k))
    return validate_model(n, H, K, channels)


def random_stable_model(rng, n=None, max_tries=200):
    """Random Stable model with a safe margin from the imaginary axis.

    The margin (min Re beta > 0.02) and a conditioning bound keep the
    certified tolerances meaningful; near-marginal spectra are a separate,
    deliberately exercised regime.
    """
    for _ in range(max_tries):
        model = random_model(rng, n=n)
        struct = build_structure(model)
        try:
            spectrum = rapidities(struct.X)
        except Exception:
            continue
        if (
            spectrum.stability is Stability.STABLE
            and spectrum.beta.real.min() > 0.02
            and spectrum.cond_P < 1e6
        ):
            return model, struct, spectrum
    raise RuntimeError("failed to draw a stable model")


def write_model(tmp_path, doc, name="model.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc, indent=2) + "\n")
    return str(path)


def multiset_max_delta(a, b):
    """Largest pairwise distance under the optimal matching of two multisets."""
    a = np.asarray(a, dtype=complex).ravel()
    b = np.asarray(b, dtype=complex).ravel()
    assert a.size == b.size
    cost = np.abs(a[:, None] - b[None, :])
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].max())


def fit_decay_slope(times, values):
    """Least-squares slope s of log(values) ~ -s * t."""
    times = np.asarray(times, dtype=float)
    logs = np.log(np.asarray(values, dtype=float))
    A = np.vstack([times, np.ones_like(times)]).T
    coef, *_ = np.linalg.lstsq(A, logs, rcond=None)
    return -coef[0]


@pytest.fixture
def sec4():
    return sec4_model()


@pytest.fixture
def rng():
    return np.random.default_rng(20250810)
