"""Hot Monte Carlo kernels with a numba fast path and a pure-numpy fallback.

The simulation loops evaluate tens of millions of likelihood-ratio terms
(trials x factors), so they are compiled with numba when available.  Setting
the environment variable CAUCHYPROD_DISABLE_NUMBA=1 forces the numpy path;
both paths implement the identical arithmetic, element for element, in the
identical order, so results do not depend on the backend.

Randomness is counter-based: the uniform for (trial t, factor n) is a
splitmix64 finalizer applied to a counter derived from (seed, t, n).  Draws
are therefore independent of evaluation order, which makes parallel execution
(numba prange over trials) bit-identical to serial execution.  The mapping
u = ((z >> 11) + 0.5) * 2^-53 never produces 0 or 1, so tan(pi*(u - 1/2))
is always finite.
"""

from __future__ import annotations

import os

import numpy as np

__all__ = [
    "HAVE_NUMBA",
    "BACKEND",
    "ADDITIVE",
    "MULTIPLICATIVE",
    "uniform_for",
    "loglr_paths",
    "sqrt_phi_samples",
    "loglr_paths_numpy",
    "sqrt_phi_samples_numpy",
]

ADDITIVE = 0
MULTIPLICATIVE = 1

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_INV53 = 2.0**-53

_disable = os.environ.get("CAUCHYPROD_DISABLE_NUMBA", "").strip().lower()
NUMBA_DISABLED = _disable in ("1", "true", "yes", "on")

try:
    if NUMBA_DISABLED:
        raise ImportError("disabled via CAUCHYPROD_DISABLE_NUMBA")
    from numba import njit, prange

    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False

BACKEND = "numba" if HAVE_NUMBA else "numpy"


def _counters(trial0: int, ntrials: int, factor: int) -> np.ndarray:
    t = np.arange(trial0, trial0 + ntrials, dtype=np.uint64)
    return (t << np.uint64(32)) | np.uint64(factor)


def _uniform_numpy(seed: int, counters: np.ndarray) -> np.ndarray:
    z = np.uint64(seed) + _GOLDEN * (counters + np.uint64(1))
    z = (z ^ (z >> np.uint64(30))) * _MIX1
    z = (z ^ (z >> np.uint64(27))) * _MIX2
    z = z ^ (z >> np.uint64(31))
    return ((z >> np.uint64(11)).astype(np.float64) + 0.5) * _INV53


def uniform_for(seed: int, trial: int, factor: int) -> float:
    """The uniform assigned to one (trial, factor) cell; test/debug helper."""
    return float(_uniform_numpy(seed, _counters(trial, 1, factor))[0])


def loglr_paths_numpy(seed, trials, kind, values, checkpoints):
    """log L at each checkpoint for every trial; (trials, len(checkpoints)).

    values holds the standardized shift zeta_n (kind ADDITIVE) or the dilation
    sigma_n (kind MULTIPLICATIVE) for factors n = 1..len(values).
    """
    values = np.asarray(values, dtype=np.float64)
    checkpoints = np.asarray(checkpoints, dtype=np.int64)
    out = np.empty((trials, checkpoints.shape[0]), dtype=np.float64)
    acc = np.zeros(trials, dtype=np.float64)
    k = 0
    for idx in range(values.shape[0]):
        n = idx + 1
        u = _uniform_numpy(seed, _counters(0, trials, n))
        y = np.tan(np.pi * (u - 0.5))
        v = values[idx]
        if kind == ADDITIVE:
            d = y - v
            acc += np.log((y * y + 1.0) / (d * d + 1.0))
        else:
            acc += np.log(v * (y * y + 1.0) / (y * y + v * v))
        if k < checkpoints.shape[0] and n == checkpoints[k]:
            out[:, k] = acc
            k += 1
    return out


def sqrt_phi_samples_numpy(seed, trials, kind, value):
    """sqrt(phi(U)) for iid standard-Cauchy draws U, one per trial."""
    u = _uniform_numpy(seed, _counters(0, trials, 0))
    y = np.tan(np.pi * (u - 0.5))
    if kind == ADDITIVE:
        d = y - value
        phi = (y * y + 1.0) / (d * d + 1.0)
    else:
        phi = value * (y * y + 1.0) / (y * y + value * value)
    return np.sqrt(phi)


if HAVE_NUMBA:

    @njit(cache=True)
    def _uniform_nb(seed, counter):
        z = seed + _GOLDEN * (counter + np.uint64(1))
        z = (z ^ (z >> np.uint64(30))) * _MIX1
        z = (z ^ (z >> np.uint64(27))) * _MIX2
        z = z ^ (z >> np.uint64(31))
        return (np.float64(z >> np.uint64(11)) + 0.5) * _INV53

    @njit(cache=True, parallel=True)
    def _loglr_paths_nb(seed, trials, kind, values, checkpoints):
        n_cp = checkpoints.shape[0]
        n_fac = values.shape[0]
        out = np.empty((trials, n_cp), dtype=np.float64)
        for t in prange(trials):
            base = np.uint64(t) << np.uint64(32)
            acc = 0.0
            k = 0
            for idx in range(n_fac):
                n = idx + 1
                u = _uniform_nb(seed, base | np.uint64(n))
                y = np.tan(np.pi * (u - 0.5))
                v = values[idx]
                if kind == ADDITIVE:
                    d = y - v
                    acc += np.log((y * y + 1.0) / (d * d + 1.0))
                else:
                    acc += np.log(v * (y * y + 1.0) / (y * y + v * v))
                if k < n_cp and n == checkpoints[k]:
                    out[t, k] = acc
                    k += 1
        return out

    @njit(cache=True, parallel=True)
    def _sqrt_phi_nb(seed, trials, kind, value):
        out = np.empty(trials, dtype=np.float64)
        for t in prange(trials):
            u = _uniform_nb(seed, np.uint64(t) << np.uint64(32))
            y = np.tan(np.pi * (u - 0.5))
            if kind == ADDITIVE:
                d = y - value
                phi = (y * y + 1.0) / (d * d + 1.0)
            else:
                phi = value * (y * y + 1.0) / (y * y + value * value)
            out[t] = np.sqrt(phi)
        return out


def loglr_paths(seed, trials, kind, values, checkpoints):
    if HAVE_NUMBA:
        return _loglr_paths_nb(
            np.uint64(seed),
            np.int64(trials),
            np.int64(kind),
            np.asarray(values, dtype=np.float64),
            np.asarray(checkpoints, dtype=np.int64),
        )
    return loglr_paths_numpy(seed, trials, kind, values, checkpoints)


def sqrt_phi_samples(seed, trials, kind, value):
    if HAVE_NUMBA:
        return _sqrt_phi_nb(np.uint64(seed), np.int64(trials), np.int64(kind), np.float64(value))
    return sqrt_phi_samples_numpy(seed, trials, kind, value)
