"""Seeded stochastic witnesses of the product-measure dichotomy.

Estimates Hellinger affinities by sample averages of sqrt(phi), simulates
likelihood-ratio trajectories L_N = prod phi_n(U_n) under the base product
law, and cross-checks E[sqrt(L_N)] = exp(-S_N) against the truncated
dichotomy series.  All randomness is counter-based per (trial, factor), so
results are bit-identical for a given seed no matter how many threads the
kernel backend uses.  Accumulation happens in log space; L_N itself is never
formed, which keeps the singular regime (log L -> -infinity) representable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .cauchy import AdditiveShift, CauchyParams, InputError, Perturbation, ScaleDilation
from .kakutani import ProductModel, kakutani_partial_sum, weighted_sequence
from .quadrature import DEFAULT_TOL

__all__ = [
    "RunConfig",
    "AffinityEstimate",
    "TrajectoryStats",
    "SqrtLrCheck",
    "mc_affinity",
    "simulate_loglr",
    "sqrt_lr_check",
]

_MIN_AFFINITY_TRIALS = 10**3
_MAX_SQRT_LR_FACTORS = 200


@dataclass(frozen=True)
class RunConfig:
    """Seed, trial count, factor count, and checkpoint schedule of one run."""

    seed: int
    trials: int
    n_factors: int
    checkpoints: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 0 <= self.seed < 2**64:
            raise InputError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if self.trials < 1:
            raise InputError(f"trials must be >= 1, got {self.trials}")
        if self.n_factors < 1:
            raise InputError(f"n_factors must be >= 1, got {self.n_factors}")
        cps = tuple(int(c) for c in self.checkpoints)
        object.__setattr__(self, "checkpoints", cps)
        if len(cps) == 0:
            raise InputError("checkpoints must be nonempty")
        if any(b <= a for a, b in zip(cps, cps[1:])):
            raise InputError(f"checkpoints must be strictly increasing, got {cps}")
        if cps[0] < 1 or cps[-1] > self.n_factors:
            raise InputError(f"checkpoints must lie in [1, {self.n_factors}], got {cps}")


@dataclass(frozen=True)
class AffinityEstimate:
    mean: float
    std_error: float
    trials: int


@dataclass(frozen=True)
class TrajectoryStats:
    """Quantiles of log L and moments of sqrt(L) at each checkpoint."""

    checkpoints: tuple[int, ...]
    loglr_q10: tuple[float, ...]
    loglr_q50: tuple[float, ...]
    loglr_q90: tuple[float, ...]
    sqrt_lr_mean: tuple[float, ...]
    sqrt_lr_std_error: tuple[float, ...]


@dataclass(frozen=True)
class SqrtLrCheck:
    mc_value: float
    mc_std_error: float
    series_value: float
    agree: bool


def _kind_and_value(params: CauchyParams, p: Perturbation) -> tuple[int, float]:
    if isinstance(p, AdditiveShift):
        return _kernels.ADDITIVE, p.h / params.scale
    if isinstance(p, ScaleDilation):
        return _kernels.MULTIPLICATIVE, p.sigma
    raise TypeError(f"unsupported perturbation {p!r}")


def mc_affinity(
    params: CauchyParams, p: Perturbation, trials: int, seed: int
) -> AffinityEstimate:
    """Sample average of sqrt(phi(U)) over iid draws U from the base law.

    sqrt(phi) is bounded for any fixed perturbation, so the estimator has
    finite variance; the identity perturbation gives mean exactly 1 with
    zero standard error.
    """
    if trials < _MIN_AFFINITY_TRIALS:
        raise InputError(f"trials must be >= {_MIN_AFFINITY_TRIALS}, got {trials}")
    kind, value = _kind_and_value(params, p)
    vals = _kernels.sqrt_phi_samples(seed, trials, kind, value)
    mean = float(np.mean(vals))
    std_error = float(np.std(vals, ddof=1) / math.sqrt(trials))
    return AffinityEstimate(mean=mean, std_error=std_error, trials=trials)


def _kernel_values(model: ProductModel, n_factors: int) -> tuple[int, np.ndarray]:
    w = np.array([weighted_sequence(model, n) for n in range(1, n_factors + 1)])
    if model.kind == "additive":
        return _kernels.ADDITIVE, w
    return _kernels.MULTIPLICATIVE, 1.0 + w


def simulate_loglr(model: ProductModel, cfg: RunConfig) -> TrajectoryStats:
    """Trajectories of log L_n across trials, summarized at the checkpoints.

    Each trial accumulates sum_{n<=N} log phi_n(U_n) with U_n drawn from the
    per-trial, per-factor counter-based stream.
    """
    kind, values = _kernel_values(model, cfg.n_factors)
    mat = _kernels.loglr_paths(cfg.seed, cfg.trials, kind, values, cfg.checkpoints)
    q10, q50, q90 = np.quantile(mat, (0.1, 0.5, 0.9), axis=0)
    sqrt_lr = np.exp(0.5 * mat)
    means = np.mean(sqrt_lr, axis=0)
    ses = np.std(sqrt_lr, axis=0, ddof=1) / math.sqrt(cfg.trials)
    return TrajectoryStats(
        checkpoints=cfg.checkpoints,
        loglr_q10=tuple(float(v) for v in q10),
        loglr_q50=tuple(float(v) for v in q50),
        loglr_q90=tuple(float(v) for v in q90),
        sqrt_lr_mean=tuple(float(v) for v in means),
        sqrt_lr_std_error=tuple(float(v) for v in ses),
    )


def sqrt_lr_check(model: ProductModel, cfg: RunConfig, tol: float = DEFAULT_TOL) -> SqrtLrCheck:
    """Monte Carlo E[sqrt(L_N)] against exp(-S_N) from the summed series.

    Factor independence gives E[sqrt(L_N)] = prod E[sqrt(phi_n)] = exp(-S_N).
    Capped at N = 200: beyond that the relative variance of sqrt(L_N) makes
    the three-standard-error criterion powerless.
    """
    if cfg.n_factors > _MAX_SQRT_LR_FACTORS:
        raise InputError(
            f"n_factors must be <= {_MAX_SQRT_LR_FACTORS} for sqrt-L checks, "
            f"got {cfg.n_factors}"
        )
    kind, values = _kernel_values(model, cfg.n_factors)
    mat = _kernels.loglr_paths(cfg.seed, cfg.trials, kind, values, (cfg.n_factors,))
    sqrt_lr = np.exp(0.5 * mat[:, 0])
    mc_value = float(np.mean(sqrt_lr))
    mc_se = float(np.std(sqrt_lr, ddof=1) / math.sqrt(cfg.trials))
    series_value = math.exp(-kakutani_partial_sum(model, cfg.n_factors, tol=tol).total)
    agree = abs(mc_value - series_value) <= 3.0 * mc_se
    return SqrtLrCheck(
        mc_value=mc_value, mc_std_error=mc_se, series_value=series_value, agree=agree
    )
