"""Cauchy distribution primitives.

Density, CDF, quantile, inverse-CDF sampling, standardization, and the two
likelihood ratios (location shift, scale dilation) that the affinity,
classification, and simulation layers consume.

Everything here is a pure function of its inputs; ``sample`` mutates only the
caller-owned generator.  Scalars and numpy arrays are both accepted for the
``x`` argument.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "CauchyParams",
    "AdditiveShift",
    "ScaleDilation",
    "Perturbation",
    "StandardizedShift",
    "TauDeviation",
    "density",
    "cdf",
    "quantile",
    "sample",
    "standardize",
    "rn_additive",
    "rn_multiplicative",
]


class InputError(ValueError):
    """Raised when an argument violates a documented precondition."""


@dataclass(frozen=True)
class CauchyParams:
    """Location/scale pair of one Cauchy factor measure.

    ``scale`` must be strictly positive; construction rejects anything else.
    """

    location: float
    scale: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.location) and math.isfinite(self.scale)):
            raise InputError(f"parameters must be finite, got {self!r}")
        if self.scale <= 0.0:
            raise InputError(f"scale must be > 0, got {self.scale}")


@dataclass(frozen=True)
class AdditiveShift:
    """Location perturbation: the new location is ``location + h``."""

    h: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.h):
            raise InputError(f"shift must be finite, got {self.h}")

    @property
    def is_identity(self) -> bool:
        return self.h == 0.0


@dataclass(frozen=True)
class ScaleDilation:
    """Scale perturbation: the new scale is ``sigma * scale``, sigma > 0."""

    sigma: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.sigma) or self.sigma <= 0.0:
            raise InputError(f"sigma must be finite and > 0, got {self.sigma}")

    @property
    def is_identity(self) -> bool:
        return self.sigma == 1.0


Perturbation = AdditiveShift | ScaleDilation


@dataclass(frozen=True)
class StandardizedShift:
    """Dimensionless location shift zeta = h / scale."""

    zeta: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.zeta):
            raise InputError(f"zeta must be finite, got {self.zeta}")


@dataclass(frozen=True)
class TauDeviation:
    """Dimensionless scale deviation tau = sigma - 1, so tau > -1."""

    tau: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.tau) or self.tau <= -1.0:
            raise InputError(f"tau must be finite and > -1, got {self.tau}")


def density(params: CauchyParams, x):
    """Cauchy density at ``x``.

    Uses the algebraically equivalent form gamma / (pi ((x-delta)^2 + gamma^2))
    to avoid overflow for large scales.
    """
    x = np.asarray(x, dtype=np.float64)
    if not np.all(np.isfinite(x)):
        raise InputError("x must be finite")
    u = x - params.location
    out = params.scale / (np.pi * (u * u + params.scale * params.scale))
    return out if out.ndim else float(out)


def cdf(params: CauchyParams, x):
    """P(X <= x) = 1/2 + arctan((x - location)/scale) / pi."""
    x = np.asarray(x, dtype=np.float64)
    out = 0.5 + np.arctan((x - params.location) / params.scale) / np.pi
    return out if out.ndim else float(out)


def quantile(params: CauchyParams, u):
    """Inverse CDF: location + scale * tan(pi (u - 1/2)), for u in (0, 1)."""
    u = np.asarray(u, dtype=np.float64)
    if np.any(u <= 0.0) or np.any(u >= 1.0):
        raise InputError("u must lie strictly inside (0, 1)")
    out = params.location + params.scale * np.tan(np.pi * (u - 0.5))
    return out if out.ndim else float(out)


def sample(params: CauchyParams, rng: np.random.Generator, size=None):
    """Draw from the Cauchy law via the inverse CDF.

    Deterministic given the generator state.  Uniform draws of exactly 0 are
    rejected and redrawn (tan singularity); the generator never returns 1.
    """
    if size is None:
        u = rng.random()
        while u == 0.0:
            u = rng.random()
        return quantile(params, u)
    u = rng.random(size)
    bad = u == 0.0
    while np.any(bad):
        u[bad] = rng.random(int(np.count_nonzero(bad)))
        bad = u == 0.0
    return quantile(params, u)


def standardize(params: CauchyParams, x):
    """Map x to y = (x - location) / scale."""
    x = np.asarray(x, dtype=np.float64)
    out = (x - params.location) / params.scale
    return out if out.ndim else float(out)


def rn_additive(params: CauchyParams, h: float, x):
    """Likelihood ratio of the h-shifted law against the base law.

    phi(x) = ((x-d)^2 + g^2) / ((x-d-h)^2 + g^2); identically 1 iff h = 0.
    Depends on (x, d, g, h) only through y = (x-d)/g and zeta = h/g.
    """
    if not math.isfinite(h):
        raise InputError(f"shift must be finite, got {h}")
    x = np.asarray(x, dtype=np.float64)
    u = x - params.location
    g2 = params.scale * params.scale
    out = (u * u + g2) / ((u - h) ** 2 + g2)
    return out if out.ndim else float(out)


def rn_multiplicative(params: CauchyParams, sigma: float, x):
    """Likelihood ratio of the sigma-dilated law against the base law.

    phi(x) = sigma ((x-d)^2 + g^2) / ((x-d)^2 + sigma^2 g^2); identically 1
    iff sigma = 1.  Requires sigma > 0.
    """
    if not math.isfinite(sigma) or sigma <= 0.0:
        raise InputError(f"sigma must be finite and > 0, got {sigma}")
    x = np.asarray(x, dtype=np.float64)
    u2 = (x - params.location) ** 2
    g2 = params.scale * params.scale
    out = sigma * (u2 + g2) / (u2 + sigma * sigma * g2)
    return out if out.ndim else float(out)
