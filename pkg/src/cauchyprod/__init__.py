"""Countable products of Cauchy measures: equivalence vs. singularity.

Library and CLI for deciding whether an infinite product of Cauchy laws,
perturbed per factor by location shifts or scale dilations, stays equivalent
to the unperturbed product or becomes mutually singular, together with the
numeric machinery (exact moment integrals, adaptive quadrature of Hellinger
affinities, truncated dichotomy series, seeded likelihood-ratio simulation)
that demonstrates the dichotomy empirically.
"""

__version__ = "0.1.0"

from .cauchy import (
    AdditiveShift,
    CauchyParams,
    InputError,
    Perturbation,
    ScaleDilation,
    StandardizedShift,
    TauDeviation,
    cdf,
    density,
    quantile,
    rn_additive,
    rn_multiplicative,
    sample,
    standardize,
)
from .hellinger import (
    CoefficientEstimate,
    affinity_additive,
    affinity_multiplicative,
    epsilon_series,
    i_function,
    kakutani_summand,
    quadratic_coefficient,
    taylor_coefficient_a,
)
from .kakutani import (
    ClassificationResult,
    Constant,
    Explicit,
    Geometric,
    LpStatus,
    PartialSum,
    PowerLaw,
    ProductModel,
    SequenceSpec,
    classify,
    kakutani_partial_sum,
    lp_status,
    series_verdict,
    spec_length,
    term,
    weighted_sequence,
)
from .moments import PiRational, gamma_moment, to_real
from .montecarlo import (
    AffinityEstimate,
    RunConfig,
    SqrtLrCheck,
    TrajectoryStats,
    mc_affinity,
    simulate_loglr,
    sqrt_lr_check,
)
from .quadrature import QuadratureError, QuadratureResult, integrate, integrate_real_line

__all__ = [
    "__version__",
    "AdditiveShift",
    "AffinityEstimate",
    "CauchyParams",
    "ClassificationResult",
    "CoefficientEstimate",
    "Constant",
    "Explicit",
    "Geometric",
    "InputError",
    "LpStatus",
    "PartialSum",
    "Perturbation",
    "PiRational",
    "PowerLaw",
    "ProductModel",
    "QuadratureError",
    "QuadratureResult",
    "RunConfig",
    "ScaleDilation",
    "SequenceSpec",
    "SqrtLrCheck",
    "StandardizedShift",
    "TauDeviation",
    "TrajectoryStats",
    "affinity_additive",
    "affinity_multiplicative",
    "cdf",
    "classify",
    "density",
    "epsilon_series",
    "gamma_moment",
    "i_function",
    "integrate",
    "integrate_real_line",
    "kakutani_partial_sum",
    "kakutani_summand",
    "lp_status",
    "mc_affinity",
    "quadratic_coefficient",
    "quantile",
    "rn_additive",
    "rn_multiplicative",
    "sample",
    "simulate_loglr",
    "spec_length",
    "sqrt_lr_check",
    "standardize",
    "taylor_coefficient_a",
    "term",
    "to_real",
    "weighted_sequence",
]
