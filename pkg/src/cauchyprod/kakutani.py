"""Dichotomy series evaluation and the equivalence/singularity classifier.

An infinite product of Cauchy factor measures, perturbed per factor by a
location shift h_n or a scale dilation sigma_n = 1 + tau_n, is either
equivalent to the unperturbed product or mutually singular with it.  The
deciding quantity is the scale-weighted perturbation sequence

    w_n = h_n / gamma_n   (additive)      w_n = tau_n   (multiplicative)

which yields equivalence exactly when it is square-summable.  This module
offers two routes to a verdict: an exact symbolic route on the parametric
sequence families, and a numeric route that sums the dichotomy series
S_N = sum_{n<=N} K_n with a bracketed estimate of the discarded tail.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .cauchy import AdditiveShift, InputError, ScaleDilation
from .hellinger import kakutani_summand, quadratic_coefficient
from .quadrature import DEFAULT_TOL

__all__ = [
    "PowerLaw",
    "Geometric",
    "Constant",
    "Explicit",
    "SequenceSpec",
    "ProductModel",
    "LpStatus",
    "ClassificationResult",
    "PartialSum",
    "term",
    "spec_length",
    "weighted_sequence",
    "lp_status",
    "classify",
    "kakutani_partial_sum",
    "series_verdict",
]

EQUIVALENT = "Equivalent"
SINGULAR = "Singular"
UNDETERMINED = "Undetermined"

# tail formulas assume the quadratic decay regime; beyond this size the
# quartic correction exceeds the bracket slack
TAIL_VALIDITY_LIMIT = 0.1
# the +-25% bracket around the measured K(t)/t^2 limit
COEFF_BRACKET = 0.25
# numeric-route convergence: mean per-step increment over the last window
STEP_TOL = 1e-6
_PARTIAL_TERMS = 10**6


@dataclass(frozen=True)
class PowerLaw:
    """t_n = amplitude * n^(-exponent), exponent > 0."""

    amplitude: float
    exponent: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.amplitude) and math.isfinite(self.exponent)):
            raise InputError(f"non-finite power-law parameters {self!r}")
        if self.exponent <= 0.0:
            raise InputError(f"power-law exponent must be > 0, got {self.exponent}")


@dataclass(frozen=True)
class Geometric:
    """t_n = amplitude * ratio^n, 0 < ratio < 1."""

    amplitude: float
    ratio: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.amplitude) and math.isfinite(self.ratio)):
            raise InputError(f"non-finite geometric parameters {self!r}")
        if not 0.0 < self.ratio < 1.0:
            raise InputError(f"geometric ratio must be in (0, 1), got {self.ratio}")


@dataclass(frozen=True)
class Constant:
    """t_n = value for every n."""

    value: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.value):
            raise InputError(f"non-finite constant {self.value}")


@dataclass(frozen=True)
class Explicit:
    """Finite list of values; t_n defined for n <= len(values) only."""

    values: tuple[float, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        if len(self.values) == 0:
            raise InputError("explicit sequence must be nonempty")
        if not all(math.isfinite(v) for v in self.values):
            raise InputError("explicit sequence contains non-finite values")


SequenceSpec = Union[PowerLaw, Geometric, Constant, Explicit]


def term(spec: SequenceSpec, n: int) -> float:
    """n-th element of the sequence, n >= 1."""
    if n < 1:
        raise InputError(f"index must be >= 1, got {n}")
    if isinstance(spec, PowerLaw):
        return spec.amplitude * float(n) ** -spec.exponent
    if isinstance(spec, Geometric):
        return spec.amplitude * spec.ratio**n
    if isinstance(spec, Constant):
        return spec.value
    if isinstance(spec, Explicit):
        if n > len(spec.values):
            raise IndexError(f"explicit sequence has {len(spec.values)} values, asked for n={n}")
        return spec.values[n - 1]
    raise TypeError(f"unsupported sequence spec {spec!r}")


def spec_length(spec: SequenceSpec) -> int | None:
    """Number of defined terms; None for the unbounded families."""
    return len(spec.values) if isinstance(spec, Explicit) else None


@dataclass(frozen=True)
class _Reduced:
    """Symbolic form c * n^(-power) * ratio^n.

    Each parametric family reduces to this shape and the shape is closed
    under pointwise ratios, which is how the gamma-weighting of additive
    shifts is analyzed without any floating-point sequence evaluation.
    """

    coeff: float
    power: float
    ratio: float

    @staticmethod
    def of(spec: SequenceSpec) -> "_Reduced":
        if isinstance(spec, PowerLaw):
            return _Reduced(spec.amplitude, spec.exponent, 1.0)
        if isinstance(spec, Geometric):
            return _Reduced(spec.amplitude, 0.0, spec.ratio)
        if isinstance(spec, Constant):
            return _Reduced(spec.value, 0.0, 1.0)
        raise TypeError(f"no reduced form for {spec!r}")

    def divided_by(self, other: "_Reduced") -> "_Reduced":
        if other.coeff == 0.0:
            raise InputError("cannot weight by a sequence with zero amplitude")
        return _Reduced(self.coeff / other.coeff, self.power - other.power, self.ratio / other.ratio)

    def value_at(self, n: int) -> float:
        return self.coeff * float(n) ** -self.power * self.ratio**n

    @property
    def converges_to_zero(self) -> bool:
        if self.coeff == 0.0 or self.ratio < 1.0:
            return True
        if self.ratio > 1.0:
            return False
        return self.power > 0.0

    def lp_summable(self, p: float) -> bool:
        if self.coeff == 0.0 or self.ratio < 1.0:
            return True
        if self.ratio > 1.0:
            return False
        return p * self.power > 1.0


@dataclass(frozen=True)
class ProductModel:
    """One pair of perturbed/unperturbed countable Cauchy products.

    ``perturbation`` is read as the shift sequence h_n when ``kind`` is
    "additive" and as the deviation sequence tau_n (so sigma_n = 1 + tau_n)
    when ``kind`` is "multiplicative".  Scalars are promoted to Constant.
    Scale sequences must be strictly positive, and multiplicative deviations
    must keep every sigma_n positive.
    """

    kind: str
    perturbation: SequenceSpec
    base_scale: SequenceSpec = field(default=Constant(1.0))
    base_location: SequenceSpec = field(default=Constant(0.0))

    def __post_init__(self) -> None:
        if self.kind not in ("additive", "multiplicative"):
            raise InputError(f"kind must be 'additive' or 'multiplicative', got {self.kind!r}")
        for name in ("perturbation", "base_scale", "base_location"):
            v = getattr(self, name)
            if isinstance(v, (int, float)):
                object.__setattr__(self, name, Constant(float(v)))
        if not _positive_everywhere(self.base_scale):
            raise InputError("base scale sequence must be strictly positive everywhere")
        if self.kind == "multiplicative":
            lo = _min_possible(self.perturbation)
            if lo <= -1.0:
                raise InputError("multiplicative deviations must satisfy 1 + tau_n > 0")

    @property
    def horizon(self) -> int | None:
        """Largest factor index defined by every involved sequence."""
        lengths = [
            length
            for spec in (self.perturbation, self.base_scale, self.base_location)
            if (length := spec_length(spec)) is not None
        ]
        return min(lengths) if lengths else None


def _min_possible(spec: SequenceSpec) -> float:
    """Infimum of the sequence values over all n >= 1."""
    if isinstance(spec, Constant):
        return spec.value
    if isinstance(spec, Explicit):
        return min(spec.values)
    if isinstance(spec, PowerLaw):
        # |t_n| decreases, so the extreme value sits at n = 1
        return min(spec.amplitude, 0.0)
    if isinstance(spec, Geometric):
        return min(spec.amplitude * spec.ratio, 0.0)
    raise TypeError(f"unsupported sequence spec {spec!r}")


def _positive_everywhere(spec: SequenceSpec) -> bool:
    if isinstance(spec, Constant):
        return spec.value > 0.0
    if isinstance(spec, Explicit):
        return all(v > 0.0 for v in spec.values)
    if isinstance(spec, (PowerLaw, Geometric)):
        return spec.amplitude > 0.0
    raise TypeError(f"unsupported sequence spec {spec!r}")


def weighted_sequence(model: ProductModel, n: int) -> float:
    """w_n = h_n/gamma_n for additive models, tau_n for multiplicative ones."""
    if model.kind == "additive":
        return term(model.perturbation, n) / term(model.base_scale, n)
    return term(model.perturbation, n)


def _weighted_reduced(model: ProductModel) -> _Reduced | None:
    """Symbolic reduced form of the weighted sequence; None when finite."""
    if model.horizon is not None:
        return None
    if model.kind == "additive":
        return _Reduced.of(model.perturbation).divided_by(_Reduced.of(model.base_scale))
    return _Reduced.of(model.perturbation)


@dataclass(frozen=True)
class LpStatus:
    """Summability verdict for sum |t_n|^p with a value bracket when finite."""

    summable: bool
    lower: float
    upper: float
    detail: str

    @property
    def width(self) -> float:
        return self.upper - self.lower


def lp_status(spec: SequenceSpec, p: float) -> LpStatus:
    """Decide sum_n |t_n|^p < infinity, exactly, for the four spec families.

    Power laws are summable iff p * exponent > 1 (value bracket from a
    partial sum plus integral tail bounds); geometric sequences always
    converge with a closed-form value; nonzero constants diverge; explicit
    sequences are finite sums.
    """
    if p < 1.0:
        raise InputError(f"p must be >= 1, got {p}")
    if isinstance(spec, Explicit):
        total = float(np.sum(np.abs(np.asarray(spec.values)) ** p))
        return LpStatus(True, total, total, "finite sequence, exact sum")
    if isinstance(spec, Constant):
        if spec.value == 0.0:
            return LpStatus(True, 0.0, 0.0, "identically zero")
        return LpStatus(False, math.inf, math.inf, "nonzero constant sequence")
    if isinstance(spec, Geometric):
        a, r = abs(spec.amplitude) ** p, spec.ratio**p
        total = a * r / (1.0 - r)
        return LpStatus(True, total, total, "geometric series, closed form")
    if isinstance(spec, PowerLaw):
        if spec.amplitude == 0.0:
            return LpStatus(True, 0.0, 0.0, "identically zero")
        q = p * spec.exponent
        if q <= 1.0:
            return LpStatus(False, math.inf, math.inf, f"sum n^-{q:g} diverges (exponent <= 1)")
        scale = abs(spec.amplitude) ** p
        m = _PARTIAL_TERMS
        n = np.arange(1, m + 1, dtype=np.float64)
        partial = float(np.sum(n**-q))
        t_lo = (m + 1.0) ** (1.0 - q) / (q - 1.0)
        t_hi = float(m) ** (1.0 - q) / (q - 1.0)
        return LpStatus(
            True,
            scale * (partial + t_lo),
            scale * (partial + t_hi),
            f"partial sum to {m} plus integral tail bounds",
        )
    raise TypeError(f"unsupported sequence spec {spec!r}")


@dataclass(frozen=True)
class ClassificationResult:
    verdict: str
    method: str
    evidence: dict


def classify(model: ProductModel) -> ClassificationResult:
    """Exact equivalence/singularity verdict from the weighted sequence.

    Equivalent iff the weighted sequence is square-summable; decided
    symbolically on the reduced form, so parametric models never come back
    Undetermined.  Finite (explicit) models are trivially square-summable
    and classified Equivalent, with the degeneracy recorded in the evidence.
    """
    evidence: dict = {"weighted_partial_l2": _partial_l2(model, 1000)}
    if model.horizon is not None:
        evidence["note"] = (
            "finite sequence: the infinite-product dichotomy is vacuous; "
            "finite sequences are trivially square-summable"
        )
        evidence["horizon"] = model.horizon
        return ClassificationResult(EQUIVALENT, "SymbolicL2", evidence)
    reduced = _weighted_reduced(model)
    evidence["weighted_form"] = {
        "coeff": reduced.coeff,
        "power": reduced.power,
        "ratio": reduced.ratio,
    }
    if reduced.lp_summable(2.0):
        evidence["note"] = "weighted sequence is square-summable"
        return ClassificationResult(EQUIVALENT, "SymbolicL2", evidence)
    if not reduced.converges_to_zero:
        evidence["note"] = "weighted sequence does not converge to zero"
    else:
        evidence["note"] = "weighted sequence converges to zero but is not square-summable"
    return ClassificationResult(SINGULAR, "SymbolicL2", evidence)


def _partial_l2(model: ProductModel, n_terms: int) -> float:
    horizon = model.horizon
    stop = n_terms if horizon is None else min(horizon, n_terms)
    return float(sum(weighted_sequence(model, n) ** 2 for n in range(1, stop + 1)))


@functools.lru_cache(maxsize=None)
def _coefficient_bracket(kind: str) -> tuple[float, float]:
    c = quadratic_coefficient(kind).value
    return (1.0 - COEFF_BRACKET) * c, (1.0 + COEFF_BRACKET) * c


def _l2_tail_bracket(model: ProductModel, n_from: int) -> tuple[float, float, float]:
    """(lower, upper, max |w_n|) for the squared weighted tail beyond n_from."""
    horizon = model.horizon
    if horizon is not None:
        if n_from >= horizon:
            return 0.0, 0.0, 0.0
        vals = np.array([weighted_sequence(model, n) for n in range(n_from + 1, horizon + 1)])
        t = float(np.sum(vals * vals))
        return t, t, float(np.max(np.abs(vals))) if vals.size else 0.0
    r = _weighted_reduced(model)
    if r.coeff == 0.0:
        return 0.0, 0.0, 0.0
    if r.ratio > 1.0 or (r.ratio == 1.0 and 2.0 * r.power <= 1.0):
        return math.inf, math.inf, _max_abs_beyond(r, n_from)
    if r.ratio == 1.0:
        q = 2.0 * r.power
        c2 = r.coeff * r.coeff
        m = min(n_from + _PARTIAL_TERMS, 10**7)
        n = np.arange(n_from + 1, m + 1, dtype=np.float64)
        partial = float(np.sum(n**-q))
        t_lo = (m + 1.0) ** (1.0 - q) / (q - 1.0)
        t_hi = float(m) ** (1.0 - q) / (q - 1.0)
        return c2 * (partial + t_lo), c2 * (partial + t_hi), abs(r.value_at(n_from + 1))
    # geometric decay, possibly against a polynomial factor
    total = 0.0
    n = n_from + 1
    while True:
        t = r.value_at(n) ** 2
        growth = ((n + 1.0) / n) ** (-2.0 * r.power) * r.ratio**2
        if growth < 1.0 and t <= 1e-18 * max(total, 1e-300):
            # remaining tail under a geometric envelope
            bound = t * growth / (1.0 - growth)
            return total, total + t + bound, _max_abs_beyond(r, n_from)
        total += t
        n += 1
        if n > n_from + 10**7:
            raise InputError("geometric tail failed to localize (ratio too close to 1)")


def _max_abs_beyond(r: _Reduced, n_from: int) -> float:
    if r.coeff == 0.0:
        return 0.0
    if r.ratio == 1.0:
        if r.power > 0.0:
            return abs(r.value_at(n_from + 1))
        return math.inf if r.power < 0.0 else abs(r.coeff)
    if r.ratio > 1.0:
        return math.inf
    if r.power >= 0.0:
        return abs(r.value_at(n_from + 1))
    # |w_n| = |c| n^|power| ratio^n peaks near |power| / log(1/ratio)
    peak = r.power / math.log(r.ratio)  # positive: power < 0, log ratio < 0
    best = abs(r.value_at(n_from + 1))
    for cand in (math.floor(peak), math.ceil(peak)):
        if cand > n_from:
            best = max(best, abs(r.value_at(int(cand))))
    return best


@dataclass(frozen=True)
class PartialSum:
    """Truncated dichotomy series with a bracket for the discarded tail."""

    total: float
    tail_low: float
    tail_high: float
    weighted: tuple[float, ...]
    summands: tuple[float, ...]
    cumulative: tuple[float, ...]
    tail_note: str


def kakutani_partial_sum(model: ProductModel, N: int, tol: float = DEFAULT_TOL) -> PartialSum:
    """S_N = sum_{n<=N} K_n plus a bracket for the tail beyond N.

    Summands are cached per distinct weighted value, so constant sequences
    cost one quadrature; their cumulative sums are then n * K exactly.  The
    tail bracket is [c_lo * T_lo, c_hi * T_hi] where T brackets the squared
    weighted tail and (c_lo, c_hi) is the measured quadratic decay constant
    widened by 25% in each direction.  When the tail terms are too large for
    the quadratic regime (above 0.1) a finite bracket cannot be certified and
    (0, inf) is reported.
    """
    if N < 1:
        raise InputError(f"N must be >= 1, got {N}")
    horizon = model.horizon
    if horizon is not None and N > horizon:
        raise IndexError(f"model defines {horizon} factors, asked for N={N}")
    w = np.array([weighted_sequence(model, n) for n in range(1, N + 1)])
    cache: dict[float, float] = {}
    summands = np.empty(N)
    for i, v in enumerate(w):
        if v not in cache:
            if model.kind == "additive":
                cache[v] = kakutani_summand(AdditiveShift(v), tol=tol)
            else:
                cache[v] = kakutani_summand(ScaleDilation(1.0 + v), tol=tol)
        summands[i] = cache[v]
    if np.all(w == w[0]):
        # n * K keeps S_2N - S_N = N * K exact for identical summands
        cumulative = summands[0] * np.arange(1, N + 1, dtype=np.float64)
    else:
        cumulative = np.cumsum(summands)
    t_lo, t_hi, max_abs = _l2_tail_bracket(model, N)
    if t_hi == 0.0:
        tail = (0.0, 0.0)
        note = "no tail: sequence ends (or vanishes) beyond N"
    elif not math.isfinite(t_hi):
        tail = (math.inf, math.inf)
        note = "squared weighted tail diverges"
    elif max_abs > TAIL_VALIDITY_LIMIT:
        tail = (0.0, math.inf)
        note = (
            f"tail terms up to {max_abs:.3g} exceed the quadratic-regime "
            f"limit {TAIL_VALIDITY_LIMIT}; bracket not certified"
        )
    else:
        c_lo, c_hi = _coefficient_bracket(model.kind)
        tail = (c_lo * t_lo, c_hi * t_hi)
        note = "quadratic-regime bracket around the measured decay constant"
    return PartialSum(
        total=float(cumulative[-1]),
        tail_low=tail[0],
        tail_high=tail[1],
        weighted=tuple(w),
        summands=tuple(summands),
        cumulative=tuple(cumulative),
        tail_note=note,
    )


def series_verdict(model: ProductModel, N: int, growth_window: int) -> ClassificationResult:
    """Truncation-based verdict from the observed behavior of S_N.

    Equivalent when the tail bracket is finite and the increments over the
    last window have died down; Singular when the observed growth keeps pace
    with a certified-divergent prediction; Undetermined otherwise.  Evidence
    always records N, the window, and the numeric payload.
    """
    if growth_window < 1 or N < growth_window:
        raise InputError(f"need 1 <= growth_window <= N, got window={growth_window}, N={N}")
    part = kakutani_partial_sum(model, N)
    s_n = part.total
    s_prev = part.cumulative[N - growth_window - 1] if N > growth_window else 0.0
    delta = s_n - s_prev
    mean_step = delta / growth_window
    evidence: dict = {
        "N": N,
        "growth_window": growth_window,
        "S_N": s_n,
        "window_increment": delta,
        "mean_step_increment": mean_step,
        "tail_low": part.tail_low,
        "tail_high": part.tail_high,
        "tail_note": part.tail_note,
    }
    if math.isfinite(part.tail_high) and mean_step < STEP_TOL:
        evidence["note"] = "series converged: finite tail bracket and vanishing increments"
        return ClassificationResult(EQUIVALENT, "NumericTruncation", evidence)
    window = np.asarray(part.weighted[N - growth_window :])
    window_summands = np.asarray(part.summands[N - growth_window :])
    if not math.isfinite(part.tail_high):
        c_lo, _ = _coefficient_bracket(model.kind)
        min_summand = float(np.min(window_summands))
        predicted = c_lo * float(np.sum(window * window))
        if np.max(np.abs(window)) <= TAIL_VALIDITY_LIMIT and delta >= 0.5 * predicted > 0.0:
            evidence["note"] = (
                "growth matches the quadratic rate of a divergent weighted sequence"
            )
            evidence["predicted_window_growth"] = predicted
            return ClassificationResult(SINGULAR, "NumericTruncation", evidence)
        if min_summand > 0.0 and delta >= 0.99 * growth_window * min_summand:
            evidence["note"] = "per-step growth bounded away from zero"
            evidence["min_window_summand"] = min_summand
            return ClassificationResult(SINGULAR, "NumericTruncation", evidence)
    evidence["note"] = "no convergence certificate and no divergence witness at this truncation"
    return ClassificationResult(UNDETERMINED, "NumericTruncation", evidence)
