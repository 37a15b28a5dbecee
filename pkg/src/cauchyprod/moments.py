"""Exact rational-multiple-of-pi evaluation of the even moment integrals.

The family

    integral_R  x^(2r) / (x^2 + 1)^s  dx
        = pi * (2r)! (2(s-r-1))! / (4^(s-1) r! (s-r-1)! (s-1)!)

for integers 0 <= r <= s-1 is the ground truth against which the adaptive
quadrature engine is checked.  All arithmetic is exact: factorials on Python
integers, fractions reduced at construction, no floating-point Gamma anywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

__all__ = ["PiRational", "gamma_moment", "to_real"]

# pi to 48 digits as an exact fraction; enough headroom that converting
# (numerator/denominator) * PI_FRACTION to float is correctly rounded.
_PI_FRACTION = Fraction(
    314159265358979323846264338327950288419716939937511,
    10**50,
)


@dataclass(frozen=True)
class PiRational:
    """An exact value (numerator/denominator) * pi, stored in lowest terms."""

    numerator: int
    denominator: int

    def __post_init__(self) -> None:
        if self.denominator == 0:
            raise ZeroDivisionError("denominator must be nonzero")
        num, den = self.numerator, self.denominator
        if den < 0:
            num, den = -num, -den
        g = math.gcd(num, den)
        if g > 1:
            num //= g
            den //= g
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "denominator", den)

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    def __str__(self) -> str:
        if self.denominator == 1:
            return f"{self.numerator}*pi"
        return f"{self.numerator}/{self.denominator}*pi"


def gamma_moment(r: int, s: int) -> PiRational:
    """Exact value of integral_R x^(2r)/(x^2+1)^s dx as a rational times pi.

    Requires integers with s >= 1 and r <= s - 1; outside that range the
    integral diverges and a ValueError is raised.
    """
    if not (isinstance(r, int) and isinstance(s, int)):
        raise TypeError(f"r and s must be integers, got {r!r}, {s!r}")
    if r < 0 or s < 1:
        raise ValueError(f"need r >= 0 and s >= 1, got r={r}, s={s}")
    if r > s - 1:
        raise ValueError(f"integral diverges for r > s - 1 (r={r}, s={s})")
    num = math.factorial(2 * r) * math.factorial(2 * (s - r - 1))
    den = 4 ** (s - 1) * math.factorial(r) * math.factorial(s - r - 1) * math.factorial(s - 1)
    return PiRational(num, den)


def to_real(p: PiRational) -> float:
    """Double-precision value of a PiRational.

    Multiplies the exact fraction by a 48-digit rational approximation of pi
    and rounds once; float(Fraction) is correctly rounded in CPython.
    """
    value = p.fraction * _PI_FRACTION
    out = float(value)
    if math.isinf(out):
        raise OverflowError(f"{p} does not fit in a double")
    return out
