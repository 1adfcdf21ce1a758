"""
Exact Number Toolkit
Arbitrary-precision integer and rational helpers used by every other module:
integer square roots, floor / nearest integer of rationals, closed rational
intervals, and certified real-root enclosures by bisection.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple, Union

import gmpy2

from exceptions import BracketError, DomainError, TieError

logger = logging.getLogger(__name__)

Rat = Fraction
RatLike = Union[int, Fraction]

HALF = Fraction(1, 2)


def isqrt(x: int) -> int:
    """Largest s >= 0 with s*s <= x. Raises DomainError for x < 0."""
    if x < 0:
        raise DomainError(f"isqrt of negative integer {x}")
    return int(gmpy2.isqrt(x))


def perfect_square(x: int) -> Optional[int]:
    """Return s if x == s*s for some s >= 0, else None. Negative x is never a square."""
    if x < 0:
        return None
    root, rem = gmpy2.isqrt_rem(x)
    if rem:
        return None
    return int(root)


def floor_rat(x: RatLike) -> int:
    """Floor of an exact rational."""
    return math.floor(Fraction(x))


def nearest_rat(x: RatLike) -> int:
    """
    Nearest integer to an exact rational.

    Raises TieError when x is exactly halfway between two integers; callers
    that hit a tie must report it instead of picking a side.
    """
    x = Fraction(x)
    if x - math.floor(x) == HALF:
        raise TieError(f"{rat_str(x)} is exactly halfway between two integers")
    return math.floor(x + HALF)


def rat_str(x: RatLike) -> str:
    """Render a rational as 'p' or 'p/q' (lowest terms)."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class RatInterval:
    """Closed interval [lo, hi] with exact rational endpoints, lo <= hi."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise DomainError(f"Invalid interval [{rat_str(self.lo)}, {rat_str(self.hi)}]")

    @classmethod
    def point(cls, x: RatLike) -> "RatInterval":
        return cls(Fraction(x), Fraction(x))

    @classmethod
    def hull(cls, *values: RatLike) -> "RatInterval":
        return cls(min(values), max(values))

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x: RatLike) -> bool:
        return self.lo <= x <= self.hi

    def sign(self) -> Optional[int]:
        """+1 / -1 when every point has that sign, 0 for the point 0, None if mixed."""
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        if self.lo == self.hi == 0:
            return 0
        return None

    def magnitude(self) -> Fraction:
        """Largest absolute value over the interval."""
        return max(abs(self.lo), abs(self.hi))

    def _coerce(self, other) -> "RatInterval":
        if isinstance(other, RatInterval):
            return other
        return RatInterval.point(other)

    def __add__(self, other) -> "RatInterval":
        other = self._coerce(other)
        return RatInterval(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __neg__(self) -> "RatInterval":
        return RatInterval(-self.hi, -self.lo)

    def __sub__(self, other) -> "RatInterval":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "RatInterval":
        return self._coerce(other) - self

    def __mul__(self, other) -> "RatInterval":
        other = self._coerce(other)
        products = (self.lo * other.lo, self.lo * other.hi,
                    self.hi * other.lo, self.hi * other.hi)
        return RatInterval(min(products), max(products))

    __rmul__ = __mul__

    def reciprocal(self) -> "RatInterval":
        if self.contains(0):
            raise DomainError(f"reciprocal of interval containing zero: {self}")
        return RatInterval(1 / self.hi, 1 / self.lo)

    def __truediv__(self, other) -> "RatInterval":
        return self * self._coerce(other).reciprocal()

    def __rtruediv__(self, other) -> "RatInterval":
        return self._coerce(other) * self.reciprocal()

    def __pow__(self, n: int) -> "RatInterval":
        if n < 0:
            return (self ** -n).reciprocal()
        if n == 0:
            return RatInterval.point(1)
        lo_n, hi_n = self.lo ** n, self.hi ** n
        if self.lo >= 0 or n % 2 == 1:
            return RatInterval(min(lo_n, hi_n), max(lo_n, hi_n))
        if self.hi <= 0:
            return RatInterval(hi_n, lo_n)
        return RatInterval(Fraction(0), max(lo_n, hi_n))

    def floor_value(self) -> Optional[int]:
        """The common floor of every point, or None when the interval crosses an integer."""
        f = math.floor(self.lo)
        return f if math.floor(self.hi) == f else None

    def nearest_value(self) -> Optional[int]:
        """The common nearest integer of every point, or None when a half-integer is inside."""
        # floor(x + 1/2) jumps exactly at half-integers
        if self.lo - math.floor(self.lo) == HALF or self.hi - math.floor(self.hi) == HALF:
            return None
        n = math.floor(self.lo + HALF)
        return n if math.floor(self.hi + HALF) == n else None

    def as_strings(self) -> Tuple[str, str]:
        return rat_str(self.lo), rat_str(self.hi)

    def __str__(self) -> str:
        return f"[{rat_str(self.lo)}, {rat_str(self.hi)}]"


def poly_eval(coeffs: Sequence[RatLike], x: RatLike):
    """Evaluate a polynomial given by coefficients in descending degree (Horner)."""
    acc = Fraction(0)
    for c in coeffs:
        acc = acc * x + c
    return acc


def poly_eval_interval(coeffs: Sequence[RatLike], x: RatInterval) -> RatInterval:
    """Interval Horner evaluation; the result encloses p(t) for every t in x."""
    acc = RatInterval.point(0)
    for c in coeffs:
        acc = acc * x + c
    return acc


def real_root_enclosure(coeffs: Sequence[RatLike], bracket: Tuple[RatLike, RatLike],
                        width: RatLike) -> RatInterval:
    """
    Enclose a real root of a polynomial by exact bisection.

    Args:
        coeffs: coefficients in descending degree, e.g. [1, -1, -1, -1] for x^3 - x^2 - x - 1
        bracket: (lo, hi) with p(lo), p(hi) of opposite sign (or one of them zero)
        width: target width of the returned interval

    Returns:
        RatInterval of width <= width containing a root; a degenerate interval
        when an exact rational root is hit.
    """
    lo, hi = Fraction(bracket[0]), Fraction(bracket[1])
    width = Fraction(width)
    if lo > hi:
        lo, hi = hi, lo
    if width <= 0:
        raise DomainError("root enclosure width must be positive")
    f_lo, f_hi = poly_eval(coeffs, lo), poly_eval(coeffs, hi)
    if f_lo == 0:
        return RatInterval.point(lo)
    if f_hi == 0:
        return RatInterval.point(hi)
    if (f_lo > 0) == (f_hi > 0):
        raise BracketError(f"no sign change of polynomial over [{rat_str(lo)}, {rat_str(hi)}]")

    steps = 0
    while hi - lo > width:
        mid = (lo + hi) / 2
        f_mid = poly_eval(coeffs, mid)
        if f_mid == 0:
            return RatInterval.point(mid)
        if (f_mid > 0) == (f_lo > 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
        steps += 1
    logger.debug("🔍 Root enclosure reached width %s after %d bisections", rat_str(hi - lo), steps)
    return RatInterval(lo, hi)


@dataclass(frozen=True)
class BinetBoundConstants:
    """Printed constants of the Tribonacci Binet error bound, stored exactly as decimals."""

    c4: Fraction = Fraction("0.33622811699")
    a: Fraction = Fraction("0.51998")
    d: Fraction = Fraction("0.7373527")


BINET = BinetBoundConstants()

# x^3 - x^2 - x - 1, real root ~1.839286755
TRIBONACCI_POLY = (1, -1, -1, -1)
TRIBONACCI_BRACKET = (Fraction(1), Fraction(2))
