"""
(a,b) Balancing and Cobalancing Numbers
Exact search for n, r >= 1 with

    balancing:    a * (1 + ... + (n-1)) = b * ((n+1) + ... + (n+r))
    cobalancing:  a * (1 + ... + n)     = b * ((n+1) + ... + (n+r))

plus the square variants (sums of squares, r >= 0), the cobalancing successor
map, and the residue scans on 4x^2 n^2 + 4x^2 n + 1 = m^2.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from math import gcd
from typing import Iterator, List, Optional, Tuple

import gmpy2

from exactnum import isqrt, perfect_square
from exceptions import CoprimalityError, DomainError, NotCobalancingError, UnsupportedCoefficientError
from workers import parallel_map, split_range

logger = logging.getLogger(__name__)


class Variant(str, Enum):
    BALANCING = "balancing"
    COBALANCING = "cobalancing"


@dataclass(frozen=True)
class CoeffPair:
    """Coprime positive integers (a, b)."""

    a: int
    b: int

    def __post_init__(self):
        if self.a <= 0 or self.b <= 0 or gcd(self.a, self.b) != 1:
            raise CoprimalityError(f"({self.a},{self.b}) is not a pair of coprime positive integers")

    @classmethod
    def reduced(cls, a: int, b: int) -> "CoeffPair":
        """Divide out gcd(a, b); the defining identities are unchanged by scaling."""
        if a <= 0 or b <= 0:
            raise CoprimalityError(f"({a},{b}) must be positive")
        g = gcd(a, b)
        return cls(a // g, b // g)

    def __str__(self) -> str:
        return f"({self.a},{self.b})"


@dataclass(frozen=True, order=True)
class BalanceSolution:
    n: int
    r: int
    variant: Variant
    power: int = 1


# ---------------------------------------------------------------------------
# Power 1
# ---------------------------------------------------------------------------

def _discriminant_coeffs(pair: CoeffPair, variant: Variant) -> Tuple[int, int, int]:
    """(A, B, C) with D(n) = A n^2 + B n + C."""
    a, b = pair.a, pair.b
    if variant == Variant.BALANCING:
        return 4 * b * (b + a), 4 * b * (b - a), b * b
    return 4 * b * (b + a), 4 * b * (b + a), b * b


def balancer_of(n: int, pair: CoeffPair, variant: Variant) -> Optional[int]:
    """
    The r >= 1 that makes n an (a,b) balancing / cobalancing number, or None.

    r = (-(2n+1) b + sqrt(D)) / (2b) where D(n) is a perfect square and the
    division is exact.
    """
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    big_a, big_b, big_c = _discriminant_coeffs(pair, variant)
    root = perfect_square(big_a * n * n + big_b * n + big_c)
    if root is None:
        return None
    num = root - (2 * n + 1) * pair.b
    if num <= 0 or num % (2 * pair.b):
        return None
    return num // (2 * pair.b)


def _scan_linear(pair: CoeffPair, variant: Variant, lo: int, hi: int) -> List[BalanceSolution]:
    big_a, big_b, big_c = _discriminant_coeffs(pair, variant)
    two_b = 2 * pair.b
    disc = big_a * lo * lo + big_b * lo + big_c
    found = []
    for n in range(lo, hi + 1):
        if gmpy2.is_square(disc):
            num = isqrt(disc) - (2 * n + 1) * pair.b
            if num > 0 and num % two_b == 0:
                found.append(BalanceSolution(n, num // two_b, variant, 1))
        disc += big_a * (2 * n + 1) + big_b
    return found


# ---------------------------------------------------------------------------
# Power 2
# ---------------------------------------------------------------------------

def _square_sum(k: int) -> int:
    """1^2 + ... + k^2."""
    return k * (k + 1) * (2 * k + 1) // 6


def _square_left(pair: CoeffPair, variant: Variant, n: int) -> int:
    return pair.a * _square_sum(n - 1 if variant == Variant.BALANCING else n)


def _square_right(pair: CoeffPair, n: int, r: int) -> int:
    return pair.b * (_square_sum(n + r) - _square_sum(n))


def square_balancer_of(n: int, pair: CoeffPair, variant: Variant) -> Optional[int]:
    """
    The r >= 0 with a * sum of squares on the left == b * sum of squares on the right, or None.

    The right-hand side is strictly increasing in r: doubling, then bisection.
    """
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    target = _square_left(pair, variant, n)
    if target == 0:
        return 0
    hi = 1
    while _square_right(pair, n, hi) < target:
        hi *= 2
    lo = hi // 2
    while lo < hi:
        mid = (lo + hi) // 2
        if _square_right(pair, n, mid) < target:
            lo = mid + 1
        else:
            hi = mid
    return lo if _square_right(pair, n, lo) == target else None


def _scan_square(pair: CoeffPair, variant: Variant, lo: int, hi: int) -> List[BalanceSolution]:
    """Two-pointer scan: keep r at the smallest value with right >= left as n advances."""
    found = []
    r = 0
    for n in range(lo, hi + 1):
        target = _square_left(pair, variant, n)
        while _square_right(pair, n, r) < target:
            r += 1
        while r > 0 and _square_right(pair, n, r - 1) >= target:
            r -= 1
        if _square_right(pair, n, r) == target:
            found.append(BalanceSolution(n, r, variant, 2))
    return found


# ---------------------------------------------------------------------------
# Scans
# ---------------------------------------------------------------------------

def _scan_task(task: Tuple[int, int, str, int, int, int]) -> List[BalanceSolution]:
    a, b, variant, power, lo, hi = task
    pair, variant = CoeffPair(a, b), Variant(variant)
    if power == 1:
        return _scan_linear(pair, variant, lo, hi)
    return _scan_square(pair, variant, lo, hi)


def find_all(pair: CoeffPair, variant: Variant, n_max: int, power: int = 1,
             jobs: int = 1) -> List[BalanceSolution]:
    """Every solution with 1 <= n <= n_max, in increasing n."""
    if power not in (1, 2):
        raise DomainError(f"power must be 1 or 2, got {power}")
    chunks = split_range(1, n_max, jobs * 4 if jobs > 1 else 1)
    tasks = [(pair.a, pair.b, variant.value, power, lo, hi) for lo, hi in chunks]
    results = parallel_map(_scan_task, tasks, jobs)
    found = [sol for chunk in results for sol in chunk]
    logger.info("🔍 %s %s power %d up to n=%d: %d solutions",
                pair, variant.value, power, n_max, len(found))
    return found


def is_balanced(n: int, r: int, pair: CoeffPair, variant: Variant, power: int = 1) -> bool:
    """Check the defining identity directly, by summation."""
    left_top = n - 1 if variant == Variant.BALANCING else n
    left = pair.a * sum(k ** power for k in range(1, left_top + 1))
    right = pair.b * sum(k ** power for k in range(n + 1, n + r + 1))
    return left == right


def first_failure(pair: CoeffPair, variant: Variant, n_lo: int, n_hi: int) -> Optional[int]:
    """Smallest n in [n_lo, n_hi] that is not a solution, or None if every n is."""
    for n in range(n_lo, n_hi + 1):
        if balancer_of(n, pair, variant) is None:
            return n
    return None


# ---------------------------------------------------------------------------
# Cobalancing successor map
# ---------------------------------------------------------------------------

def next_cobalancing(x: int, pair: CoeffPair) -> int:
    """
    The cobalancing number following x (x = 0 gives the first one), for a | 2b.

    f(x) = ((2b + a) x + sqrt(4b(b+a) x^2 + 4b(b+a) x + b^2) + b) / a
    """
    a, b = pair.a, pair.b
    if (2 * b) % a:
        raise UnsupportedCoefficientError(f"successor map needs a | 2b, got {pair}")
    if x < 0:
        raise NotCobalancingError(f"{x} is negative")
    if x > 0 and balancer_of(x, pair, Variant.COBALANCING) is None:
        raise NotCobalancingError(f"{x} is not a cobalancing number of {pair}")
    root = perfect_square(4 * b * (b + a) * x * x + 4 * b * (b + a) * x + b * b)
    if root is None:
        raise NotCobalancingError(f"discriminant at {x} is not a perfect square")
    num = (2 * b + a) * x + root + b
    if num % a:
        raise NotCobalancingError(f"successor of {x} under {pair} is not an integer")
    return num // a


def cobalancing_orbit(pair: CoeffPair, upto: int) -> List[int]:
    """Iterates of next_cobalancing from 0, every value <= upto."""
    orbit = []
    x = next_cobalancing(0, pair)
    while x <= upto:
        orbit.append(x)
        x = next_cobalancing(x, pair)
    return orbit


# ---------------------------------------------------------------------------
# 4x^2 n^2 + 4x^2 n + 1 = m^2
# ---------------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class ResidueHit:
    x: int
    n: int
    m: int


def _residue_task(task: Tuple[int, int]) -> List[ResidueHit]:
    x, n_max = task
    hits = []
    step = 8 * x * x
    value = 8 * x * x + 1  # n = 1
    for n in range(1, n_max + 1):
        if gmpy2.is_square(value):
            hits.append(ResidueHit(x, n, isqrt(value)))
        value += step * (n + 1)
    return hits


def _residue_xs(residue: int, y_max: int) -> Iterator[int]:
    for y in range(1, y_max + 1):
        x = 4 * y + residue
        if x > 1:
            yield x


def scan_residue(residue: int, y_max: int, n_max: int, jobs: int = 1) -> List[ResidueHit]:
    """Solutions of 4x^2 n^2 + 4x^2 n + 1 = m^2 for x = 4y + residue > 1, y <= y_max, n <= n_max."""
    if residue not in (0, 1, 2, 3):
        raise DomainError(f"residue must be in 0..3, got {residue}")
    tasks = [(x, n_max) for x in _residue_xs(residue, y_max)]
    return [hit for chunk in parallel_map(_residue_task, tasks, jobs) for hit in chunk]


def scan_residue_conjecture(y_max: int, n_max: int, jobs: int = 1) -> List[ResidueHit]:
    """
    Solutions in the residue classes 0, 1, 3 mod 4, where none are claimed to exist.

    Pell solutions x = 4k^2 - 1 with k = 2n + 1 land in class 3 (x = 35, n = 1 is the first),
    so a scan past y = 8 is not empty.
    """
    hits: List[ResidueHit] = []
    for residue in (0, 1, 3):
        found = scan_residue(residue, y_max, n_max, jobs)
        if found:
            logger.warning("⚠️  residue %d: %d solutions found", residue, len(found))
        hits.extend(found)
    return sorted(hits)
