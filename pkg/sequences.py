"""
Linear Recurrence Sequences
Constant-coefficient recurrences c_n = x_1 c_{n-1} + ... + x_d c_{n-d} + x_0,
evaluated exactly forwards and (when the trailing coefficient allows) backwards.
"""

import logging
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterator, List, Sequence, Tuple, Union

from exceptions import (ArityError, CoprimalityError, DomainError, ExtensionError, ShapeError,
                        UnsupportedCoefficientError)

logger = logging.getLogger(__name__)

Number = Union[int, Fraction]


def _exact(value: Number) -> Number:
    """Integers stay int, everything else becomes a Fraction."""
    value = Fraction(value)
    return value.numerator if value.denominator == 1 else value


@dataclass(frozen=True)
class Recurrence:
    """
    A depth-d linear recurrence with an optional constant term.

    initial_terms[0] sits at index `base`; the recurrence generates every index
    from base + len(initial_terms) on.
    """

    coeffs: Tuple[Number, ...]
    constant: Number = 0
    initial_terms: Tuple[Number, ...] = ()
    base: int = 0
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(_exact(c) for c in self.coeffs))
        object.__setattr__(self, "constant", _exact(self.constant))
        object.__setattr__(self, "initial_terms", tuple(_exact(t) for t in self.initial_terms))
        if not self.coeffs:
            raise ArityError("recurrence needs at least one coefficient")
        if len(self.initial_terms) < len(self.coeffs):
            raise ArityError(
                f"depth-{len(self.coeffs)} recurrence needs at least {len(self.coeffs)} "
                f"initial terms, got {len(self.initial_terms)}")

    @property
    def depth(self) -> int:
        return len(self.coeffs)

    @property
    def first_generated(self) -> int:
        return self.base + len(self.initial_terms)

    def step(self, previous: Sequence[Number]) -> Number:
        """Next term from the last d terms (oldest first)."""
        acc = self.constant
        for i, x in enumerate(self.coeffs, start=1):
            acc += x * previous[-i]
        return _exact(acc)

    def describe(self) -> str:
        name = self.label or "recurrence"
        return f"{name} coeffs={list(map(str, self.coeffs))} constant={self.constant}"


@dataclass
class SequenceWindow:
    """Consecutive terms of a recurrence starting at absolute index `start`."""

    recurrence: Recurrence
    start: int
    terms: List[Number] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[Number]:
        return iter(self.terms)

    def at(self, index: int) -> Number:
        """Term by absolute index."""
        offset = index - self.start
        if not 0 <= offset < len(self.terms):
            raise IndexError(f"index {index} outside window [{self.start}, {self.start + len(self.terms)})")
        return self.terms[offset]

    @property
    def stop(self) -> int:
        return self.start + len(self.terms)


def _backward(rec: Recurrence, down_to: int) -> List[Number]:
    """Terms for indices down_to .. base-1, oldest first."""
    if down_to >= rec.base:
        return []
    last = rec.coeffs[-1]
    if last == 0:
        raise ExtensionError(f"cannot extend {rec.label or 'recurrence'} backwards: trailing coefficient is 0")
    d = rec.depth
    block = deque(rec.initial_terms[:d])  # c_{j+1} .. c_{j+d}
    out: List[Number] = []
    for _ in range(rec.base - down_to):
        # c_{j+d} = sum_i x_i c_{j+d-i} + x0  =>  solve for c_j
        acc = block[-1] - rec.constant
        for i in range(1, d):
            acc -= rec.coeffs[i - 1] * block[-1 - i]
        value = _exact(Fraction(acc) / last)
        block.appendleft(value)
        block.pop()
        out.append(value)
    out.reverse()
    return out


def _forward(rec: Recurrence, upto: int) -> List[Number]:
    """Terms for indices base .. upto (inclusive)."""
    count = upto - rec.base + 1
    if count <= 0:
        return []
    values = list(rec.initial_terms[:count])
    if len(values) == count:
        return values
    tail = deque(values[-rec.depth:], maxlen=rec.depth)
    while len(values) < count:
        nxt = rec.step(tail)
        values.append(nxt)
        tail.append(nxt)
    return values


def window(rec: Recurrence, start: int, length: int) -> SequenceWindow:
    """Terms c_start .. c_{start+length-1} as a SequenceWindow."""
    if length < 0:
        raise DomainError(f"window length must be non-negative, got {length}")
    if length == 0:
        return SequenceWindow(rec, start, [])
    stop = start + length - 1
    values: List[Number] = []
    if start < rec.base:
        values.extend(_backward(rec, start)[:length])
    if stop >= rec.base:
        forward = _forward(rec, stop)
        values.extend(forward[max(0, start - rec.base):])
    return SequenceWindow(rec, start, values)


def term(rec: Recurrence, i: int) -> Number:
    """The i-th term; indices below the base use the backward extension."""
    return window(rec, i, 1).terms[0]


def terms(rec: Recurrence, start: int, length: int) -> List[Number]:
    return window(rec, start, length).terms


# ---------------------------------------------------------------------------
# Named families
# ---------------------------------------------------------------------------

def fibonacci() -> Recurrence:
    return Recurrence((1, 1), 0, (0, 1), 0, "fibonacci")


def tribonacci() -> Recurrence:
    return Recurrence((1, 1, 1), 0, (0, 1, 1), 0, "tribonacci")


def pell() -> Recurrence:
    return Recurrence((2, 1), 0, (0, 1), 0, "pell")


def balancing_rec() -> Recurrence:
    """Balancing numbers B_1 = 6, B_2 = 35, with B_0 = 1 (so B_{-1} = 0)."""
    return Recurrence((6, -1), 0, (1, 6, 35), 0, "balancing")


def _cobalancing_multiplier(a: int, b: int) -> int:
    if a <= 0 or b <= 0 or gcd(a, b) != 1:
        raise CoprimalityError(f"({a},{b}) is not a pair of coprime positive integers")
    if (2 * b) % a:
        raise UnsupportedCoefficientError(f"a={a} does not divide 2b={2 * b}")
    return 2 * b // a


def cobalancing_rec(a: int, b: int) -> Recurrence:
    """
    (a,b) cobalancing numbers for a | 2b: with m = 2b/a,
    c_n = (2m+2) c_{n-1} - c_{n-2} + m, c_0 = 0, c_1 = m, c_2 = 2m^2 + 3m.
    """
    m = _cobalancing_multiplier(a, b)
    return Recurrence((2 * m + 2, -1), m, (0, m, 2 * m * m + 3 * m), 0, f"cobalancing({a},{b})")


def cobalancer_rec(a: int, b: int) -> Recurrence:
    """(a,b) cobalancers: r_n = (2m+2) r_{n-1} - r_{n-2}, r_0 = 0, r_1 = 1, r_2 = 2m+2."""
    m = _cobalancing_multiplier(a, b)
    return Recurrence((2 * m + 2, -1), 0, (0, 1, 2 * m + 2), 0, f"cobalancer({a},{b})")


def generalized_tribonacci(p: Number, q: Number, r: Number,
                           x: Number, y: Number, z: Number) -> Recurrence:
    """G_0 = p, G_1 = q, G_2 = r, G_n = x G_{n-1} + y G_{n-2} + z G_{n-3}."""
    return Recurrence((x, y, z), 0, (p, q, r), 0, f"generalized_tribonacci({p},{q},{r};{x},{y},{z})")


def partial_sum_rec(rec: Recurrence) -> Recurrence:
    """
    Recurrence of S_N = c_base + ... + c_N, with S_{base-1} = 0.

    For c_n = sum x_i c_{n-i} + x0 the sums satisfy the depth-(d+1) recurrence
    S_N = (1+x_1) S_{N-1} + sum_{i=2..d} (x_i - x_{i-1}) S_{N-i} - x_d S_{N-d-1} + x0.
    """
    x = rec.coeffs
    coeffs = [1 + x[0]]
    coeffs.extend(x[i] - x[i - 1] for i in range(1, rec.depth))
    coeffs.append(-x[-1])
    sums = [0]
    for t in rec.initial_terms:
        sums.append(_exact(sums[-1] + t))
    return Recurrence(tuple(coeffs), rec.constant, tuple(sums), rec.base - 1,
                      f"partial_sums({rec.label or 'recurrence'})")


def homogenize(rec: Recurrence) -> Tuple[Number, Recurrence]:
    """
    Shift a recurrence with constant term by its fixed point p = x0 / (1 - sum x_i).

    Returns (p, H) where H is homogeneous and term(H, n) == term(rec, n) - p.
    """
    total = sum(rec.coeffs)
    if total == 1:
        raise ShapeError("coefficients sum to 1: no fixed point to shift by")
    p = _exact(Fraction(rec.constant) / (1 - total))
    shifted = tuple(_exact(t - p) for t in rec.initial_terms)
    return p, Recurrence(rec.coeffs, 0, shifted, rec.base, f"homogeneous({rec.label or 'recurrence'})")
