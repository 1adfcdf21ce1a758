"""
Certified Reciprocal Sums
Exact enclosures of infinite reciprocal series of recurrence sequences and the
floor / nearest integer of their inverses, decided only when the whole
enclosure agrees. Each closed-form claim about such sums has a check function
returning a TheoremReport.
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

from exactnum import (BINET, TRIBONACCI_BRACKET, TRIBONACCI_POLY, RatInterval,
                      rat_str, real_root_enclosure)
from exceptions import BudgetError, CertificationError, DomainError, ShapeError
from sequences import (Number, Recurrence, balancing_rec, fibonacci, partial_sum_rec,
                       term, tribonacci, window)

logger = logging.getLogger(__name__)

DEFAULT_INITIAL_TERMS = 16
DEFAULT_BUDGET_CAP = 4096

# ratio bounds are rounded outward to this grid to keep the certificate arithmetic small
RATIO_GRID = 2 ** 32
WIDENINGS = (Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(1), Fraction(2), Fraction(4), Fraction(8))


class Sign(str, Enum):
    PLAIN = "plain"
    ALTERNATING = "alternating"


class Denominator(str, Enum):
    TERM = "term"
    PARTIAL_SUM = "partial_sum"


class Mode(str, Enum):
    FLOOR = "floor"
    NEAREST = "nearest"


@dataclass(frozen=True)
class SumSpec:
    """
    leading_sign * sum_{j>=0} s_j / d_{start + stride*j}

    where s_j = 1 (plain) or (-1)^j (alternating) and d is the sequence itself
    or its partial sums d_N = c_base + ... + c_N.
    """

    sequence: Recurrence
    start: int
    stride: int = 1
    sign: Sign = Sign.PLAIN
    denominator: Denominator = Denominator.TERM
    leading_sign: int = 1

    def __post_init__(self):
        if self.stride < 1:
            raise DomainError(f"stride must be positive, got {self.stride}")
        if self.leading_sign not in (1, -1):
            raise DomainError("leading_sign must be +1 or -1")

    def source(self) -> Recurrence:
        if self.denominator == Denominator.PARTIAL_SUM:
            return partial_sum_rec(self.sequence)
        return self.sequence


@dataclass(frozen=True)
class TailCertificate:
    """Proof that the omitted tail is bounded by `bound` in absolute value."""

    kind: str
    first_omitted: int
    bound: Fraction
    g: Optional[Fraction] = None
    h: Optional[Fraction] = None


@dataclass
class SumVerdict:
    enclosure: RatInterval
    inverse: Optional[RatInterval]
    terms_used: int
    certificate: TailCertificate
    mode: Optional[Mode] = None
    answer: Optional[int] = None


# ---------------------------------------------------------------------------
# Tail certificates
# ---------------------------------------------------------------------------

def _round_down(x: Fraction) -> Fraction:
    return Fraction(math.floor(x * RATIO_GRID), RATIO_GRID)


def _round_up(x: Fraction) -> Fraction:
    return Fraction(math.ceil(x * RATIO_GRID), RATIO_GRID)


def _ratio_image(rec: Recurrence, g: Fraction, h: Fraction, first_value: Number) -> RatInterval:
    """Enclosure of c_{k+1}/c_k given every earlier ratio lies in [g, h] and c_k >= first_value."""
    image = RatInterval.point(0)
    for i, x in enumerate(rec.coeffs, start=1):
        # c_{k+1-i} / c_k lies in [h^-(i-1), g^-(i-1)]
        image = image + RatInterval(1 / h ** (i - 1), 1 / g ** (i - 1)) * x
    if rec.constant:
        image = image + RatInterval(Fraction(0), Fraction(1, 1) / first_value) * rec.constant
    return image


def _geometric_certificate(rec: Recurrence, values: Dict[int, Number], first_omitted: int,
                           ratio_from: int) -> Optional[Tuple[Fraction, Fraction]]:
    """
    Find [g, h] with g > 1 such that every ratio c_{k+1}/c_k for k in the window lies
    in [g, h] and the recurrence maps [g, h]-ratios back into [g, h]; by induction
    c_{k+1} >= g c_k for every k >= first_omitted.
    """
    if first_omitted - ratio_from < max(1, rec.depth - 1):
        return None
    ratios = [Fraction(values[k + 1]) / values[k] for k in range(ratio_from, first_omitted)]
    lo, hi = min(ratios), max(ratios)
    if lo <= 1:
        return None
    g0, h0 = _round_down(lo), _round_up(hi)
    spread = max(h0 - g0, Fraction(1, RATIO_GRID))
    for widen in WIDENINGS:
        g, h = g0 - spread * widen, h0 + spread * widen
        if g <= 1:
            break
        image = _ratio_image(rec, g, h, values[first_omitted])
        if g <= image.lo and image.hi <= h:
            return g, h
    return None


def _linear_growth_step(rec: Recurrence) -> Optional[Number]:
    """
    t when c_k - c_{k-1} >= k t is known for every k: depth two, c_0 = 0, c_1 = t > 0, and
    either c_n = q c_{n-1} - c_{n-2} + t with q >= 2, or c_n = q c_{n-1} + r c_{n-2} with
    q >= 3, -1 <= r < 0 or q >= 2, r >= 0.
    """
    if rec.depth != 2 or rec.base > 0:
        return None
    q, r = rec.coeffs
    c0, c1 = term(rec, 0), term(rec, 1)
    if c0 != 0 or c1 <= 0:
        return None
    if rec.constant:
        return c1 if (r == -1 and q >= 2 and rec.constant == c1) else None
    if (q >= 3 and -1 <= r < 0) or (q >= 2 and r >= 0):
        return c1
    return None


def _certify(rec: Recurrence, values: Dict[int, Number], first_omitted: int,
             ratio_from: int, stride: int) -> TailCertificate:
    """Bound on sum_{i>=0} 1/c_{first_omitted + stride*i}."""
    first_value = values[first_omitted]
    geometric = _geometric_certificate(rec, values, first_omitted, ratio_from)
    if geometric is not None:
        g, h = geometric
        g_m = g ** stride
        bound = Fraction(1, 1) / first_value * g_m / (g_m - 1)
        return TailCertificate("geometric", first_omitted, bound, g, h)

    t = _linear_growth_step(rec)
    if t is not None and first_omitted >= 1:
        # c_k >= t k(k+1)/2, so the tail is at most sum_{k>=N} 2/(t k(k+1)) = 2/(t N)
        ks = range(max(1, ratio_from), first_omitted + 1)
        if all(values[k] - values[k - 1] >= k * t for k in ks if k - 1 in values):
            bound = Fraction(2, 1) / (Fraction(t) * first_omitted)
            return TailCertificate("linear", first_omitted, bound)

    raise CertificationError(
        f"no tail certificate for {rec.label or 'recurrence'} beyond index {first_omitted}")


# ---------------------------------------------------------------------------
# Enclosures
# ---------------------------------------------------------------------------

def _series_values(spec: SumSpec, count: int) -> Tuple[Recurrence, Dict[int, Number], int, int]:
    rec = spec.source()
    first_omitted = spec.start + spec.stride * count
    span = max(rec.depth, spec.stride, -(-count // 2))
    ratio_from = max(spec.start, first_omitted - span)
    lo = min(spec.start, ratio_from)
    win = window(rec, lo, first_omitted - lo + spec.stride + 1)
    values = {lo + i: v for i, v in enumerate(win.terms)}
    return rec, values, first_omitted, ratio_from


def _enclose(spec: SumSpec, count: int) -> Tuple[RatInterval, TailCertificate]:
    if count < 1:
        raise DomainError("term count must be positive")
    rec, values, first_omitted, ratio_from = _series_values(spec, count)
    indices = [spec.start + spec.stride * j for j in range(count)]
    for idx in indices + [first_omitted]:
        if values[idx] <= 0:
            raise DomainError(f"term {idx} of {rec.label or 'recurrence'} is {values[idx]}, not positive")
    for idx in range(ratio_from, first_omitted + 1):
        if values[idx] <= 0:
            raise CertificationError(f"term {idx} of {rec.label or 'recurrence'} is not positive")

    partial = Fraction(0)
    for j, idx in enumerate(indices):
        if spec.sign == Sign.ALTERNATING and j % 2:
            partial -= Fraction(1, 1) / values[idx]
        else:
            partial += Fraction(1, 1) / values[idx]

    cert = _certify(rec, values, first_omitted, ratio_from, spec.stride)
    if spec.sign == Sign.PLAIN:
        enclosure = RatInterval(partial, partial + cert.bound)
    else:
        # denominators increase from first_omitted on, so the tail is bounded by its first term
        first = Fraction(1, 1) / values[first_omitted]
        if count % 2 == 0:
            enclosure = RatInterval(partial, partial + first)
        else:
            enclosure = RatInterval(partial - first, partial)
    if spec.leading_sign == -1:
        enclosure = -enclosure
    return enclosure, cert


def certified_sum(spec: SumSpec, terms_budget: int = DEFAULT_INITIAL_TERMS) -> RatInterval:
    """Enclosure of the full infinite sum using `terms_budget` exact terms plus a proven tail bound."""
    return _enclose(spec, terms_budget)[0]


def _decide(inverse: Optional[RatInterval], mode: Mode) -> Optional[int]:
    if inverse is None:
        return None
    if mode == Mode.FLOOR:
        return inverse.floor_value()
    return inverse.nearest_value()


def inverse_answer(spec: SumSpec, mode: Mode, initial_terms: int = DEFAULT_INITIAL_TERMS,
                   budget_cap: int = DEFAULT_BUDGET_CAP) -> SumVerdict:
    """
    Floor or nearest integer of 1 / (infinite sum), doubling the term count until
    the inverse enclosure pins a single integer. Raises BudgetError past budget_cap.
    """
    mode = Mode(mode)
    count = initial_terms
    last = None
    while count <= budget_cap:
        enclosure, cert = _enclose(spec, count)
        inverse = None if enclosure.contains(0) else enclosure.reciprocal()
        answer = _decide(inverse, mode)
        last = SumVerdict(enclosure, inverse, count, cert, mode, answer)
        if answer is not None:
            logger.debug("✅ %s %s decided with %d terms", spec.sequence.label, mode.value, count)
            return last
        count *= 2
    width = rat_str(last.enclosure.width) if last else "n/a"
    raise BudgetError(f"{mode.value} of inverse sum undecided after {budget_cap} terms (width {width})")


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------

def _jsonable(value: Any) -> Any:
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, (int, Fraction)):
        return rat_str(value)
    if isinstance(value, RatInterval):
        return list(value.as_strings())
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


@dataclass
class TheoremReport:
    """
    Outcome of one closed-form check.

    status: pass | fail | vacuous (hypotheses fail) | undecidable (budget) |
    undefined (the claim's own branch condition is undefined)
    """

    check: str
    params: Dict[str, Any]
    expected: Optional[Number]
    answer: Optional[int]
    status: str
    hypotheses: Dict[str, bool] = field(default_factory=dict)
    inverse: Optional[RatInterval] = None
    terms_used: int = 0
    extra: Dict[str, Any] = field(default_factory=dict)
    notes: List[str] = field(default_factory=list)

    @property
    def match(self) -> bool:
        return self.answer is not None and self.expected is not None and self.answer == self.expected

    def to_dict(self) -> Dict[str, Any]:
        return {
            "check": self.check,
            "params": _jsonable(self.params),
            "expected": _jsonable(self.expected),
            "answer": _jsonable(self.answer),
            "status": self.status,
            "match": self.match,
            "hypotheses": _jsonable(self.hypotheses),
            "inverse_enclosure": _jsonable(self.inverse),
            "terms_used": self.terms_used,
            "extra": _jsonable(self.extra),
            "notes": list(self.notes),
        }


def _try_verdict(spec: SumSpec, mode: Mode, notes: List[str], **budget) -> Optional[SumVerdict]:
    try:
        return inverse_answer(spec, mode, **budget)
    except BudgetError as e:
        notes.append(str(e))
        logger.warning("⚠️  %s", e)
        return None


def _report(check: str, params: Dict[str, Any], expected: Optional[Number],
            verdict: Optional[SumVerdict], hypotheses: Dict[str, bool],
            notes: List[str]) -> TheoremReport:
    answer = verdict.answer if verdict else None
    if answer is None:
        status = "undecidable"
    elif not all(hypotheses.values()):
        status = "vacuous"
        if answer == expected:
            notes.append("vacuous-but-matching")
    else:
        status = "pass" if answer == expected else "fail"
    return TheoremReport(check, params, expected, answer, status, hypotheses,
                         verdict.inverse if verdict else None,
                         verdict.terms_used if verdict else 0, {}, notes)


def check_fibonacci_floor(n: int, **budget) -> TheoremReport:
    """floor((sum_{k>=n} 1/F_k)^-1) is F_{n-2} for even n and F_{n-2} - 1 for odd n."""
    if n < 1:
        raise DomainError("n must be at least 1")
    fib = fibonacci()
    expected = term(fib, n - 2) - (n % 2)
    notes: List[str] = []
    verdict = _try_verdict(SumSpec(fib, n), Mode.FLOOR, notes, **budget)
    return _report("eq1.1", {"n": n}, expected, verdict, {}, notes)


def check_balancing_floor(n: int, **budget) -> TheoremReport:
    """floor((sum_{k>=n} 1/B_k)^-1) = B_n - B_{n-1} - 1."""
    if n < 1:
        raise DomainError("n must be at least 1")
    bal = balancing_rec()
    expected = term(bal, n) - term(bal, n - 1) - 1
    notes: List[str] = []
    verdict = _try_verdict(SumSpec(bal, n), Mode.FLOOR, notes, **budget)
    return _report("eq1.5", {"n": n}, expected, verdict, {}, notes)


def check_constant_term_floor(rec: Recurrence, n: int, **budget) -> TheoremReport:
    """
    c_{k+1} = q c_k - c_{k-1} + s, c_0 = 0, c_1 = s: for q >= 2, s > 1/2 and
    (q - s) c_n - 2 c_{n-1} + s - 1 >= 0 the floor is c_n - c_{n-1} - 1.
    """
    if rec.depth != 2 or rec.coeffs[1] != -1:
        raise ShapeError("expected c_{k+1} = q c_k - c_{k-1} + s")
    s = rec.constant
    if term(rec, 0) != 0 or term(rec, 1) != s:
        raise ShapeError("expected c_0 = 0 and c_1 = s")
    if n < 1:
        raise DomainError("n must be at least 1")
    q = rec.coeffs[0]
    c_n, c_prev = term(rec, n), term(rec, n - 1)
    hypotheses = {
        "q >= 2": q >= 2,
        "s > 1/2": s > Fraction(1, 2),
        "(q-s)c_n - 2c_{n-1} + s - 1 >= 0": (q - s) * c_n - 2 * c_prev + s - 1 >= 0,
    }
    notes: List[str] = []
    verdict = _try_verdict(SumSpec(rec, n), Mode.FLOOR, notes, **budget)
    params = {"sequence": rec.label, "q": q, "s": s, "n": n}
    return _report("thm1.4", params, c_n - c_prev - 1, verdict, hypotheses, notes)


def check_homogeneous_floor(rec: Recurrence, n: int, **budget) -> TheoremReport:
    """
    c_{k+1} = q c_k + r c_{k-1}, c_0 = 0, c_1 = t > 0.

    Case 1 (q >= 3, -1 <= r < 0): floor = c_n - c_{n-1} - 1 when
    t^2 (-r)^{n-1} <= c_{n+1} - c_{n-1} - 1.
    Case 2 (q >= 2, r >= 0): odd n as case 1; even n gives c_n - c_{n-1} when
    t^2 (-r)^{n-1} > -c_{n+1} + c_{n-1} - 1.
    """
    if rec.depth != 2 or rec.constant != 0:
        raise ShapeError("expected homogeneous c_{k+1} = q c_k + r c_{k-1}")
    q, r = rec.coeffs
    if q < 2:
        raise ShapeError(f"q must be at least 2, got {q}")
    if r < 0 and not (q >= 3 and r >= -1):
        raise ShapeError(f"(q, r) = ({q}, {r}) is in neither case: r < 0 needs q >= 3 and r >= -1")
    t = term(rec, 1)
    if term(rec, 0) != 0 or t <= 0:
        raise ShapeError("expected c_0 = 0 and c_1 = t > 0")
    if n < 1:
        raise DomainError("n must be at least 1")

    c_n, c_prev, c_next = term(rec, n), term(rec, n - 1), term(rec, n + 1)
    weight = t * t * Fraction(-r) ** (n - 1)
    case = 2 if r >= 0 else 1

    if case == 2 and n % 2 == 0:
        side = weight > -c_next + c_prev - 1
        expected = c_n - c_prev
    else:
        side = weight <= c_next - c_prev - 1
        expected = c_n - c_prev - 1

    hypotheses = {"side condition": side}
    notes: List[str] = []
    verdict = _try_verdict(SumSpec(rec, n), Mode.FLOOR, notes, **budget)
    params = {"sequence": rec.label, "q": q, "r": r, "t": t, "n": n, "case": case}
    return _report("thm1.5", params, expected, verdict, hypotheses, notes)


def check_tribonacci_floor(n: int, **budget) -> TheoremReport:
    """
    floor((sum_{k>=n} 1/T_k)^-1) is T_n - T_{n-1} when T_{-(n+1)} < 0 and
    T_n - T_{n-1} - 1 when T_{-(n+1)} > 0; undefined when T_{-(n+1)} = 0.
    """
    if n < 1:
        raise DomainError("n must be at least 1")
    trib = tribonacci()
    base = term(trib, n) - term(trib, n - 1)
    branch = term(trib, -(n + 1))
    notes: List[str] = []
    verdict = _try_verdict(SumSpec(trib, n), Mode.FLOOR, notes, **budget)
    if branch == 0:
        answer = verdict.answer if verdict else None
        notes.append(f"T_-{n + 1} = 0; candidates {base} and {base - 1}")
        report = TheoremReport("eq1.2", {"n": n}, None, answer, "undefined", {},
                               verdict.inverse if verdict else None,
                               verdict.terms_used if verdict else 0, {}, notes)
    else:
        expected = base if branch < 0 else base - 1
        report = _report("eq1.2", {"n": n}, expected, verdict, {}, notes)
    report.extra["T_-(n+1)"] = branch
    return report


def _correction_enclosure(n: int, k: int, count: int) -> RatInterval:
    """
    Enclose C = sum_{p>=0} (T_j^2 - T_{j+k} T_{j-k}) / (T_j (T_j - T_{j-k}) (T_{j+k} - T_j)),
    j = n + kp. With ratios in [g, h] beyond the window each tail term is at most
    h^{2k} / ((1 - g^-k)(g^k - 1)) times 1/T_j.
    """
    trib = tribonacci()
    spec = SumSpec(trib, n, k)
    rec, values, first_omitted, ratio_from = _series_values(spec, count)
    lo_needed = n - k
    values.update({i: term(trib, i) for i in range(lo_needed, min(values))})
    geometric = _geometric_certificate(rec, values, first_omitted, ratio_from)
    if geometric is None or first_omitted - ratio_from < k:
        raise CertificationError(f"no growth certificate for the correction series at n={n}, k={k}")
    g, h = geometric

    partial = Fraction(0)
    for p in range(count):
        j = n + k * p
        tj, up, down = values[j], values[j + k], values[j - k]
        denom = tj * (tj - down) * (up - tj)
        if denom <= 0:
            raise DomainError(f"correction term at j={j} has non-positive denominator")
        partial += Fraction(tj * tj - up * down, denom)

    g_k, h_k = g ** k, h ** k
    factor = h_k * h_k / ((1 - 1 / g_k) * (g_k - 1))
    tail = factor * Fraction(1, 1) / values[first_omitted] * g_k / (g_k - 1)
    return RatInterval(partial - tail, partial + tail)


def check_every_mth(n: int, m: int, mode: Mode = Mode.NEAREST, initial_terms: int = DEFAULT_INITIAL_TERMS,
                    budget_cap: int = DEFAULT_BUDGET_CAP) -> TheoremReport:
    """
    sum_{k>=0} 1/T_{n+mk}.

    nearest: the nearest integer of the inverse is T_n - T_{n-m}.
    floor: T_n - T_{n-m} when the correction series is negative, one less when positive.
    """
    mode = Mode(mode)
    if not 1 <= m <= n:
        raise DomainError(f"need 1 <= m <= n, got n={n}, m={m}")
    trib = tribonacci()
    target = term(trib, n) - term(trib, n - m)
    notes: List[str] = []
    budget = {"initial_terms": initial_terms, "budget_cap": budget_cap}
    spec = SumSpec(trib, n, m)
    params = {"n": n, "m": m, "mode": mode}

    if mode == Mode.NEAREST:
        verdict = _try_verdict(spec, Mode.NEAREST, notes, **budget)
        return _report("thm1.6", params, target, verdict, {}, notes)

    if target == 0:
        verdict = _try_verdict(spec, Mode.FLOOR, notes, **budget)
        notes.append(f"T_{n} - T_{n - m} = 0; the correction series is undefined")
        return TheoremReport("thm3.11", params, None, verdict.answer if verdict else None, "undefined",
                             {}, verdict.inverse if verdict else None,
                             verdict.terms_used if verdict else 0, {}, notes)

    count, sign, correction = initial_terms, None, None
    while count <= budget_cap:
        correction = _correction_enclosure(n, m, count)
        sign = correction.sign()
        if sign in (1, -1):
            break
        count *= 2
    verdict = _try_verdict(spec, Mode.FLOOR, notes, **budget)
    if sign not in (1, -1):
        notes.append("sign of the correction series undecided")
        report = _report("thm3.11", params, None, None, {}, notes)
    else:
        expected = target if sign < 0 else target - 1
        report = _report("thm3.11", params, expected, verdict, {}, notes)
    if correction is not None:
        report.extra["correction_enclosure"] = correction
        report.extra["correction_sign"] = sign
        if verdict is not None:
            # identity: 1/(T_n - T_{n-m}) = S - C
            identity = verdict.enclosure - correction
            report.extra["identity_consistent"] = identity.contains(Fraction(1, target))
    return report


def check_alternating(n: int, m: int, j: int, **budget) -> TheoremReport:
    """nearest((sum_{k>=n} (-1)^k / T_{km-j})^-1) = (-1)^n (T_{mn-j} + T_{mn-j-m}), 0 <= j < m."""
    if m < 1 or not 0 <= j < m:
        raise DomainError(f"need m >= 1 and 0 <= j < m, got m={m}, j={j}")
    start = n * m - j
    if start < 1:
        raise DomainError(f"first index {start} must be positive")
    trib = tribonacci()
    sign = -1 if n % 2 else 1
    expected = sign * (term(trib, start) + term(trib, start - m))
    spec = SumSpec(trib, start, m, Sign.ALTERNATING, Denominator.TERM, sign)
    notes: List[str] = []
    verdict = _try_verdict(spec, Mode.NEAREST, notes, **budget)
    return _report("thm3.12", {"n": n, "m": m, "j": j}, expected, verdict, {}, notes)


def check_sum_of_sums(n: int, m: int, j: int = 0, **budget) -> TheoremReport:
    """
    nearest((sum_{k>=n} 1/(T_1 + ... + T_{mk-j}))^-1)
        = (T_{mn-j+2} + T_{mn-j} - T_{mn-j-m+2} - T_{mn-j-m}) / 2.
    """
    if m < 1 or not 0 <= j < m:
        raise DomainError(f"need m >= 1 and 0 <= j < m, got m={m}, j={j}")
    start = m * n - j
    if start < 1:
        raise DomainError(f"first index {start} must be positive")
    trib = tribonacci()
    expected = Fraction(term(trib, start + 2) + term(trib, start)
                        - term(trib, start - m + 2) - term(trib, start - m), 2)
    expected = expected.numerator if expected.denominator == 1 else expected
    spec = SumSpec(trib, start, m, Sign.PLAIN, Denominator.PARTIAL_SUM)
    notes: List[str] = []
    verdict = _try_verdict(spec, Mode.NEAREST, notes, **budget)
    report = _report("thm3.13", {"n": n, "m": m, "j": j}, expected, verdict, {}, notes)
    upto = start + m * (verdict.terms_used if verdict else 8)
    report.extra["closed_form_agrees"] = check_partial_sum_identity(upto)
    return report


def check_partial_sum_identity(n_max: int) -> bool:
    """T_1 + ... + T_N == (T_{N+2} + T_N - 1) / 2 for 0 <= N <= n_max."""
    trib = tribonacci()
    sums = window(partial_sum_rec(trib), 0, n_max + 1).terms
    values = window(trib, 0, n_max + 3).terms
    return all(2 * sums[N] == values[N + 2] + values[N] - 1 for N in range(n_max + 1))


def _cubic_root_case(x: Number, y: Number, z: Number) -> Tuple[str, bool]:
    """Root configuration of t^3 - x t^2 - y t - z and whether the non-dominant roots are inside the unit disc."""
    b, c, d = Fraction(-x), Fraction(-y), Fraction(-z)
    disc = 18 * b * c * d - 4 * b ** 3 * d + b * b * c * c - 4 * c ** 3 - 27 * d * d
    if disc == 0:
        if b * b == 3 * c:
            return "triple", True
        double = (9 * d - b * c) / (2 * (b * b - 3 * c))
        return "double", abs(double) < 1
    if disc > 0:
        return "three-real", False
    bound = 1 + max(abs(b), abs(c), abs(d))
    alpha = real_root_enclosure((1, b, c, d), (-bound, bound), Fraction(1, 2 ** 40))
    # |beta|^2 = |gamma|^2 = z / alpha
    if alpha.contains(0):
        return "complex", False
    modulus_sq = RatInterval.point(Fraction(z)) / alpha
    return "complex", modulus_sq.hi < 1


def check_generalized(rec: Recurrence, n: int, k: int, **budget) -> TheoremReport:
    """
    Nearest integer of (sum_{p>=0} 1/G_{n+kp})^-1 against G_n - G_{n-k}, with whether the
    inverse enclosure is consistent with exact equality.
    """
    if rec.depth != 3 or rec.constant != 0:
        raise ShapeError("expected a homogeneous depth-3 recurrence")
    if not 1 <= k <= n:
        raise DomainError(f"need 1 <= k <= n, got n={n}, k={k}")
    x, y, z = rec.coeffs
    case, inside = _cubic_root_case(x, y, z)
    claim = term(rec, n) - term(rec, n - k)
    notes: List[str] = []
    verdict = _try_verdict(SumSpec(rec, n, k), Mode.NEAREST, notes, **budget)
    report = _report("thm3.15", {"sequence": rec.label, "n": n, "k": k}, claim, verdict,
                     {f"root case {case}": inside}, notes)
    report.extra["root_case"] = case
    if verdict is not None:
        distance = verdict.inverse - claim
        report.extra["within_half"] = distance.magnitude() < Fraction(1, 2)
        report.extra["exact_equality_consistent"] = verdict.inverse.contains(claim)
    return report


def check_binet_bound(n_max: int, n_min: int = 1, max_refinements: int = 16) -> TheoremReport:
    """
    |T_n - c4 alpha^n| < a d^n for n_min <= n <= n_max, using the printed constants
    exactly and a certified enclosure of the Tribonacci constant alpha.
    """
    trib = tribonacci()
    values = window(trib, 0, n_max + 1).terms
    width = Fraction(1, 2 ** 64)
    alpha = real_root_enclosure(TRIBONACCI_POLY, TRIBONACCI_BRACKET, width)
    rows, failures, undecided = [], [], []
    for n in range(n_min, n_max + 1):
        bound = BINET.a * BINET.d ** n
        verdict = None
        for _ in range(max_refinements):
            deviation = values[n] - (alpha ** n) * BINET.c4
            upper = deviation.magnitude()
            lower = Fraction(0) if deviation.contains(0) else min(abs(deviation.lo), abs(deviation.hi))
            if upper < bound:
                verdict = True
                break
            if lower >= bound:
                verdict = False
                break
            width /= 2 ** 64
            alpha = real_root_enclosure(TRIBONACCI_POLY, TRIBONACCI_BRACKET, width)
        rows.append({"n": n, "holds": verdict, "T_n": values[n]})
        if verdict is False:
            failures.append(n)
        elif verdict is None:
            undecided.append(n)

    status = "fail" if failures else ("undecidable" if undecided else "pass")
    notes = [f"fails at n = {', '.join(map(str, failures))}"] if failures else []
    if failures:
        logger.warning("⚠️  Binet bound fails for %d of %d indices", len(failures), len(rows))
    return TheoremReport("lemma3.9", {"n_min": n_min, "n_max": n_max}, None, None, status, {},
                         None, 0, {"rows": rows, "failures": failures,
                                   "alpha_enclosure": alpha}, notes)
