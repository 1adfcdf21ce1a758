"""
Recurrence Detection
Recovers exact linear recurrences (optionally with a constant term) from a
finite list of terms: solve on one block of equations, cross-validate on the
rest, report "absent" rather than guess.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from exceptions import ArityError

logger = logging.getLogger(__name__)

TABLE_FORM_LAGS = 5


@dataclass(frozen=True)
class DetectionResult:
    """Exact recurrence found in a term list."""

    coeffs: Tuple[Fraction, ...]
    constant: Optional[Fraction]
    verified_terms: int
    form: str = "fixed"

    @property
    def depth(self) -> int:
        return len(self.coeffs)

    @property
    def has_constant(self) -> bool:
        return self.constant is not None


def _solve_exact(rows: List[List[Fraction]], rhs: List[Fraction]) -> Optional[List[Fraction]]:
    """Gauss-Jordan elimination over the rationals. None when the system is singular."""
    n = len(rows)
    aug = [list(row) + [b] for row, b in zip(rows, rhs)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            return None
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [v - factor * p for v, p in zip(aug[r], aug[col])]
    return [aug[r][n] for r in range(n)]


def _equation(terms: Sequence[Fraction], n: int, depth: int, with_constant: bool) -> List[Fraction]:
    row = [terms[n - i] for i in range(1, depth + 1)]
    if with_constant:
        row.append(Fraction(1))
    return row


def _residual_free(terms: Sequence[Fraction], n: int, coeffs: Sequence[Fraction], constant: Fraction) -> bool:
    value = constant + sum(x * terms[n - i] for i, x in enumerate(coeffs, start=1))
    return value == terms[n]


def detect_fixed(terms: Sequence, depth: int, with_constant: bool = False) -> Optional[DetectionResult]:
    """
    Find the unique depth-`depth` recurrence (with a constant term if asked) fitting `terms`.

    The first depth + k terms (k unknowns) determine the system; every later
    term is held out for validation. Fewer than 2k terms is an ArityError; a
    singular system or a disagreeing held-out term returns None. A constant
    that solves to zero is reported as absent.
    """
    if depth < 1:
        raise ArityError(f"depth must be at least 1, got {depth}")
    values = [Fraction(t) for t in terms]
    unknowns = depth + (1 if with_constant else 0)
    if len(values) < 2 * unknowns:
        raise ArityError(f"need {2 * unknowns} terms for {unknowns} unknowns, got {len(values)}")

    solve_rows = range(depth, depth + unknowns)
    rows = [_equation(values, n, depth, with_constant) for n in solve_rows]
    solution = _solve_exact(rows, [values[n] for n in solve_rows])
    if solution is None:
        logger.debug("🔍 depth %d%s: singular system", depth, " +const" if with_constant else "")
        return None

    coeffs = tuple(solution[:depth])
    constant = solution[depth] if with_constant else Fraction(0)
    for n in range(depth + unknowns, len(values)):
        if not _residual_free(values, n, coeffs, constant):
            logger.debug("🔍 depth %d%s: held-out term %d disagrees", depth,
                         " +const" if with_constant else "", n)
            return None

    return DetectionResult(coeffs, constant if constant != 0 else None,
                           len(values) - depth - unknowns, "fixed")


def detect_minimal(terms: Sequence, max_depth: int, allow_constant: bool = True) -> Optional[DetectionResult]:
    """
    Shallowest recurrence fitting `terms`, trying depth 1..max_depth, homogeneous before
    constant at each depth. A depth is only tried when at least one term is held out
    beyond the solve block.
    """
    if len(terms) < 4:
        return None
    for depth in range(1, max_depth + 1):
        for with_constant in ((False, True) if allow_constant else (False,)):
            unknowns = depth + (1 if with_constant else 0)
            if len(terms) < 2 * unknowns or len(terms) - depth - unknowns < 1:
                continue
            found = detect_fixed(terms, depth, with_constant)
            if found is not None:
                return DetectionResult(found.coeffs, found.constant, found.verified_terms, "minimal")
    return None


def detect_table_form(terms: Sequence) -> Optional[DetectionResult]:
    """
    Fit the depth-five family c_n = c_{n-1} + K c_{n-2} - K c_{n-3} - c_{n-4} + c_{n-5}.

    One unknown, so seven terms give a solve and one held-out check. Sequences
    with a shallower recurrence still land on a unique K here, which is why this
    recovers tuples the unconstrained depth-five solve reports as singular.
    """
    values = [Fraction(t) for t in terms]
    lags = TABLE_FORM_LAGS
    if len(values) < lags + 2:
        return None

    k_value = None
    for n in range(lags, len(values)):
        gap = values[n - 2] - values[n - 3]
        if gap != 0:
            k_value = (values[n] - values[n - 1] + values[n - 4] - values[n - 5]) / gap
            break
    if k_value is None:
        return None

    coeffs = (Fraction(1), k_value, -k_value, Fraction(-1), Fraction(1))
    for n in range(lags, len(values)):
        if not _residual_free(values, n, coeffs, Fraction(0)):
            return None
    return DetectionResult(coeffs, None, len(values) - lags - 1, "table")


def _render(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def render_tuple(result: DetectionResult) -> str:
    """Tabular rendering: '(6, -1)' or '(6, -1, _2)' with the constant after an underscore."""
    parts = [_render(c) for c in result.coeffs]
    if result.constant is not None:
        parts.append("_" + _render(result.constant))
    return "(" + ", ".join(parts) + ")"


def parse_tuple(text: str) -> Tuple[Tuple[Fraction, ...], Optional[Fraction]]:
    """Inverse of render_tuple."""
    body = text.strip().strip("()")
    coeffs: List[Fraction] = []
    constant = None
    for part in body.split(","):
        part = part.strip()
        if part.startswith("_"):
            constant = Fraction(part[1:])
        elif part:
            coeffs.append(Fraction(part))
    return tuple(coeffs), constant
