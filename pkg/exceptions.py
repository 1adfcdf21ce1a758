"""
Exception hierarchy for balans.

Library code raises these; only cli.py turns them into exit codes.
"""


class BalansError(Exception):
    """Base class for every error raised by balans."""


class ConfigError(BalansError):
    """Configuration file exists but cannot be used."""


class DomainError(BalansError):
    """Argument outside the operation's mathematical domain (negative isqrt, zero term)."""


class TieError(BalansError):
    """Nearest integer requested for an exact half-integer."""


class BracketError(BalansError):
    """Polynomial does not change sign over the requested bracket."""


class ExtensionError(BalansError):
    """Backward extension needs to divide by a zero trailing coefficient."""


class UnsupportedCoefficientError(BalansError):
    """Coefficient pair outside the range where a closed form is known."""


class CoprimalityError(BalansError):
    """Coefficient pair (a, b) is not a pair of coprime positive integers."""


class ArityError(BalansError):
    """Recurrence given the wrong number of initial terms."""


class NotCobalancingError(BalansError):
    """Input to the successor map is not a cobalancing number of the pair."""


class CertificationError(BalansError):
    """No tail certificate applies to the sequence."""


class BudgetError(BalansError):
    """Term budget exhausted before the enclosure decided the answer."""


class ShapeError(BalansError):
    """Recurrence does not have the shape a theorem check requires."""
