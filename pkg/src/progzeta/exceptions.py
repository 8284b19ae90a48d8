"""Exception and warning types shared across the package."""

from __future__ import annotations

__all__ = [
    "ProgzetaError",
    "MethodNotApplicable",
    "DomainError",
    "DenominatorNearZero",
    "EtaDenominatorNearZero",
    "PrecisionError",
    "EvaluationError",
    "GridExhausted",
    "ProgzetaWarning",
    "ConvergenceWarning",
    "PrecisionWarning",
]


class ProgzetaError(Exception):
    """Base class for all package errors."""


class MethodNotApplicable(ProgzetaError):
    """The divisor-filter construction needs d(m) >= 4; this m has fewer divisors."""


class DomainError(ProgzetaError):
    """Evaluation point lies outside the proven half-plane of convergence."""


class DenominatorNearZero(ProgzetaError):
    """The divisor polynomial is too close to zero to divide by safely."""


class EtaDenominatorNearZero(ProgzetaError):
    """The alternating-series compensation factor 1 - 2^(1-s) is too close to zero."""


class PrecisionError(ProgzetaError):
    """binary64 arithmetic cannot honor the requested accuracy."""


class EvaluationError(ProgzetaError):
    """A series term overflowed or produced a non-finite value.

    Attributes carry the offending outer index ``n`` and inner index ``k``.
    """

    def __init__(self, message: str, n: int | None = None, k: int | None = None):
        super().__init__(message)
        self.n = n
        self.k = k


class GridExhausted(ProgzetaError):
    """A minimum-N scan ran off the end of its grid without hitting the target.

    ``last_n`` and ``last_error`` record the final grid point examined.
    """

    def __init__(self, message: str, last_n: int | None = None, last_error: float | None = None):
        super().__init__(message)
        self.last_n = last_n
        self.last_error = last_error


class ProgzetaWarning(UserWarning):
    """Base class for package warnings."""


class ConvergenceWarning(ProgzetaWarning):
    """Evaluation requested outside the region where convergence is proven."""


class PrecisionWarning(ProgzetaWarning):
    """Result may carry more rounding error than the documented budget."""
