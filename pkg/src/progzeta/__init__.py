"""Accelerated periodic Dirichlet series for the Riemann zeta function.

The package generates exact divisor-filter coefficients and periodic series
weights, evaluates the resulting weighted series in the extended half-plane
Re(s) > 2 - d(m), models the truncation error, and validates everything
against an independent reference evaluator.
"""

from .exceptions import (
    ConvergenceWarning,
    DenominatorNearZero,
    DomainError,
    EtaDenominatorNearZero,
    EvaluationError,
    GridExhausted,
    MethodNotApplicable,
    PrecisionError,
    PrecisionWarning,
    ProgzetaError,
    ProgzetaWarning,
)
from .weights import (
    FilterCoefficients,
    ProgressionModulus,
    SeriesWeights,
    coefficient_set,
    derive_weights,
    divisors,
    eta_baseline,
    load_fixture,
    solve_filter,
)

__version__ = "0.1.0"

__all__ = [
    "ConvergenceWarning",
    "DenominatorNearZero",
    "DomainError",
    "EtaDenominatorNearZero",
    "EvaluationError",
    "GridExhausted",
    "MethodNotApplicable",
    "PrecisionError",
    "PrecisionWarning",
    "ProgzetaError",
    "ProgzetaWarning",
    "FilterCoefficients",
    "ProgressionModulus",
    "SeriesWeights",
    "coefficient_set",
    "derive_weights",
    "divisors",
    "eta_baseline",
    "load_fixture",
    "solve_filter",
    "__version__",
]
