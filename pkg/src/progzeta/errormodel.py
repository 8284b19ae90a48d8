"""Truncation-error machinery for the weighted progression series.

The tail of the series after N complete blocks is governed by the first
surviving Taylor term: the falling coefficient of order d(m), the exact
d(m)-th weight moment, and a closed-form integral tail. Two estimates are
assembled from those pieces: the general-position product ``predicted_error``
and its critical-line simplification ``critical_line_error``. Both are
order-of-magnitude models (the published comparisons use them for scaling
laws, not absolute bounds); the only rigorous statement here is
``rigorous_error_bound``, valid in the absolutely convergent region.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from .exceptions import GridExhausted, MethodNotApplicable
from .oracle import OracleResult
from .series import denominator_threshold, dirichlet_poly, eval_prefixes
from .weights import FilterCoefficients, SeriesWeights

__all__ = [
    "TailEstimate",
    "MinNResult",
    "falling_coefficient",
    "tail_bound",
    "leading_moment",
    "predicted_error",
    "critical_line_error",
    "predict_min_N",
    "empirical_min_N",
    "rigorous_error_bound",
]


@dataclass(frozen=True)
class TailEstimate:
    """Ingredients and value of the first-surviving-term error estimate."""

    tail_bound: float
    leading_moment: int
    falling_factor: complex
    predicted_error: float


@dataclass(frozen=True)
class MinNResult:
    """Outcome of a minimum-N grid scan."""

    min_n: Optional[int]
    error: Optional[float]
    status: str  # "ok" | "exhausted"
    last_n: int
    last_error: float
    value: Optional[complex] = None  # zeta estimate at min_n (or at last_n)


def falling_coefficient(order: int, s: complex) -> complex:
    """Taylor coefficient (-1)**order / order! * prod_{u<order} (s+u)."""
    if order < 0:
        raise ValueError("order must be >= 0")
    out = 1 + 0j
    for u in range(order):
        out *= -(s + u) / (u + 1)
    return out


def tail_bound(s: complex, N: int, m: int, d: int) -> float:
    """Integral bound on sum_{n>=N} (mn + m/2)**-(Re(s)+d).

    Equals 1 / (m * (Re(s)+d-1) * (m*N - m/2)**(Re(s)+d-1)); requires
    Re(s) + d > 1, outside which the tail diverges.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    expo = s.real + d - 1.0
    if expo <= 0:
        raise ValueError(f"tail bound requires Re(s) + d > 1, got Re(s)+d = {s.real + d}")
    return 1.0 / (m * expo * (m * N - m / 2.0) ** expo)


def leading_moment(sw: SeriesWeights) -> int:
    """Exact d(m)-th moment sum_k b_k k**d(m) of the weights."""
    d = sw.modulus.divisor_count
    return sum(w * (k + 1) ** d for k, w in enumerate(sw.b))


def _model_preconditions(fc: FilterCoefficients, sw: SeriesWeights) -> int:
    d = fc.modulus.divisor_count
    if sw.vanishing_order < d:
        raise MethodNotApplicable(
            f"error model needs vanishing order >= d(m) = {d}; "
            f"m={sw.modulus.m} weights have order {sw.vanishing_order}"
        )
    if sw.vanishing_order > d:
        # e.g. m = 16 or 36: the first-free-column filter kills extra
        # moments, so the d(m)-order leading term is identically zero and
        # this model's exponent is wrong for these weights
        raise MethodNotApplicable(
            f"m={sw.modulus.m} weights vanish to order {sw.vanishing_order} > d(m) = {d}; "
            "the d(m)-order error model is degenerate here"
        )
    return d


def predicted_error(
    fc: FilterCoefficients, sw: SeriesWeights, s: complex, N: int
) -> TailEstimate:
    """First-surviving-term estimate of |zeta estimate - zeta| after N blocks.

    tail_bound * |falling_coefficient(d(m), s)| * |moment| / |denominator|.
    """
    from .exceptions import DenominatorNearZero

    s = complex(s)
    d = _model_preconditions(fc, sw)
    m = fc.modulus.m
    t_bound = tail_bound(s, N, m, d)
    f_d = falling_coefficient(d, s)
    moment = leading_moment(sw)
    den = dirichlet_poly(fc, s)
    if abs(den) < denominator_threshold(fc):
        raise DenominatorNearZero(
            f"|denominator| = {abs(den):.3e} below threshold at s={s}"
        )
    value = t_bound * abs(f_d) * abs(moment) / abs(den)
    return TailEstimate(t_bound, moment, f_d, value)


def critical_line_error(fc: FilterCoefficients, sw: SeriesWeights, t: float, N: int) -> float:
    """Critical-line simplification of the error model at s = 1/2 + it.

    |s|**d / (m * (m*N)**(d-1/2) * d!) * |moment| / |denominator|, with
    |s| = sqrt(1/4 + t**2). Documented applicability: |s| well above m.
    Relative to ``predicted_error`` this drops the (d-1/2) tail prefactor,
    so the two agree up to that constant, not absolutely.
    """
    from .exceptions import DenominatorNearZero

    d = _model_preconditions(fc, sw)
    m = fc.modulus.m
    if N < 1:
        raise ValueError("N must be >= 1")
    size = math.hypot(0.5, t)
    s = complex(0.5, t)
    den = dirichlet_poly(fc, s)
    if abs(den) < denominator_threshold(fc):
        raise DenominatorNearZero(
            f"|denominator| = {abs(den):.3e} below threshold at s={s}"
        )
    moment = leading_moment(sw)
    log_value = (
        d * math.log(size)
        - math.log(m)
        - (d - 0.5) * math.log(m * N)
        - math.lgamma(d + 1.0)
        + math.log(abs(moment))
        - math.log(abs(den))
    )
    return math.exp(log_value)


def predict_min_N(
    fc: FilterCoefficients, sw: SeriesWeights, s: complex, target: float
) -> int:
    """Smallest N on the model curve with estimated error <= target.

    On the critical line (with |s| >> m) the closed-form inversion of the
    critical-line model applies; elsewhere the general estimate is inverted.
    Either way the returned N is verified/adjusted against the model curve,
    so the power law target -> N**-(exponent) holds exactly up to rounding.
    """
    s = complex(s)
    if target <= 0:
        raise ValueError("target must be positive")
    d = _model_preconditions(fc, sw)
    m = fc.modulus.m
    on_critical_line = s.real == 0.5 and math.hypot(0.5, s.imag) >= 10 * m
    if on_critical_line:
        t = s.imag
        model = lambda n: critical_line_error(fc, sw, t, n)  # noqa: E731
        # invert: error(N) = C * N**-(d-1/2)
        c1 = critical_line_error(fc, sw, t, 1)
        guess = (c1 / target) ** (1.0 / (d - 0.5))
    else:
        model = lambda n: predicted_error(fc, sw, s, n).predicted_error  # noqa: E731
        expo = s.real + d - 1.0
        f_d = falling_coefficient(d, s)
        den = dirichlet_poly(fc, s)
        k = abs(f_d) * abs(leading_moment(sw)) / abs(den)
        guess = ((k / (m * expo * target)) ** (1.0 / expo) + m / 2.0) / m
    n = max(1, math.ceil(guess))
    while model(n) > target:
        n += 1
    while n > 1 and model(n - 1) <= target:
        n -= 1
    return n


def empirical_min_N(
    fc: FilterCoefficients,
    sw: SeriesWeights,
    s: complex,
    target: float,
    oracle: Union[complex, OracleResult],
    grid: tuple[int, int, int],
    backend: Optional[str] = None,
) -> MinNResult:
    """First grid point N with |zeta estimate - oracle| < target.

    ``grid`` is (start, stop, step), stop inclusive when aligned. The scan
    is a single incremental pass, so each grid value matches the
    sequential-compensated evaluation at that N. An exhausted grid is
    reported in the result, not raised.
    """
    if isinstance(oracle, OracleResult):
        if oracle.claimed_accuracy > target / 10:
            raise ValueError(
                f"oracle accuracy {oracle.claimed_accuracy:.2e} is worse than "
                f"target/10 = {target / 10:.2e}"
            )
        reference = oracle.value
    else:
        reference = complex(oracle)
    start, stop, step = grid
    if step < 1 or start < 1 or stop < start:
        raise ValueError(f"invalid grid {grid}")
    ns = list(range(start, stop + 1, step))
    den = dirichlet_poly(fc, s, backend=backend)
    values = eval_prefixes(sw, s, ns, backend=backend) / den
    errors = np.abs(values - reference)
    hits = np.nonzero(errors < target)[0]
    if len(hits) == 0:
        return MinNResult(
            None, None, "exhausted", ns[-1], float(errors[-1]), complex(values[-1])
        )
    i = int(hits[0])
    return MinNResult(
        ns[i], float(errors[i]), "ok", ns[-1], float(errors[-1]), complex(values[i])
    )


def scan_errors(
    fc: FilterCoefficients,
    sw: SeriesWeights,
    s: complex,
    reference: complex,
    grid: tuple[int, int, int],
    backend: Optional[str] = None,
) -> tuple[list[int], np.ndarray, np.ndarray]:
    """(N values, zeta estimates, |error|) along a truncation grid."""
    start, stop, step = grid
    if step < 1 or start < 1 or stop < start:
        raise ValueError(f"invalid grid {grid}")
    ns = list(range(start, stop + 1, step))
    den = dirichlet_poly(fc, s, backend=backend)
    values = eval_prefixes(sw, s, ns, backend=backend) / den
    return ns, values, np.abs(values - complex(reference))


def rigorous_error_bound(
    fc: FilterCoefficients, sw: SeriesWeights, s: complex, N: int
) -> float:
    """A true upper bound on the zeta-estimate truncation error for Re(s) > 1.

    sum_k |b_k| * integral tail of (m*n+1)**-Re(s) from N-1, divided by the
    denominator magnitude. Unlike the model estimates this is an inequality:
    measured truncation error never exceeds it in the absolutely convergent
    region.
    """
    s = complex(s)
    if s.real <= 1:
        raise ValueError("rigorous bound requires Re(s) > 1")
    if N < 1:
        raise ValueError("N must be >= 1")
    m = fc.modulus.m
    total = sw.abs_sum()
    tail = (m * (N - 1) + 1) ** (1.0 - s.real) / (m * (s.real - 1.0))
    den = dirichlet_poly(fc, s)
    return total * tail / abs(den)
