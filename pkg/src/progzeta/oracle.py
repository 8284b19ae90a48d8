"""Independent reference values of zeta(s).

Two deliberately different algorithm families cross-check each other: an
Euler-Maclaurin evaluator (partial sum + integral + Bernoulli corrections
with the classical remainder bound) and the alternating 2-periodic series
divided by 1 - 2**(1-s). Agreement between them is evidence, not tautology:
neither shares the progression-weight machinery they are used to validate.

The Euler-Maclaurin claimed accuracy folds in an empirically validated
binary64 noise floor (phase rounding grows with |Im s|); requests below
that floor raise PrecisionError rather than over-promising.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .exceptions import (
    ConvergenceWarning,
    DomainError,
    EtaDenominatorNearZero,
    PrecisionError,
)
from .series import complex_power_inverse, eval_partial_dirichlet, eval_truncated
from .weights import eta_baseline

__all__ = [
    "OracleResult",
    "bernoulli_numbers",
    "zeta_euler_maclaurin",
    "zeta_eta",
    "zeta_closed_form",
    "reference_zeta",
    "CLOSED_FORMS",
]

_MAX_BERNOULLI_INDEX = 64


@dataclass(frozen=True)
class OracleResult:
    value: complex
    claimed_accuracy: float
    method: str


def bernoulli_numbers(count: int) -> list[Fraction]:
    """Exact Bernoulli numbers B_0..B_count (B_1 = -1/2 convention).

    Standard recurrence B_n = -(1/(n+1)) * sum_{k<n} C(n+1, k) B_k.
    """
    if count < 0:
        raise ValueError("count must be >= 0")
    if count > _MAX_BERNOULLI_INDEX:
        raise ValueError(f"count must be <= {_MAX_BERNOULLI_INDEX}, got {count}")
    out = [Fraction(1)]
    for n in range(1, count + 1):
        acc = Fraction(0)
        for k in range(n):
            acc += math.comb(n + 1, k) * out[k]
        out.append(-acc / (n + 1))
    return out


@lru_cache(maxsize=1)
def _bernoulli_even_over_factorial() -> list[float]:
    """B_{2j} / (2j)! as floats for j = 1..32."""
    bs = bernoulli_numbers(_MAX_BERNOULLI_INDEX)
    return [float(bs[2 * j] / Fraction(math.factorial(2 * j))) for j in range(1, 33)]


# binary64 noise floor of a partial sum of n**-s over n < M: a phase-error
# random walk weighted by n**-sigma (per-term phase error ~1.5e-16*|t| after
# the double-double formation) plus magnitude rounding. Budgeted at ~3x the
# RMS observed against a 40-digit reference across sigma in [-0.5, 3] and
# t up to 1e6.
def _sum_noise_floor(sigma: float, t: float, M: int) -> float:
    if abs(1.0 - 2.0 * sigma) < 1e-9:
        walk = math.log(M + 1.0)
    else:
        walk = abs(((M + 1.0) ** (1.0 - 2.0 * sigma) - 1.0) / (1.0 - 2.0 * sigma))
    if abs(1.0 - sigma) < 1e-9:
        mag = math.log(M + 1.0)
    else:
        mag = abs(((M + 1.0) ** (1.0 - sigma) - 1.0) / (1.0 - sigma))
    return 1e-15 + abs(t) * 1.8e-16 * math.sqrt(walk) + 2e-16 * mag


def zeta_euler_maclaurin(s: complex, target: float = 1e-12) -> OracleResult:
    """zeta(s) by Euler-Maclaurin summation to within ``target`` (absolute).

    value = sum_{n<M} n**-s + M**(1-s)/(s-1) + M**-s/2
            + sum_j B_{2j}/(2j)! * (s)(s+1)...(s+2j-2) * M**(-s-2j+1).

    M and the correction count are chosen so the classical remainder bound
    |next term| * |s+2J+1|/(Re(s)+2J+1) falls below the target.
    """
    s = complex(s)
    if target <= 0:
        raise ValueError("target must be positive")
    if abs(s - 1) < 1e-6:
        raise DomainError("Euler-Maclaurin oracle is undefined at/near s = 1")
    if s.real <= -1:
        raise DomainError(f"oracle restricted to Re(s) > -1, got {s.real}")
    coeffs = _bernoulli_even_over_factorial()
    size = abs(s)
    M = max(16, math.ceil(0.6 * (size + 10.0)))
    best: Optional[tuple[int, int, float]] = None  # (M, J, bound)
    for _ in range(24):
        # scan correction terms until the remainder bound is small enough
        prod = s  # (s)(s+1)...(s+2j-2) for j = 1
        logM = math.log(M)
        bound = math.inf
        J_used = 0
        for j in range(1, 32):
            next_prod = prod * (s + 2 * j - 1) * (s + 2 * j)
            mag_next = coeffs[j] if j < 32 else 0.0
            # remainder after J=j terms, from the (j+1)-th term
            if j < 32:
                next_term = (
                    abs(coeffs[j]) * abs(next_prod) * math.exp(-(s.real + 2 * j + 1) * logM)
                )
                rem = next_term * abs(s + 2 * j + 1) / (s.real + 2 * j + 1)
            else:
                rem = math.inf
            if rem < bound:
                bound = rem
                J_used = j
            if bound <= target / 4:
                break
            if rem > bound * 4:
                break  # terms started growing; larger M needed
            prod = next_prod
        if bound <= target / 4:
            best = (M, J_used, bound)
            break
        M = math.ceil(M * 1.6)
    if best is None:
        raise PrecisionError(
            f"Euler-Maclaurin could not reach target {target:.1e} at s={s}"
        )
    M, J, bound = best
    noise = _sum_noise_floor(s.real, s.imag, M)
    claimed = 1.15 * bound + noise
    if claimed > target:
        raise PrecisionError(
            f"binary64 noise floor {noise:.2e} exceeds target {target:.1e} at s={s}"
        )

    value = 0j
    if M > 1:
        value += eval_partial_dirichlet(s, M - 1)
    inv_Ms = complex_power_inverse(M, s)  # M**-s
    value += inv_Ms * M / (s - 1)
    value += inv_Ms / 2
    prod = s
    w = inv_Ms / M  # M**(-s-2j+1) for j = 1
    for j in range(1, J + 1):
        value += coeffs[j - 1] * prod * w
        prod = prod * (s + 2 * j - 1) * (s + 2 * j)
        w = w / (M * M)
    return OracleResult(value, claimed, "euler_maclaurin")


def zeta_eta(s: complex, N: int) -> OracleResult:
    """zeta(s) from N blocks of the alternating 2-periodic series.

    The truncated sum of 1/(2n+1)**s - 1/(2n+2)**s is divided by
    1 - 2**(1-s). Claimed accuracy is the alternating-series remainder for
    real s, and the half-first-omitted-term heuristic (valid once N >> |s|)
    on complex points.
    """
    s = complex(s)
    if N < 1:
        raise ValueError("N must be >= 1")
    if s.real <= 0:
        raise DomainError(f"eta series requires Re(s) > 0, got {s.real}")
    denom = 1 - 2 * complex_power_inverse(2, s)
    if abs(denom) < 0.05:
        raise EtaDenominatorNearZero(
            f"|1 - 2**(1-s)| = {abs(denom):.3e} at s={s}; too close to the "
            "compensation zeros s = 1 + 2*pi*i*k/ln 2"
        )
    _, sw = eta_baseline()
    with warnings.catch_warnings():
        # classical alternating convergence for Re(s) > 0 is enforced above;
        # the generic vanishing-order warning does not apply here
        warnings.simplefilter("ignore", ConvergenceWarning)
        partial = eval_truncated(sw, s, N, allow_imprecise=True)
    first_omitted = (2 * N + 1) ** (-s.real)
    if s.imag == 0.0:
        tail = first_omitted
    else:
        tail = first_omitted * (0.5 + 2.0 * abs(s) / N)
    claimed = tail / abs(denom) + _sum_noise_floor(s.real, s.imag, 2 * N)
    return OracleResult(partial / denom, claimed, "eta_series")


# Closed-form anchors: exactly known values rounded once to binary64.
CLOSED_FORMS: dict[complex, float] = {
    2 + 0j: math.pi**2 / 6,
    4 + 0j: math.pi**4 / 90,
    3 + 0j: 1.2020569031595943,  # Apery's constant
    0 + 0j: -0.5,
    -1 + 0j: -1.0 / 12.0,
}


def zeta_closed_form(s: complex) -> Optional[OracleResult]:
    """Known exact value at s, or None."""
    key = complex(s)
    if key in CLOSED_FORMS:
        v = CLOSED_FORMS[key]
        return OracleResult(complex(v), 4 * math.ulp(abs(v)), "closed_form")
    return None


def reference_zeta(s: complex, target: float = 1e-12) -> OracleResult:
    """Best available reference: closed form if known, else Euler-Maclaurin."""
    cf = zeta_closed_form(s)
    if cf is not None and cf.claimed_accuracy <= target:
        return cf
    return zeta_euler_maclaurin(s, target)
