"""Truncated evaluation of the weighted progression series and the zeta estimate.

The weighted series is summed over complete inner blocks: N counts outer
indices n = 0..N-1, each contributing all m inner terms (so m*N individual
terms). Dividing the partial sum by the divisor polynomial gives the zeta
estimate wherever that polynomial is safely away from zero.

Precision model (binary64): each term's phase t*ln(mn+k) is formed in
double-double precision by the backend kernels, and sums are compensated.
A conservative per-term phase-error budget of |Im s| * ulp(ln(m*N + m)) is
still enforced: evaluation refuses once it exceeds 1e-8 unless the caller
explicitly accepts reduced precision.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .backends import get_backend
from .exceptions import (
    ConvergenceWarning,
    DenominatorNearZero,
    DomainError,
    EvaluationError,
    PrecisionError,
    PrecisionWarning,
)
from .weights import FilterCoefficients, SeriesWeights

__all__ = [
    "CHUNK_OUTER",
    "PHASE_BUDGET_LIMIT",
    "DENOMINATOR_THRESHOLD_SCALE",
    "TruncatedEvaluation",
    "complex_power_inverse",
    "eval_truncated",
    "eval_prefixes",
    "eval_partial_dirichlet",
    "dirichlet_poly",
    "denominator_threshold",
    "zeta_estimate",
    "phase_error_budget",
    "tree_reduce",
]

# Outer indices per chunk in parallel mode. Fixed so chunked results are
# reproducible run to run and independent of thread count.
CHUNK_OUTER = 4096

# Refuse evaluation once the documented per-term phase-error budget exceeds
# this (unless the caller opts into reduced precision).
PHASE_BUDGET_LIMIT = 1e-8

# |denominator| below this multiple of sum|a_j| marks an unusable point.
DENOMINATOR_THRESHOLD_SCALE = 1e-6


@dataclass(frozen=True)
class TruncatedEvaluation:
    """A truncated series value, its denominator, and the zeta estimate.

    ``zeta_estimate`` is None exactly when ``condition_ok`` is False (the
    denominator fell below the near-zero threshold).
    """

    partial_sum: complex
    denominator: complex
    zeta_estimate: Optional[complex]
    outer_terms: int
    modulus: int
    condition_ok: bool


def _check_point(s: complex) -> complex:
    s = complex(s)
    if not (math.isfinite(s.real) and math.isfinite(s.imag)):
        raise ValueError(f"evaluation point must be finite, got {s}")
    return s


def _weight_array(sw: SeriesWeights) -> np.ndarray:
    b = np.array([float(x) for x in sw.b], dtype=np.float64)
    if any(int(v) != x for v, x in zip(b, sw.b)):
        warnings.warn(
            f"weights for m={sw.modulus.m} exceed 2**53; binary64 conversion is inexact",
            PrecisionWarning,
            stacklevel=3,
        )
    return b


def phase_error_budget(s: complex, max_base: float) -> float:
    """Documented per-term phase-error bound |Im s| * ulp(ln(max_base))."""
    return abs(s.imag) * math.ulp(math.log(max_base))


def _check_phase_budget(s: complex, max_base: float, allow_imprecise: bool) -> None:
    budget = phase_error_budget(s, max_base)
    if budget > PHASE_BUDGET_LIMIT:
        msg = (
            f"per-term phase-error budget {budget:.2e} exceeds {PHASE_BUDGET_LIMIT:.0e} "
            f"at Im(s)={s.imag:.3g} with terms up to {max_base:.3g}"
        )
        if not allow_imprecise:
            raise PrecisionError(msg + "; pass allow_imprecise=True to evaluate anyway")
        warnings.warn(msg, PrecisionWarning, stacklevel=4)


def _warn_outside_convergence(sw: SeriesWeights, s: complex) -> None:
    edge = 2 - sw.vanishing_order
    if s.real <= edge:
        warnings.warn(
            f"Re(s)={s.real:g} is at or below {edge}, where convergence of the "
            f"m={sw.modulus.m} series is not established; value is exploratory",
            ConvergenceWarning,
            stacklevel=4,
        )


def tree_reduce(values: np.ndarray) -> complex:
    """Deterministic pairwise fold, independent of how chunks were produced."""
    v = np.asarray(values, dtype=np.complex128).copy()
    n = len(v)
    if n == 0:
        return 0j
    while n > 1:
        half = n // 2
        folded = v[0 : 2 * half : 2] + v[1 : 2 * half : 2]
        if n % 2:
            v[half] = v[n - 1]
        v[:half] = folded
        n = half + (n % 2)
    return complex(v[0])


def _locate_bad_term(b: np.ndarray, m: int, sigma: float, t: float, lo: int, hi: int):
    """Slow rescan to attribute a non-finite result to a term (n, k)."""
    from .backends import _numpy as fallback

    for n in range(lo, hi):
        for j in range(len(b)):
            if b[j] == 0.0:
                continue
            re, im = fallback.pow_inv(float(m * n + j + 1), sigma, t)
            if not (math.isfinite(re) and math.isfinite(im)):
                return n, j + 1
    return None


def complex_power_inverse(base: int, s: complex, backend: Optional[str] = None) -> complex:
    """base**(-s) for an integer base >= 1."""
    if base < 1:
        raise ValueError(f"base must be a positive integer, got {base}")
    s = _check_point(s)
    re, im = get_backend(backend).pow_inv(float(base), s.real, s.imag)
    return complex(re, im)


def eval_truncated(
    sw: SeriesWeights,
    s: complex,
    N: int,
    mode: str = "seq",
    n_start: int = 0,
    allow_imprecise: bool = False,
    backend: Optional[str] = None,
) -> complex:
    """Sum of N complete inner blocks, outer indices n_start..n_start+N-1.

    ``mode`` is "seq" (sequential compensated summation) or "par" (fixed
    4096-outer-index chunks combined by a deterministic pairwise tree).
    """
    s = _check_point(s)
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    if n_start < 0:
        raise ValueError(f"n_start must be >= 0, got {n_start}")
    m = sw.modulus.m
    b = _weight_array(sw)
    _warn_outside_convergence(sw, s)
    _check_phase_budget(s, m * (n_start + N) + m, allow_imprecise)
    bk = get_backend(backend)
    n1 = n_start + N
    if mode == "seq":
        re, im = bk.weighted_prefix_sums(
            b, m, s.real, s.imag, n_start, np.array([n1], dtype=np.int64)
        )
        value = complex(re[0], im[0])
    elif mode == "par":
        re_c, im_c = bk.weighted_chunk_sums(b, m, s.real, s.imag, n_start, n1, CHUNK_OUTER)
        value = tree_reduce(re_c + 1j * im_c)
    else:
        raise ValueError(f"mode must be 'seq' or 'par', got {mode!r}")
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        bad = _locate_bad_term(b, m, s.real, s.imag, n_start, n1)
        n, k = bad if bad is not None else (None, None)
        raise EvaluationError(
            f"non-finite term in evaluation at s={s} (outer n={n}, inner k={k})", n, k
        )
    return value


def eval_prefixes(
    sw: SeriesWeights,
    s: complex,
    Ns: Sequence[int],
    allow_imprecise: bool = False,
    backend: Optional[str] = None,
) -> np.ndarray:
    """Sequential-compensated values at several truncation points in one pass.

    ``Ns`` must be ascending; entry i equals eval_truncated(sw, s, Ns[i]).
    """
    s = _check_point(s)
    ends = np.asarray(list(Ns), dtype=np.int64)
    if len(ends) == 0:
        return np.empty(0, dtype=np.complex128)
    if ends[0] < 1 or np.any(np.diff(ends) <= 0):
        raise ValueError("truncation points must be ascending and >= 1")
    m = sw.modulus.m
    b = _weight_array(sw)
    _warn_outside_convergence(sw, s)
    _check_phase_budget(s, m * int(ends[-1]) + m, allow_imprecise)
    re, im = get_backend(backend).weighted_prefix_sums(b, m, s.real, s.imag, 0, ends)
    values = re + 1j * im
    if not np.all(np.isfinite(values)):
        bad = _locate_bad_term(b, m, s.real, s.imag, 0, int(ends[-1]))
        n, k = bad if bad is not None else (None, None)
        raise EvaluationError(
            f"non-finite term in evaluation at s={s} (outer n={n}, inner k={k})", n, k
        )
    return values


def eval_partial_dirichlet(
    s: complex, M: int, allow_imprecise: bool = False, backend: Optional[str] = None
) -> complex:
    """Plain partial sum of n**(-s) for n = 1..M."""
    s = _check_point(s)
    if M < 1:
        raise ValueError(f"M must be >= 1, got {M}")
    _check_phase_budget(s, M + 1, allow_imprecise)
    ones = np.array([1.0])
    re, im = get_backend(backend).weighted_prefix_sums(
        ones, 1, s.real, s.imag, 0, np.array([M], dtype=np.int64)
    )
    return complex(re[0], im[0])


def dirichlet_poly(fc: FilterCoefficients, s: complex, backend: Optional[str] = None) -> complex:
    """The divisor polynomial: sum of a_j * d_j**(-s)."""
    s = _check_point(s)
    bk = get_backend(backend)
    total = 0j
    for d, a in zip(fc.modulus.divisors, fc.a):
        if a == 0:
            continue
        re, im = bk.pow_inv(float(d), s.real, s.imag)
        total += a * complex(re, im)
    return total


def denominator_threshold(fc: FilterCoefficients) -> float:
    return DENOMINATOR_THRESHOLD_SCALE * fc.abs_sum()


def zeta_estimate(
    fc: FilterCoefficients,
    sw: SeriesWeights,
    s: complex,
    N: int,
    mode: str = "seq",
    explore: bool = False,
    allow_imprecise: bool = False,
    strict: bool = True,
    backend: Optional[str] = None,
) -> TruncatedEvaluation:
    """Truncated series divided by the divisor polynomial.

    The proven half-plane is Re(s) > 2 - d(m); points at or left of that
    edge raise DomainError unless ``explore=True`` (then a warning marks the
    value as exploratory). A denominator below the near-zero threshold
    raises DenominatorNearZero, or, with ``strict=False``, returns the
    evaluation with ``condition_ok=False`` and the estimate withheld.
    """
    s = _check_point(s)
    edge = 2 - fc.modulus.divisor_count
    if s.real <= edge:
        if not explore:
            raise DomainError(
                f"Re(s)={s.real:g} is outside the proven half-plane Re(s) > {edge} "
                f"for m={fc.modulus.m}; pass explore=True to evaluate anyway"
            )
        warnings.warn(
            f"evaluating at Re(s)={s.real:g}, outside the proven half-plane "
            f"Re(s) > {edge} for m={fc.modulus.m}",
            ConvergenceWarning,
            stacklevel=2,
        )
    den = dirichlet_poly(fc, s, backend=backend)
    threshold = denominator_threshold(fc)
    condition_ok = abs(den) >= threshold
    if not condition_ok and strict:
        raise DenominatorNearZero(
            f"|denominator| = {abs(den):.3e} < {threshold:.3e} at s={s}; "
            "the representation cannot be solved for zeta here"
        )
    with warnings.catch_warnings():
        # The domain gate above already covers the convergence warning for
        # weights at their design order; suppress the duplicate.
        warnings.simplefilter("ignore", ConvergenceWarning)
        partial = eval_truncated(
            sw, s, N, mode=mode, allow_imprecise=allow_imprecise, backend=backend
        )
    z = partial / den if condition_ok else None
    return TruncatedEvaluation(
        partial_sum=partial,
        denominator=den,
        zeta_estimate=z,
        outer_terms=N,
        modulus=fc.modulus.m,
        condition_ok=condition_ok,
    )
