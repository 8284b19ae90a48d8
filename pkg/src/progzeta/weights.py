"""Divisor-filter coefficients and periodic series weights.

For a modulus m with divisors d_1 < ... < d_r (r = d(m)), the moment matrix
A has entries A[i][j] = sum_{n=1}^{m/d_j} (d_j n)^i for i = 0..r-1. A nonzero
kernel vector a of A yields filter coefficients; the periodic weights follow
as b_k = sum over divisors d_j | k of a_j, and they satisfy the vanishing
moment conditions sum_k b_k k^t = 0 for t = 0..r-1. Those cancellations are
what buy convergence of the weighted series far left of Re(s) = 1.

Everything in this module is exact integer/rational arithmetic.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from .exact import ExactMatrix, Rational, mat_vec, primitive_normalize, rref
from .exceptions import MethodNotApplicable

__all__ = [
    "ProgressionModulus",
    "FilterCoefficients",
    "SeriesWeights",
    "VanishingReport",
    "divisors",
    "build_A",
    "build_B",
    "left_kernel_witness",
    "solve_filter",
    "derive_weights",
    "verify_vanishing",
    "divisor_form_decomposition",
    "eta_baseline",
    "coefficient_set",
    "PAPER_MODULI",
    "fixture_dict",
    "fixture_json",
    "write_fixture",
    "load_fixture",
    "fixture_dir",
]

# Filter vectors with published coefficient tables. Keyed by modulus; each
# vector is listed against the ascending divisors of m. These are the
# canonical choices when the kernel of A has dimension > 1.
_KNOWN_FILTERS: dict[int, tuple[int, ...]] = {
    6: (1, -5, 5, -1),
    24: (56, -407, 792, -517, 77, 0, -1, 0),
    60: (
        61768, -567996, 1595836, -2051621, 1292980, -334789,
        4415, -593, 0, 0, 0, 0,
    ),
}

# Moduli whose coefficient sets are pinned to published values (the m = 2
# alternating baseline plus the known filters above).
PAPER_MODULI = (2, 6, 24, 60)


@dataclass(frozen=True)
class ProgressionModulus:
    """A modulus m together with its ascending divisor list."""

    m: int
    divisors: tuple[int, ...]

    @property
    def divisor_count(self) -> int:
        return len(self.divisors)


def divisors(m: int) -> ProgressionModulus:
    """All positive divisors of m, ascending."""
    if m < 1:
        raise ValueError(f"modulus must be a positive integer, got {m}")
    small, large = [], []
    d = 1
    while d * d <= m:
        if m % d == 0:
            small.append(d)
            if d != m // d:
                large.append(m // d)
        d += 1
    return ProgressionModulus(m, tuple(small + large[::-1]))


def build_A(pm: ProgressionModulus) -> ExactMatrix:
    """The d(m) x d(m) moment matrix of the divisor filter system.

    Row i (0-based) holds sum_{n=1}^{m/d_j} (d_j n)^i per column j; running
    integer powers keep every entry exact.
    """
    r = pm.divisor_count
    cols = []
    for d in pm.divisors:
        col = [0] * r
        for n in range(1, pm.m // d + 1):
            v = d * n
            p = 1
            for i in range(r):
                col[i] += p
                p *= v
        cols.append(col)
    return ExactMatrix([[cols[j][i] for j in range(r)] for i in range(r)])


def build_B(pm: ProgressionModulus) -> ExactMatrix:
    """The d(m) x m moment matrix with entry (t, k) = k^t, t = 0..d(m)-1."""
    r = pm.divisor_count
    entries = []
    powers = [1] * pm.m
    for _ in range(r):
        entries.append(list(powers))
        powers = [p * (k + 1) for k, p in enumerate(powers)]
    return ExactMatrix(entries)


def left_kernel_witness(pm: ProgressionModulus) -> list[int]:
    """The explicit vector [0, m^2, -3m, 2, 0, ...] annihilating A from the left.

    Its existence is what makes A singular whenever d(m) >= 4, guaranteeing
    a nonzero filter vector.
    """
    r = pm.divisor_count
    if r < 4:
        raise MethodNotApplicable(
            f"m={pm.m} has d(m)={r} < 4 divisors; the moment matrix is nonsingular"
        )
    c = [0] * r
    c[1] = pm.m * pm.m
    c[2] = -3 * pm.m
    c[3] = 2
    return c


@dataclass(frozen=True)
class FilterCoefficients:
    """A primitive-normalized nonzero coefficient vector against the divisors.

    Vectors produced by :func:`solve_filter` additionally satisfy A a = 0
    exactly (checked there). The m = 2 alternating baseline and divisor-form
    decompositions of arbitrary weights carry coefficient vectors without
    that kernel property.
    """

    modulus: ProgressionModulus
    a: tuple[int, ...]

    def __post_init__(self):
        if len(self.a) != self.modulus.divisor_count:
            raise ValueError("coefficient vector length must equal d(m)")
        if all(x == 0 for x in self.a):
            raise ValueError("coefficient vector must be nonzero")

    def abs_sum(self) -> int:
        return sum(abs(x) for x in self.a)


@dataclass(frozen=True)
class SeriesWeights:
    """The m-periodic weight vector b with its exactly computed vanishing order.

    ``vanishing_order`` is the largest v <= m such that the moments
    sum_k b_k k^t vanish for every t < v.
    """

    modulus: ProgressionModulus
    b: tuple[int, ...]
    vanishing_order: int

    def __post_init__(self):
        if len(self.b) != self.modulus.m:
            raise ValueError("weight vector length must equal m")
        if all(x == 0 for x in self.b):
            raise ValueError("weight vector must be nonzero")

    def abs_sum(self) -> int:
        return sum(abs(x) for x in self.b)


@dataclass(frozen=True)
class VanishingReport:
    """Exact moments sum_k b_k k^t for t = 0..order-1; ok iff all vanish."""

    order: int
    moments: tuple[int, ...]

    @property
    def ok(self) -> bool:
        return all(x == 0 for x in self.moments)


def _moment(b: Sequence[int], t: int) -> int:
    return sum(w * (k + 1) ** t for k, w in enumerate(b))


def _vanishing_order(b: Sequence[int]) -> int:
    m = len(b)
    for t in range(m):
        if _moment(b, t) != 0:
            return t
    return m


def solve_filter(
    pm: ProgressionModulus,
    free_assignment: Optional[Sequence[Rational]] = None,
) -> FilterCoefficients:
    """Solve A a = 0 for a nonzero, primitive filter vector.

    With no ``free_assignment``, moduli with a published coefficient table
    get exactly that vector; otherwise the kernel-basis vector attached to
    the first free column of the RREF is used. A caller-supplied assignment
    gives the values of the free variables (in free-column order) and the
    pivot variables are solved accordingly.
    """
    r = pm.divisor_count
    if r < 4:
        raise MethodNotApplicable(
            f"m={pm.m} has d(m)={r} < 4 divisors; the moment matrix is nonsingular"
        )
    A = build_A(pm)
    reduced, pivots = rref(A)
    free = [c for c in range(r) if c not in pivots]

    if free_assignment is None:
        if pm.m in _KNOWN_FILTERS:
            a = _KNOWN_FILTERS[pm.m]
        else:
            f = free[0]
            v: list[Rational] = [0] * r
            v[f] = -1
            for i, p in enumerate(pivots):
                v[p] = reduced[i, f]
            a = primitive_normalize(v)
    else:
        if len(free_assignment) != len(free):
            raise ValueError(
                f"free assignment must have {len(free)} entries (free columns {free})"
            )
        if all(x == 0 for x in free_assignment):
            raise ValueError("free assignment must not be all zero")
        v = [Fraction(0)] * r
        for f, val in zip(free, free_assignment):
            v[f] = Fraction(val)
        for i, p in enumerate(pivots):
            v[p] = -sum(reduced[i, f] * Fraction(val) for f, val in zip(free, free_assignment))
        a = primitive_normalize(v)

    residual = mat_vec(A, a)
    if any(x != 0 for x in residual):
        raise ArithmeticError(f"filter vector for m={pm.m} fails A a = 0: {residual}")
    return FilterCoefficients(pm, tuple(a))


def derive_weights(fc: FilterCoefficients) -> SeriesWeights:
    """Periodic weights b_k = sum of a_j over divisors d_j dividing k."""
    pm = fc.modulus
    b = []
    for k in range(1, pm.m + 1):
        b.append(sum(a for d, a in zip(pm.divisors, fc.a) if k % d == 0))
    return SeriesWeights(pm, tuple(b), _vanishing_order(b))


def verify_vanishing(sw: SeriesWeights, order: int) -> VanishingReport:
    """Exactly evaluate the first ``order`` moments of the weights."""
    return VanishingReport(order, tuple(_moment(sw.b, t) for t in range(order)))


def divisor_form_decomposition(
    pm: ProgressionModulus, b: Sequence[int]
) -> Optional[FilterCoefficients]:
    """Invert b_k = sum_{d_j | k} a_j if possible.

    The divisor rows k in D determine a triangularly; the candidate is then
    checked against every k = 1..m and rejected (None) on any mismatch.
    """
    if len(b) != pm.m:
        raise ValueError("weight vector length must equal m")
    a: dict[int, Rational] = {}
    for d in pm.divisors:
        a[d] = b[d - 1] - sum(a[e] for e in pm.divisors if e < d and d % e == 0)
    for k in range(1, pm.m + 1):
        if sum(a[d] for d in pm.divisors if k % d == 0) != b[k - 1]:
            return None
    vec = [a[d] for d in pm.divisors]
    if all(x == 0 for x in vec):
        return None
    return FilterCoefficients(pm, primitive_normalize(vec))


def eta_baseline() -> tuple[FilterCoefficients, SeriesWeights]:
    """The m = 2 alternating-series baseline (a = [1, -2], b = [1, -1]).

    This classical comparison set sits outside the divisor-filter method
    (d(2) = 2 < 4): its coefficient vector is not in the kernel of A and its
    vanishing order is only 1.
    """
    pm = divisors(2)
    return FilterCoefficients(pm, (1, -2)), SeriesWeights(pm, (1, -1), 1)


def coefficient_set(m: int) -> tuple[FilterCoefficients, SeriesWeights]:
    """Filter plus weights for modulus m (the m = 2 baseline included)."""
    if m == 2:
        return eta_baseline()
    fc = solve_filter(divisors(m))
    return fc, derive_weights(fc)


# ---------------------------------------------------------------------------
# Fixture files
# ---------------------------------------------------------------------------
#
# Schema: {"m": int, "divisors": [int], "a": [str], "b": [str],
#          "vanishing_order": int, "source": "paper"|"generated"}
# Coefficients are serialized as decimal strings so readers limited to
# 64-bit integers cannot silently overflow.

_FIXTURE_ENV = "PROGZETA_FIXTURES"


def fixture_dir() -> Path:
    """Fixture directory: $PROGZETA_FIXTURES if set, else the packaged data."""
    env = os.environ.get(_FIXTURE_ENV)
    if env:
        return Path(env)
    return Path(__file__).parent / "fixtures"


def fixture_dict(fc: FilterCoefficients, sw: SeriesWeights) -> dict:
    m = fc.modulus.m
    return {
        "m": m,
        "divisors": list(fc.modulus.divisors),
        "a": [str(x) for x in fc.a],
        "b": [str(x) for x in sw.b],
        "vanishing_order": sw.vanishing_order,
        "source": "paper" if m in PAPER_MODULI else "generated",
    }


def fixture_json(fc: FilterCoefficients, sw: SeriesWeights) -> str:
    """Canonical JSON serialization (stable byte-for-byte across runs)."""
    return json.dumps(fixture_dict(fc, sw), indent=2) + "\n"


def write_fixture(fc: FilterCoefficients, sw: SeriesWeights, path: Path) -> None:
    path.write_text(fixture_json(fc, sw), encoding="ascii")


def load_fixture(m: int, directory: Optional[Path] = None) -> tuple[FilterCoefficients, SeriesWeights]:
    """Load a fixture file and rebuild the exact coefficient objects."""
    base = Path(directory) if directory is not None else fixture_dir()
    path = base / f"m{m:04d}.json"
    data = json.loads(path.read_text(encoding="ascii"))
    if data["m"] != m:
        raise ValueError(f"fixture {path} claims m={data['m']}, expected {m}")
    pm = divisors(m)
    if list(pm.divisors) != data["divisors"]:
        raise ValueError(f"fixture {path} carries a wrong divisor list")
    fc = FilterCoefficients(pm, tuple(int(x) for x in data["a"]))
    sw = SeriesWeights(pm, tuple(int(x) for x in data["b"]), int(data["vanishing_order"]))
    return fc, sw


def fixture_path(m: int, directory: Optional[Path] = None) -> Path:
    base = Path(directory) if directory is not None else fixture_dir()
    return base / f"m{m:04d}.json"
