"""Command-line surface: coefficient generation, evaluation, scans, verification.

Subcommands
-----------
coeffs   write the coefficient fixture for a modulus and print a summary
eval     evaluate the zeta estimate at one point
min-n    scan a truncation grid for the minimum N per accuracy target
curve    emit (N, |error|) rows along a truncation grid
verify   run the self-check suites

CSV schema (min-n and curve): m,t,sigma,N,target,value_re,value_im,
abs_error,predicted_error,status. Exit codes: 0 ok, 2 precondition,
3 numeric/conditioning, 4 grid exhausted.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys
import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from . import errormodel, oracle, series, weights
from .exceptions import (
    DenominatorNearZero,
    DomainError,
    EtaDenominatorNearZero,
    EvaluationError,
    MethodNotApplicable,
    PrecisionError,
)

EXIT_OK = 0
EXIT_PRECONDITION = 2
EXIT_NUMERIC = 3
EXIT_EXHAUSTED = 4

CSV_COLUMNS = [
    "m", "t", "sigma", "N", "target",
    "value_re", "value_im", "abs_error", "predicted_error", "status",
]


@dataclass
class RunConfig:
    """Validated options shared by the experiment commands."""

    m: int
    s: complex
    grid: Optional[tuple[int, int, int]] = None
    targets: tuple[float, ...] = ()
    out: Optional[Path] = None
    mode: str = "seq"
    seed: int = 20240601
    explore: bool = False
    allow_imprecise: bool = False

    def __post_init__(self):
        if self.grid is not None:
            start, stop, step = self.grid
            if step < 1:
                raise ValueError("grid step must be >= 1")
            if start < 1 or stop < start:
                raise ValueError(f"invalid grid {self.grid}")
        if self.targets:
            if any(x <= 0 for x in self.targets):
                raise ValueError("targets must be strictly positive")
            if any(a <= b for a, b in zip(self.targets, self.targets[1:])):
                raise ValueError("targets must be strictly decreasing")


def _parse_s(text: str) -> complex:
    try:
        re_part, im_part = text.split(",")
        return complex(float(re_part), float(im_part))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected RE,IM, got {text!r}") from exc


def _parse_grid(text: str) -> tuple[int, int, int]:
    try:
        start, stop, step = (int(x) for x in text.split(":"))
        return start, stop, step
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected START:STOP:STEP, got {text!r}") from exc


def _parse_targets(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(x) for x in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated floats, got {text!r}") from exc


def _fmt(x: float) -> str:
    return repr(float(x))


def _write_rows(rows: list[dict], out: Optional[Path]) -> None:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({col: row.get(col, "") for col in CSV_COLUMNS})
    text = buf.getvalue()
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text, encoding="ascii")


def _coefficients(m: int):
    try:
        return weights.coefficient_set(m)
    except MethodNotApplicable:
        raise
    except ValueError:
        raise


def _oracle_value(s: complex, target: float):
    try:
        return oracle.reference_zeta(s, target)
    except (DomainError, PrecisionError):
        return None


def cmd_coeffs(args) -> int:
    fc, sw = _coefficients(args.m)
    out = Path(args.out) if args.out else weights.fixture_path(args.m)
    out.parent.mkdir(parents=True, exist_ok=True)
    weights.write_fixture(fc, sw, out)
    A = weights.build_A(fc.modulus)
    from .exact import rank

    r = rank(A)
    d = fc.modulus.divisor_count
    print(f"m = {args.m}, divisors = {list(fc.modulus.divisors)}")
    print(f"rank(A) = {r}, nullity = {d - r}")
    print(f"a = {list(fc.a)}")
    print(f"b = {list(sw.b)}")
    print(f"vanishing order = {sw.vanishing_order}")
    print(f"wrote {out}")
    return EXIT_OK


def cmd_eval(args) -> int:
    fc, sw = _coefficients(args.m)
    te = series.zeta_estimate(
        fc, sw, args.s, args.n, mode=args.mode,
        explore=args.explore, allow_imprecise=args.allow_imprecise,
    )
    z = te.zeta_estimate
    print(f"zeta estimate      = {z.real!r} + {z.imag!r}i")
    print(f"|denominator|      = {abs(te.denominator)!r}")
    try:
        pred = errormodel.predicted_error(fc, sw, args.s, args.n).predicted_error
        print(f"predicted error    = {pred:.3e}")
    except (MethodNotApplicable, ValueError):
        print("predicted error    = n/a")
    ref = _oracle_value(args.s, 1e-10)
    if ref is not None:
        print(f"measured error     = {abs(z - ref.value):.3e}  "
              f"(reference {ref.method}, claimed {ref.claimed_accuracy:.1e})")
    return EXIT_OK


def cmd_min_n(args) -> int:
    cfg = RunConfig(m=args.m, s=complex(0.5, args.t), grid=args.grid,
                    targets=args.targets, out=Path(args.out) if args.out else None)
    fc, sw = _coefficients(cfg.m)
    finest = cfg.targets[-1] / 10
    ref = oracle.reference_zeta(cfg.s, finest)
    rows = []
    exhausted = False
    for target in cfg.targets:
        res = errormodel.empirical_min_N(fc, sw, cfg.s, target, ref, cfg.grid)
        n_reported = res.min_n if res.status == "ok" else res.last_n
        try:
            pred = _fmt(
                errormodel.critical_line_error(fc, sw, cfg.s.imag, n_reported)
            )
        except (MethodNotApplicable, ValueError):
            pred = ""
        row = {
            "m": cfg.m, "t": _fmt(cfg.s.imag), "sigma": _fmt(cfg.s.real),
            "target": _fmt(target), "predicted_error": pred, "status": res.status,
            "N": n_reported,
            "abs_error": _fmt(res.error if res.status == "ok" else res.last_error),
            "value_re": _fmt(res.value.real), "value_im": _fmt(res.value.imag),
        }
        exhausted |= res.status == "exhausted"
        rows.append(row)
    _write_rows(rows, cfg.out)
    return EXIT_EXHAUSTED if exhausted else EXIT_OK


def cmd_curve(args) -> int:
    cfg = RunConfig(m=args.m, s=args.s, grid=args.grid,
                    out=Path(args.out) if args.out else None,
                    allow_imprecise=args.allow_imprecise)
    fc, sw = _coefficients(cfg.m)
    ref = oracle.reference_zeta(cfg.s, 1e-10)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        ns, values, errors = errormodel.scan_errors(
            fc, sw, cfg.s, ref.value, cfg.grid
        )
    rows = []
    for n, v, e in zip(ns, values, errors):
        try:
            pred = _fmt(errormodel.predicted_error(fc, sw, cfg.s, n).predicted_error)
        except (MethodNotApplicable, ValueError, DenominatorNearZero):
            pred = ""
        rows.append({
            "m": cfg.m, "t": _fmt(cfg.s.imag), "sigma": _fmt(cfg.s.real),
            "N": n, "value_re": _fmt(v.real), "value_im": _fmt(v.imag),
            "abs_error": _fmt(e), "predicted_error": pred, "status": "ok",
        })
    _write_rows(rows, cfg.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify suites
# ---------------------------------------------------------------------------


def _suite_fixtures() -> list[str]:
    problems = []
    for m in weights.PAPER_MODULI:
        fc, sw = weights.coefficient_set(m)
        regenerated = weights.fixture_json(fc, sw)
        path = weights.fixture_path(m)
        if not path.exists():
            problems.append(f"fixture file missing for m={m}")
            continue
        if path.read_text(encoding="ascii") != regenerated:
            problems.append(f"fixture for m={m} is not byte-identical to regeneration")
        on_disk_fc, on_disk_sw = weights.load_fixture(m)
        if on_disk_fc.a != fc.a or on_disk_sw.b != sw.b:
            problems.append(f"fixture for m={m} disagrees with solver output")
    return problems


def _suite_moments() -> list[str]:
    problems = []
    for m in weights.PAPER_MODULI:
        fc, sw = weights.load_fixture(m)
        d = fc.modulus.divisor_count
        order = d if d >= 4 else sw.vanishing_order
        report = weights.verify_vanishing(sw, order)
        if not report.ok:
            problems.append(f"m={m}: moments through order {order} do not vanish: {report.moments}")
        nxt = sum(w * (k + 1) ** sw.vanishing_order for k, w in enumerate(sw.b))
        if nxt == 0:
            problems.append(f"m={m}: moment at recorded vanishing order {sw.vanishing_order} is zero")
    return problems


def _suite_witness(limit: int = 1000) -> list[str]:
    from .exact import vec_mat

    problems = []
    for m in range(1, limit + 1):
        pm = weights.divisors(m)
        if pm.divisor_count < 4:
            continue
        c = weights.left_kernel_witness(pm)
        residual = vec_mat(c, weights.build_A(pm))
        if any(x != 0 for x in residual):
            problems.append(f"witness fails to annihilate A for m={m}")
    return problems


def _suite_determinants(limit: int = 1000) -> list[str]:
    from fractions import Fraction

    from .exact import determinant

    problems = []
    primes = [p for p in range(2, limit + 1) if all(p % q for q in range(2, int(p**0.5) + 1))]
    for p in primes:
        det = determinant(weights.build_A(weights.divisors(p)))
        if det != Fraction(p * (p - 1), 2) or det == 0:
            problems.append(f"det A({p}) = {det} != p(p-1)/2")
    for p in primes:
        if p * p > limit:
            break
        det = determinant(weights.build_A(weights.divisors(p * p)))
        expected = Fraction(p**4, 12) * (p * p - 1) * (p * p - 2 * p + 1)
        if det != expected or det == 0:
            problems.append(f"det A({p}^2) = {det} != closed form {expected}")
    return problems


def _suite_determinism() -> list[str]:
    problems = []
    configs = [(6, complex(0.5, 50.0), 100), (24, complex(2.0, -3.0), 97),
               (60, complex(1.5, 9.0), 100), (2, complex(2.5, 3.0), 100),
               (6, complex(3.0, 1000.0), 64)]
    for m, s, N in configs:
        fc, sw = weights.coefficient_set(m)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            seq = series.eval_truncated(sw, s, N, mode="seq")
            par = series.eval_truncated(sw, s, N, mode="par")
            again = series.eval_truncated(sw, s, N, mode="par")
        if par != again:
            problems.append(f"parallel mode is not reproducible at m={m}, s={s}")
        if abs(par - seq) > 1e-12 * abs(seq):
            problems.append(f"par vs seq disagree at m={m}, s={s}: {abs(par-seq):.2e}")
    return problems


def _suite_oracle(seed: int = 20240601) -> list[str]:
    import random

    problems = []
    rng = random.Random(seed)
    checked = 0
    while checked < 20:
        s = complex(rng.uniform(0.5, 3.0), rng.uniform(-1e4, 1e4))
        denom = 1 - 2 * series.complex_power_inverse(2, s)
        if abs(denom) < 0.2 or abs(s - 1) < 0.1:
            continue
        checked += 1
        em = oracle.zeta_euler_maclaurin(s, 1e-9)
        et = oracle.zeta_eta(s, max(10**6, int(100 * abs(s))))
        gap = abs(em.value - et.value)
        allowance = em.claimed_accuracy + et.claimed_accuracy
        if gap > allowance:
            problems.append(f"oracles disagree at s={s}: gap {gap:.2e} > {allowance:.2e}")
    for key, expected in ((2, math.pi**2 / 6), (3, 1.2020569031595943), (4, math.pi**4 / 90)):
        em = oracle.zeta_euler_maclaurin(complex(key, 0), 1e-12)
        if abs(em.value - expected) > em.claimed_accuracy:
            problems.append(f"zeta({key}) = {em.value} misses known constant")
    return problems


_SUITES = {
    "fixtures": _suite_fixtures,
    "moments": _suite_moments,
    "witness": _suite_witness,
    "determinants": _suite_determinants,
    "determinism": _suite_determinism,
    "oracle": _suite_oracle,
}


def cmd_verify(args) -> int:
    names = [args.suite] if args.suite else list(_SUITES)
    failed = False
    for name in names:
        if name not in _SUITES:
            print(f"FAIL {name}: unknown suite (choose from {', '.join(_SUITES)})")
            return EXIT_PRECONDITION
        problems = _SUITES[name]()
        if problems:
            failed = True
            print(f"FAIL {name}: {len(problems)} problem(s)")
            for p in problems:
                print(f"  - {p}")
        else:
            print(f"PASS {name}")
    return EXIT_NUMERIC if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="progzeta",
        description="Accelerated periodic Dirichlet series for the Riemann zeta function",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("coeffs", help="generate the coefficient fixture for a modulus")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--out", type=str, default=None)
    p.set_defaults(func=cmd_coeffs)

    p = sub.add_parser("eval", help="evaluate the zeta estimate at one point")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--s", type=_parse_s, required=True, metavar="RE,IM")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mode", choices=("seq", "par"), default="seq")
    p.add_argument("--explore", action="store_true",
                   help="allow points outside the proven half-plane")
    p.add_argument("--allow-imprecise", action="store_true",
                   help="evaluate past the binary64 phase-error budget")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("min-n", help="minimum N per accuracy target on a grid")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--targets", type=_parse_targets, required=True,
                   metavar="T1,T2,...", help="strictly decreasing accuracies")
    p.add_argument("--grid", type=_parse_grid, required=True, metavar="START:STOP:STEP")
    p.add_argument("--out", type=str, default=None)
    p.set_defaults(func=cmd_min_n)

    p = sub.add_parser("curve", help="error against truncation point along a grid")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--s", type=_parse_s, default=complex(0.5, 1e5), metavar="RE,IM",
                   help="evaluation point (default 0.5,100000)")
    p.add_argument("--grid", type=_parse_grid, required=True, metavar="START:STOP:STEP")
    p.add_argument("--out", type=str, default=None)
    p.add_argument("--allow-imprecise", action="store_true")
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("verify", help="run the self-check suites")
    p.add_argument("--suite", type=str, default=None,
                   help=f"one of: {', '.join(_SUITES)} (default: all)")
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (MethodNotApplicable, DomainError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (DenominatorNearZero, EtaDenominatorNearZero, PrecisionError, EvaluationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
