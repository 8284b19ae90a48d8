#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallback.

Times the truncated-series evaluation on representative workloads in both
summation modes and cross-checks that the backends agree. Run directly:

    python benchmarks/bench_backends.py
    python benchmarks/bench_backends.py --m 60 --n 500000 --repeats 5
"""

from __future__ import annotations

import argparse
import time

from progzeta.backends import available_backends
from progzeta.series import eval_truncated
from progzeta.weights import coefficient_set


def time_call(fn, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--m", type=int, default=6)
    parser.add_argument("--s", type=str, default="0.5,100000")
    parser.add_argument("--n", type=int, default=1_000_000)
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()
    re_part, im_part = args.s.split(",")
    s = complex(float(re_part), float(im_part))

    fc, sw = coefficient_set(args.m)
    backends = available_backends()
    print(f"m={args.m}, s={s}, N={args.n} ({args.n * args.m} terms), "
          f"backends: {', '.join(backends)}")

    results = {}
    for name in backends:
        for mode in ("seq", "par"):
            # warm up (JIT compile for numba)
            eval_truncated(sw, s, 1000, mode=mode, backend=name)
            dt = time_call(
                lambda: results.__setitem__(
                    (name, mode), eval_truncated(sw, s, args.n, mode=mode, backend=name)
                ),
                args.repeats,
            )
            rate = args.n * args.m / dt / 1e6
            print(f"  {name:>5}/{mode}: {dt:8.3f} s   {rate:8.1f} M terms/s")

    ref = results[(backends[0], "seq")]
    worst = max(abs(v - ref) / abs(ref) for v in results.values())
    print(f"cross-check: worst relative spread {worst:.2e}")
    if worst > 1e-9:
        raise SystemExit("backends disagree beyond 1e-9; investigate")


if __name__ == "__main__":
    main()
