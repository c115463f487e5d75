"""Compare the numba kernels with the numpy fallback on census workloads.

Usage::

    python3 benchmarks/bench_census.py               # n = 8, 9; both strategies
    python3 benchmarks/bench_census.py --n 10 --strategy mitm --repeat 1

Each configuration runs once untimed (JIT compilation, cache warm-up) and is
then timed ``--repeat`` times; the best time is reported. Results must agree
between the two paths, otherwise the script exits with status 1.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from psipos.census import census_problem, count_f


def _time(n: int, strategy: str, use_jit: bool, threads: int, repeat: int) -> tuple[float, int]:
    count_f(n, strategy, threads=threads, use_jit=use_jit, joint=False)
    best = float("inf")
    f = -1
    for _ in range(repeat):
        start = time.perf_counter()
        f = count_f(n, strategy, threads=threads, use_jit=use_jit, joint=False).f
        best = min(best, time.perf_counter() - start)
    return best, f


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, action="append", help="degree (repeatable; default 8 and 9)")
    parser.add_argument("--strategy", choices=("direct", "mitm"), action="append")
    parser.add_argument("--threads", type=int, default=1)
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--json", action="store_true", help="print results as JSON")
    args = parser.parse_args(argv)
    ns = args.n or [8, 9]
    strategies = args.strategy or ["direct", "mitm"]

    rows = []
    for n in ns:
        m = census_problem(n).m
        for strategy in strategies:
            if strategy == "direct" and m > 30:
                continue
            jit_s, jit_f = _time(n, strategy, True, args.threads, args.repeat)
            np_s, np_f = _time(n, strategy, False, args.threads, args.repeat)
            rows.append(
                {
                    "n": n,
                    "strategy": strategy,
                    "subsets": 1 << m,
                    "f": jit_f,
                    "numba_s": round(jit_s, 4),
                    "numpy_s": round(np_s, 4),
                    "speedup": round(np_s / jit_s, 2) if jit_s else None,
                    "agree": jit_f == np_f,
                }
            )
    if args.json:
        print(json.dumps(rows, indent=2))
    else:
        print(f"{'n':>3} {'strategy':>8} {'subsets':>12} {'f':>14} {'numba s':>9} {'numpy s':>9} {'speedup':>8}")
        for r in rows:
            print(
                f"{r['n']:>3} {r['strategy']:>8} {r['subsets']:>12} {r['f']:>14} "
                f"{r['numba_s']:>9.3f} {r['numpy_s']:>9.3f} {r['speedup']:>8.2f}"
                + ("" if r["agree"] else "  DISAGREE")
            )
    return 0 if all(r["agree"] for r in rows) else 1


if __name__ == "__main__":
    sys.exit(main())
