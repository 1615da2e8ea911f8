#!/usr/bin/env python3
"""Benchmark the compiled search core against the pure-Python twin.

Runs the backtracking table search for both axiom readings at each size and
prints wall-clock times plus the speedup.  Both cores must return identical
model streams and node counts; the benchmark asserts this as it goes.

Usage: python3 benchmarks/bench_search.py [--max-size N] [--repeat K]
"""

import argparse
import time

from abeforge import _speed_py

try:
    from abeforge import _speed
except ImportError:
    _speed = None


def _time(core, n, implicative, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        start = time.perf_counter()
        result = core.search_tables(n, implicative)
        best = min(best, time.perf_counter() - start)
    return best, result


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-size", type=int, default=6)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    if _speed is None:
        print("compiled core not available; nothing to compare")
        return

    print(f"{'system':>16} {'n':>3} {'tables':>8} {'nodes':>10} "
          f"{'python ms':>10} {'cython ms':>10} {'speedup':>8}")
    for implicative in (False, True):
        name = "implicative-aBE" if implicative else "aBE"
        for n in range(1, args.max_size + 1):
            t_c, (tables_c, nodes_c, _) = _time(_speed, n, implicative, args.repeat)
            t_p, (tables_p, nodes_p, _) = _time(_speed_py, n, implicative, args.repeat)
            assert tables_c == tables_p and nodes_c == nodes_p
            speedup = t_p / t_c if t_c > 0 else float("inf")
            print(f"{name:>16} {n:>3} {len(tables_c):>8} {nodes_c:>10} "
                  f"{t_p * 1000:>10.2f} {t_c * 1000:>10.2f} {speedup:>7.1f}x")


if __name__ == "__main__":
    main()
