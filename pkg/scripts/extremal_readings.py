#!/usr/bin/env python3
"""Tabulate the two parameter readings of the extremal problem at small n.

For k * l = n - 1 the window size and the chain bound can trade places:
window 1 with chain bound n - 1 admits every family (2^n), while window
n - 1 with chain bound 1 forces antichain traces.  This script computes
both values exactly side by side, plus the optimum and its witness count
at window n - 1 for each chain bound, so the asymmetry is visible at a
glance.
"""

from __future__ import annotations

import argparse

from trace_sperner.search import dual_reading_values, f_exact


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--min-n", type=int, default=2)
    parser.add_argument("--max-n", type=int, default=5)
    parser.add_argument(
        "--time-budget",
        type=float,
        default=None,
        help="per-search budget in seconds; omitted means run to completion",
    )
    args = parser.parse_args(argv)
    if not 2 <= args.min_n <= args.max_n:
        parser.error("need 2 <= min-n <= max-n")

    capped = False
    print("dual readings: f(n, n-1, 1) versus f(n, 1, n-1)")
    print(f"{'n':>3} {'window=1':>10} {'window=n-1':>12}")
    for n in range(args.min_n, args.max_n + 1):
        report = dual_reading_values(n, time_budget=args.time_budget)
        w1 = report.small_window
        wn = report.small_k
        star = "" if w1.exhaustive and wn.exhaustive else " *"
        capped = capped or bool(star)
        print(f"{n:>3} {w1.value:>10} {wn.value:>12}{star}")
    print()

    print("optima at window n - 1 by chain bound")
    print(f"{'n':>3} {'k':>3} {'value':>7} {'witness classes':>16}")
    for n in range(args.min_n, args.max_n + 1):
        for k in range(1, n):
            cert = f_exact(n, k, n - 1, time_budget=args.time_budget)
            classes = cert.witness_class_count if cert.witnesses_complete else "partial"
            star = "" if cert.exhaustive else " *"
            capped = capped or bool(star)
            print(f"{n:>3} {k:>3} {cert.value:>7} {classes:>16}{star}")
    if capped:
        print()
        print("* search hit its time budget; the value is a lower bound only")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
