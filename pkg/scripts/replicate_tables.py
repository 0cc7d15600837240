#!/usr/bin/env python3
"""Regenerate the planning reference grids (sample sizes and thresholds).

Prints both tables for q in {2, 3, 5, 7, 11, 13, 17} and n = 1..10 in the
published layout, plus the closed-form upper estimate for N where it says
anything (q >= 3 and positive denominator).  By default uses the
two-decimal quantile that reproduces the published grids cell for cell;
pass --precise for the full-precision quantile instead.

Usage:
    python3 scripts/replicate_tables.py
    python3 scripts/replicate_tables.py --epsilon 0.01 --precise
    python3 scripts/replicate_tables.py --csv-dir out/
"""

import argparse
import sys
import time
from pathlib import Path

from irredtest import (
    COMPAT_S,
    TABLE_NS,
    TABLE_QS,
    emit_table_csv,
    estimate_N_bound,
    inverse_tail_quantile,
    table_grid,
)


def print_grid(rows, title):
    print(title)
    width = max(
        [len(str(c)) for _, cells in rows for c in cells] + [5]
    )
    header = "n\\q " + " ".join(f"{q:>{width}}" for q in TABLE_QS)
    print(header)
    print("-" * len(header))
    for n, cells in rows:
        print(f"{n:>3}  " + " ".join(f"{str(c):>{width}}" for c in cells))
    print()


def print_estimate_bounds(epsilon, s):
    print("closed-form upper estimate for N (blank where inconclusive)")
    width = 9
    header = "n\\q " + " ".join(f"{q:>{width}}" for q in TABLE_QS if q >= 3)
    print(header)
    print("-" * len(header))
    for n in TABLE_NS:
        cells = []
        for q in TABLE_QS:
            if q < 3:
                continue
            bound = estimate_N_bound(q, n, epsilon, s=s)
            cells.append("" if bound is None else str(bound))
        print(f"{n:>3}  " + " ".join(f"{c:>{width}}" for c in cells))
    print()


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--epsilon", type=float, default=0.005,
                        help="per-tail error budget (default 0.005)")
    parser.add_argument("--precise", action="store_true",
                        help="use the full-precision quantile instead of "
                             "the tabulated two-decimal one")
    parser.add_argument("--csv-dir", type=Path, default=None,
                        help="also write table_N.csv and table_threshold.csv here")
    args = parser.parse_args(argv)

    s = None if args.precise else COMPAT_S
    shown = inverse_tail_quantile(args.epsilon) if args.precise else COMPAT_S
    print(f"epsilon = {args.epsilon}, quantile s = {shown}")
    print()

    t0 = time.perf_counter()
    n_rows = table_grid(args.epsilon, "N", s=s)
    t_rows = table_grid(args.epsilon, "threshold", s=s)
    elapsed = time.perf_counter() - t0

    print_grid(n_rows, "required sample count N ('inf' = no N separates the hypotheses)")
    print_grid(t_rows, "decision threshold on the zero count k")
    print_estimate_bounds(args.epsilon, s)
    print(f"grids computed in {elapsed * 1000:.1f} ms")

    if args.csv_dir is not None:
        args.csv_dir.mkdir(parents=True, exist_ok=True)
        for which, name in (("N", "table_N.csv"), ("threshold", "table_threshold.csv")):
            path = args.csv_dir / name
            path.write_text(emit_table_csv(args.epsilon, which, s=s))
            print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
