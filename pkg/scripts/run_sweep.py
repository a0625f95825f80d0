#!/usr/bin/env python3
"""Run the standard mixed-metric sweep and emit CSV, summary, and SVG.

Equivalent to `sdglab sweep --family standard`, kept as a script so the
default experiment is one command:

    python3 scripts/run_sweep.py --seed 20260810 --trials 4 --out sweep.csv
"""
import argparse
import sys
import time

from sdglab.sweep import emit_csv, emit_summary, emit_svg, run_sweep, standard_suite


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=20260810)
    ap.add_argument("--trials", type=int, default=4, help="repeats per grid cell (4 -> 1144 instances)")
    ap.add_argument("--ham", choices=["exact", "approx", "auto"], default="approx")
    ap.add_argument("--workers", type=int, default=None)
    ap.add_argument("--out", default="sweep.csv")
    ap.add_argument("--svg", default=None)
    args = ap.parse_args()

    specs = standard_suite(args.seed, trials=args.trials)
    t0 = time.time()
    records = run_sweep(specs, ham_mode=args.ham, workers=args.workers)
    elapsed = time.time() - t0
    emit_csv(records, args.out)
    if args.svg:
        emit_svg(records, args.svg)
    print(emit_summary(records))
    print(f"evaluated {len(records)} instances in {elapsed:.1f}s -> {args.out}")
    bad = [r for r in records if not (r.within_bound() and r.cert_ok)]
    if bad:
        print(f"FAILED: {len(bad)} records violate their invariants", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
