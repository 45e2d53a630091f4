#!/usr/bin/env python3
"""Sweep a log-spaced (a, b) grid and cross-check every bound numerically.

For each canonical pair this runs the three-atom primal search, the grid
dual LP, and the certificate check, then prints one table row with the
gaps.  Exits nonzero if any pair fails, so it doubles as a slow end-to-end
check:

    python scripts/verify_sweep.py --points 8 --lo 0.2 --hi 8
"""
import argparse
import sys

import numpy as np

from intervalbound import GridSpec, bound, canonicalize, default_grid, full_verification


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--points", type=int, default=8, help="grid points per axis")
    parser.add_argument("--lo", type=float, default=0.2)
    parser.add_argument("--hi", type=float, default=8.0)
    parser.add_argument("--grid-steps", type=int, default=1001)
    parser.add_argument("--primal-steps", type=int, default=151)
    args = parser.parse_args()

    values = np.geomspace(args.lo, args.hi, args.points)
    seen = set()
    failures = 0
    print(f"{'a':>9} {'b':>9} {'case':<13} {'closed':>10} {'primal_gap':>12} {'dual_gap':>12} {'cert':>5}")
    for x in values:
        for y in values:
            spec = canonicalize(float(max(x, y)), float(min(x, y)))
            if (spec.a, spec.b) in seen:
                continue
            seen.add((spec.a, spec.b))
            base = default_grid(spec)
            report = full_verification(
                spec,
                grid=GridSpec(base.lo, base.hi, args.grid_steps),
                primal_grid=GridSpec(base.lo, base.hi, args.primal_steps),
            )
            case = bound(spec).case.value
            ok = report.passed
            failures += 0 if ok else 1
            print(
                f"{spec.a:9.4f} {spec.b:9.4f} {case:<13} {report.closed_form:10.6f} "
                f"{report.primal_gap:12.3e} {report.dual_gap:12.3e} {'ok' if ok else 'FAIL':>5}"
            )
    print(f"\n{len(seen)} pairs checked, {failures} failures")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
