#!/usr/bin/env python3
"""Render the bound-family CSV produced by `intervalbound curve` as a PNG.

    intervalbound curve --out family.csv
    python scripts/plot_curve.py family.csv --out family.png

Each line shows the sharp bound as a function of b for one asymmetry ratio
k = a/b; k = 1 is the modified Chebyshev bound and k = inf the Cantelli
bound.
"""
import argparse
import csv
from collections import defaultdict

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("csv_path")
    parser.add_argument("--out", default="curve.png")
    args = parser.parse_args()

    series = defaultdict(list)
    with open(args.csv_path, newline="") as fh:
        for row in csv.DictReader(fh):
            series[row["k"]].append((float(row["b"]), float(row["bound"])))

    fig, ax = plt.subplots(figsize=(6, 4))
    for k, points in sorted(series.items(), key=lambda kv: float(kv[0])):
        points.sort()
        label = "k = ∞" if float(k) == float("inf") else f"k = {k}"
        ax.plot([b for b, _ in points], [v for _, v in points], label=label, lw=1.2)
    ax.set_xlabel("b")
    ax.set_ylabel("sharp bound on P(X ∉ (−kb, b))")
    ax.set_ylim(0, 1.05)
    ax.legend(fontsize=8)
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(args.out, dpi=150)
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
