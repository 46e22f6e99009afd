#!/usr/bin/env python3
"""Estimate how the benefit of diversity selection scales with superset size.

Builds a large synthetic AI-coded corpus, then for each subset size draws
random supersets, selects a budgeted corpus from each, and maps the mean
selected-corpus code density through a quadratic onto predicted human code
density, normalized to a random 20-document baseline.

Usage: python scripts/run_superset_sweep.py [--seed N] [--out DIR]
"""

import argparse
import csv
from pathlib import Path

from fecund.stats import IDENTITY_MAP, fit_quadratic, superset_sweep
from fecund.svgplot import line_chart
from fecund.synthetic import synth_corpus


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--seed", type=int, default=42)
    parser.add_argument("--out", default="out/sweep")
    parser.add_argument("--n-docs", type=int, default=2530)
    parser.add_argument("--replicates", type=int, default=10)
    parser.add_argument(
        "--pairs",
        help="csv with ai_density,human_density columns to fit the quadratic; "
        "identity map when omitted",
    )
    args = parser.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    if args.pairs:
        with open(args.pairs, encoding="utf-8", newline="") as fh:
            pairs = [
                (float(r["ai_density"]), float(r["human_density"]))
                for r in csv.DictReader(fh)
            ]
        qmap = fit_quadratic(pairs)
        print(f"quadratic: {qmap.a:.4f} + {qmap.b:.4f}x + {qmap.c:.4f}x^2")
    else:
        qmap = IDENTITY_MAP

    docs, _ = synth_corpus(args.n_docs, seed=args.seed, n_codes=2000, coder_source="ai")
    sizes = [s for s in (50, 100, 250, 500, 1000) if s <= args.n_docs] + [args.n_docs]
    points = superset_sweep(
        docs, "ai", qmap, seed=args.seed, sizes=sizes, replicates=args.replicates
    )
    with open(out / "sweep.csv", "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["size", "mean_ai_density", "predicted_human_density", "normalized_pct"])
        for p in points:
            writer.writerow([p.size, repr(p.mean_ai_density),
                             repr(p.predicted_human_density), repr(p.normalized_pct)])
            print(f"size {p.size:>6}: density {p.mean_ai_density:.4f} "
                  f"-> {p.normalized_pct:.1f}%")
    line_chart(
        out / "sweep.svg",
        [p.size for p in points],
        [p.normalized_pct for p in points],
        title="Predicted benefit vs. superset size",
        x_label="superset size",
        y_label="normalized predicted density (%)",
        points=True,
    )
    print(f"outputs under {out}/")


if __name__ == "__main__":
    main()
