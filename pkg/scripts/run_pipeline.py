#!/usr/bin/env python3
"""Run the whole CLI pipeline on a synthetic corpus.

Usage: python scripts/run_pipeline.py [--seed N] [--out DIR]
"""

import argparse
import sys
from pathlib import Path

from fecund.cli import main as fecund


def run(step):
    print("+ fecund " + " ".join(str(s) for s in step))
    code = fecund([str(s) for s in step])
    if code != 0:
        sys.exit(code)


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--seed", type=int, default=17)
    parser.add_argument("--out", default="out/pipeline")
    parser.add_argument("--n-docs", type=int, default=60)
    args = parser.parse_args()
    root = Path(args.out)
    corpus, coded, sel, sat, ana, sweep = (
        root / n for n in ("corpus", "coded", "sel", "sat", "ana", "sweep")
    )

    run(["synth", "--out", corpus, "--seed", args.seed, "--n-docs", args.n_docs,
         "--with-text"])
    run(["code", "--docs", corpus / "documents.jsonl", "--backend", "mock",
         "--seed", args.seed, "--out", coded])
    run(["select", "--docs", corpus / "documents.jsonl",
         "--codes", coded / "ai_codes.csv", "--coder-source", "ai",
         "--seed", args.seed, "--budget-docs", 10, "--control-docs", 10,
         "--out", sel])
    run(["saturate", "--docs", corpus / "documents.jsonl",
         "--codes", corpus / "codes.csv", "--coder-source", "human",
         "--seed", args.seed, "--order", sel / "manifest.csv",
         "--regimes", "unique,hf_retrospective,hf_iterative,themes",
         "--themes", corpus / "themes.csv",
         "--bootstrap", "--iterations", 2000, "--plot", "--out", sat])
    run(["analyze", "--docs", corpus / "documents.jsonl",
         "--codes", f"{corpus / 'codes.csv'},{coded / 'ai_codes.csv'}",
         "--manifest", sel / "manifest.csv", "--unblinding", sel / "unblinding.csv",
         "--outcome-source", "human", "--density-source", "ai", "--out", ana])
    half = max(2, args.n_docs // 2)
    run(["sweep", "--docs", corpus / "documents.jsonl",
         "--codes", coded / "ai_codes.csv", "--coder-source", "ai",
         "--seed", args.seed, "--sizes", f"{half},{args.n_docs}", "--replicates", 5,
         "--budget-docs", 10, "--quadratic", "0,1,0", "--plot", "--out", sweep])
    print(f"\nall outputs under {root}/")


if __name__ == "__main__":
    main()
