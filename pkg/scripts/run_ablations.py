#!/usr/bin/env python3
"""Run the desk-scale ablation sweeps and write one CSV per axis.

Covers the dimension sweep (128..4096), the mapping-kind comparison
(ground truth vs random), the bundled-pair-count sweep verifying the
1/sqrt(k) recovery law, and the mixing-fraction sweep that interpolates
between a random and the ground-truth mapping.
"""

import argparse
from pathlib import Path

from vsabench.bench import BenchConfig, reports_to_csv, run_sweep

SWEEPS = [
    ("dim", [128, 512, 2048, 4096], {"k": 4}),
    ("mapping_kind", ["ground_truth", "random"], {"k": 2}),
    ("k", [1, 2, 4, 8, 16], {}),
    ("lambda_proxy", [0.0, 0.25, 0.5, 0.75, 1.0], {"k": 4, "dim": 512}),
]


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out-dir", default="results", help="directory for CSV output")
    parser.add_argument("--trials", type=int, default=100)
    parser.add_argument("--seed", type=int, default=7)
    args = parser.parse_args()

    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    for axis, grid, overrides in SWEEPS:
        base = BenchConfig(trials=args.trials, seed=args.seed, **overrides)
        results = run_sweep(axis, grid, base)
        path = out_dir / f"sweep_{axis}.csv"
        path.write_text(reports_to_csv(axis, results), encoding="utf-8", newline="")
        print(f"wrote {path}")
        for value, r in results:
            print(
                f"  {axis}={value}: recovery_cosine={r.recovery_cosine:.4f} "
                f"cleanup_accuracy={r.cleanup_accuracy:.4f}"
            )


if __name__ == "__main__":
    main()
