"""Estimate every scenario in the comparison grid and write one CSV row per run.

    python scripts/monte_carlo_grid.py --trials 100000 --seed 2024 --out grid.csv
"""
import argparse
import sys

from bocce.checks import monte_carlo_cells
from bocce.montecarlo import CSV_FIELDS, ExperimentConfig, estimate_with_retry


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trials", type=int, default=100_000)
    ap.add_argument("--seed", type=int, default=2024)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--out", help="CSV path (default: stdout)")
    args = ap.parse_args()

    out = open(args.out, "w") if args.out else sys.stdout
    print(",".join(CSV_FIELDS + ("label", "retry")), file=out)
    for label, kw in monte_carlo_cells():
        cfg = ExperimentConfig(trials=args.trials, master_seed=args.seed, **kw)
        for i, rep in enumerate(estimate_with_retry(cfg, args.workers)):
            print(f"{rep.csv_row()},{label},{i}", file=out, flush=True)
            status = "ok" if rep.covers_exact else "MISS"
            print(f"{label:28s} {rep.estimate:.5f} vs {float(rep.exact_reference):.5f} {status}",
                  file=sys.stderr)
    if args.out:
        out.close()


if __name__ == "__main__":
    main()
