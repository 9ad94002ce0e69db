"""Histogram of the least m for which span(v_1..v_m) meets the positive
orthant, for random Gaussian bases, against its binomial law."""
import argparse
import json

from bocce.montecarlo import least_m_histogram


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, nargs="+", default=[3, 5, 8])
    ap.add_argument("--trials", type=int, default=10_000)
    ap.add_argument("--seed", type=int, default=2024)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()

    for n in args.n:
        res = least_m_histogram(n, args.trials, args.seed, workers=args.workers)
        print(json.dumps(res.to_dict()))


if __name__ == "__main__":
    main()
