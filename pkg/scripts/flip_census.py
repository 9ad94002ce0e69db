"""Count favorable sign flips of random Gaussian games and compare with
the region count r(m+n, m)."""
import argparse

import numpy as np

from bocce.exact import regions
from bocce.games import favorable_flip_count
from bocce.lp import parse_mode


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--per-shape", type=int, default=25)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--mode", default="rational")
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    mode = parse_mode(args.mode)
    print("m,n,expected,matches,trials")
    for m, n in [(1, 1), (1, 2), (2, 2), (2, 3), (3, 3), (2, 4)]:
        want = regions(m + n, m)
        hits = sum(
            favorable_flip_count(rng.standard_normal((m, n)).tolist(), mode) == want
            for _ in range(args.per_shape)
        )
        print(f"{m},{n},{want},{hits},{args.per_shape}")


if __name__ == "__main__":
    main()
