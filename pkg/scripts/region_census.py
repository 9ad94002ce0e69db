"""Count regions of random central arrangements and tabulate misses
against the closed-form r(n, d)."""
import argparse

import numpy as np

from bocce.exact import regions
from bocce.geometry import count_regions
from bocce.lp import parse_mode


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--configs", type=int, default=20)
    ap.add_argument("--max-n", type=int, default=10)
    ap.add_argument("--max-d", type=int, default=4)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--mode", default="float")
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    mode = parse_mode(args.mode)
    print("n,d,r(n,d),misses,configs")
    for n in range(2, args.max_n + 1):
        for d in range(2, args.max_d + 1):
            misses = sum(
                count_regions(rng.standard_normal((n, d)).tolist(), mode).region_count != regions(n, d)
                for _ in range(args.configs)
            )
            print(f"{n},{d},{regions(n, d)},{misses},{args.configs}")


if __name__ == "__main__":
    main()
