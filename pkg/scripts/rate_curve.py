"""Collision rate of the closed-walk triple labeling on G(n, 1/2).

    python3 scripts/rate_curve.py --n 10,25,100,400 --trials 2000 --seed 2024 > rates.csv
"""

import argparse
import sys

from walklab.theorems import rate_curve, rate_curve_csv


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", default="25,100,400")
    ap.add_argument("--trials", type=int, default=2000)
    ap.add_argument("--seed", type=int, required=True)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()
    ns = [int(x) for x in args.n.split(",")]
    sys.stdout.write(rate_curve_csv(rate_curve(ns, args.trials, args.seed, args.workers)))


if __name__ == "__main__":
    main()
