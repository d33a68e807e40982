"""Rate of random labeled trees with a non-similar strongly walk-equivalent
vertex pair, over a grid of sizes.

    python3 scripts/tree_trend.py --n 11,13,15,25,60 --trials 500 --seed 7
"""

import argparse

from walklab.theorems import random_tree_ambivalence_trial


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", default="5,11,25,60")
    ap.add_argument("--trials", type=int, default=500)
    ap.add_argument("--seed", type=int, required=True)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()
    print("n,trials,collisions,rate")
    for n in (int(x) for x in args.n.split(",")):
        r = random_tree_ambivalence_trial(n, args.trials, args.seed, args.workers)
        print(f"{n},{r.trials},{r.collisions},{r.rate:.6f}", flush=True)


if __name__ == "__main__":
    main()
