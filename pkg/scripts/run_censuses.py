"""Tree and small-graph censuses, written as JSON lines.

    python3 scripts/run_censuses.py --out results/censuses.jsonl
"""

import argparse
import json
import time
from pathlib import Path

from walklab import enumeration as en


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--ambivalent-max", type=int, default=13)
    ap.add_argument("--identifiable-max", type=int, default=en.LIMITS.identifiability_n)
    ap.add_argument("--cross-max", type=int, default=11)
    ap.add_argument("--decisive-max", type=int, default=en.LIMITS.max_graph_n)
    ap.add_argument("--out", default="results/censuses.jsonl")
    args = ap.parse_args()
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)

    with out.open("w") as fh:
        def put(obj):
            fh.write(json.dumps(obj, sort_keys=True) + "\n")
            fh.flush()
            print(json.dumps(obj, sort_keys=True)[:200])

        for n in range(1, args.ambivalent_max + 1):
            t0 = time.perf_counter()
            rep = en.ambivalent_vertex_census(n, "walk")
            put({"census": "ambivalent", "n": n, "tree_pairs": rep.tree_pairs(),
                 "strong": len(rep.strong_pairs), "within": len(rep.within),
                 "seconds": round(time.perf_counter() - t0, 2)})
        for mode, top in (("strong", args.cross_max), ("closed", 7), ("walk", args.cross_max)):
            put({"census": "cross-size", "mode": mode, "n_max": top,
                 "tree_pairs": en.tree_pairs(en.cross_size_census(top, mode))})
        rep = en.walk_identifiability_census(args.identifiable_max)
        put({"census": "identifiability", "n_max": args.identifiable_max,
             "counts": rep.counts, "collisions": rep.collisions})
        for row in en.decisive_census(args.decisive_max):
            put({"census": "decisive", **row.__dict__})


if __name__ == "__main__":
    main()
