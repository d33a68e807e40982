"""Tightness families for the walk-length bound: P_n/Y_n, the
Krebs-Verbitsky pairs and the padded pairs of the sqrt(n) bound.

Exit status is 1 if any check fails.
"""

import argparse
import sys

from walklab import theorems as th


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--pn-max", type=int, default=40)
    ap.add_argument("--kv", default="3:2,3:3,6:2,9:3")
    ap.add_argument("--part3", default="50,100")
    args = ap.parse_args()
    reports = [th.verify_pn_yn(n, strict=False) for n in range(5, args.pn_max + 1)]
    for item in args.kv.split(","):
        s, t = map(int, item.split(":"))
        reports.append(th.verify_krebs_verbitsky(s, t, strict=False))
    reports += [th.verify_part3_bound(int(n), strict=False) for n in args.part3.split(",")]
    for r in reports:
        print(r.to_json())
    sys.exit(0 if all(r.ok for r in reports) else 1)


if __name__ == "__main__":
    main()
