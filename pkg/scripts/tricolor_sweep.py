"""Exhaustive decisive-triple sweep of the weakly unanimous mechanism.

For n = 5 this checks all 120^3 triples; --jobs splits the p-range across processes.
"""

import argparse
import json
import math
import time

from impartial_rank.tricolor import sweep_all_triples


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=5)
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()
    if args.n > 5:
        print(f"warning: {math.factorial(args.n) ** 3:,} triples; this will take a long time")
    t0 = time.perf_counter()
    res = sweep_all_triples(args.n, jobs=args.jobs)
    res["seconds"] = round(time.perf_counter() - t0, 2)
    print(json.dumps(res))


if __name__ == "__main__":
    main()
