"""Retry statistics of the seeded multigraph search for n = 11.. and a range of seeds.

    python3 scripts/graph_search_stats.py --n-max 16 --seeds 20
"""

import argparse
import json
import statistics
import time

from impartial_rank.blocking import lll_margin, search_multigraph, successor_rho


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--n-min", type=int, default=11)
    ap.add_argument("--n-max", type=int, default=16)
    ap.add_argument("--seeds", type=int, default=10)
    ap.add_argument("--max-retries", type=int, default=1000)
    args = ap.parse_args()

    rows = []
    for n in range(args.n_min, args.n_max + 1):
        rho = successor_rho(n)
        t0 = time.perf_counter()
        attempts = [search_multigraph(n, rho, s, args.max_retries)[1] for s in range(args.seeds)]
        rows.append({
            "n": n,
            "lll_margin": round(lll_margin(n), 4),
            "median_attempts": statistics.median(attempts),
            "mean_attempts": round(statistics.fmean(attempts), 2),
            "max_attempts": max(attempts),
            "seconds": round(time.perf_counter() - t0, 2),
        })
        print(json.dumps(rows[-1]))


if __name__ == "__main__":
    main()
