"""Write the full-scope n = 4 impartiality + weak unanimity CNF for an external solver.

The instance has 221,184 variables and 8,349,792 clauses (about 140 MB of
DIMACS).  A variable-map sidecar is written next to it.  Expected answer: UNSAT.
"""

import argparse
import json
import time

from impartial_rank.impossibility import encode_wu_n4


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="wu_n4.cnf")
    args = ap.parse_args()
    enc = encode_wu_n4()
    t0 = time.perf_counter()
    with open(args.out, "w") as fh:
        written = enc.write_dimacs(fh)
    with open(args.out + ".map.json", "w") as fh:
        enc.write_sidecar(fh)
    print(json.dumps({"cnf": args.out, "variables": enc.num_vars, "clauses": written,
                      "seconds": round(time.perf_counter() - t0, 1)}))


if __name__ == "__main__":
    main()
