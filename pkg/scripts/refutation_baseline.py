"""Node counts of the n = 2, 3 refutation search, with and without the pruning options."""

import json
import time

from impartial_rank.impossibility import refute_impartial_ifr, validate_rotation_claim


def main() -> None:
    check = validate_rotation_claim()
    print(json.dumps({"rotation_claim": bool(check), "cube_searches": check.searches}))
    for n, ifr, prune in [(2, True, False), (2, False, False), (3, True, False), (3, True, True), (3, False, False)]:
        t0 = time.perf_counter()
        r = refute_impartial_ifr(n, ifr=ifr, rotation_pruning=prune)
        out = r.to_json()
        out["seconds"] = round(time.perf_counter() - t0, 3)
        print(json.dumps(out))


if __name__ == "__main__":
    main()
