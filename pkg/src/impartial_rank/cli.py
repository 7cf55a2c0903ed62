"""Command-line entry point: ``impartial-rank <command> ...``.

JSON results go to standard output and diagnostics to standard error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Sequence

from . import _data
from .axioms import AXIOMS, INCONCLUSIVE, ModeInfeasible, claimed_axioms, run_axioms
from .blocking import (
    DEFAULT_MAX_RETRIES,
    RetriesExhausted,
    blocking_from_multigraph,
    fixture_multigraph,
    g4_table,
    lll_margin,
    search_multigraph,
    successor_rho,
)
from .descriptors import KINDS, DescriptorError, MechanismDescriptor
from .impossibility import (
    encode_wu_n4,
    refute_impartial_ifr,
    unanimity_chain_audit,
    validate_rotation_claim,
)
from .perms import CapacityError, ProfileFormatError, RankingProfile, profile_from_json
from .tricolor import cutting_family

EXIT_OK, EXIT_VIOLATED, EXIT_PARSE, EXIT_DESCRIPTOR, EXIT_RETRIES, EXIT_CAPACITY = 0, 1, 2, 3, 4, 5

EXIT_CODES_HELP = """exit codes:
  0  success (all selected axioms hold; or the requested artifact was produced)
  1  an axiom is violated, or a result is not conclusive
  2  input file could not be parsed or failed validation
  3  mechanism descriptor or parameters are inconsistent
  4  multigraph search exhausted its retries
  5  n exceeds the supported maximum (20)
"""


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _emit(obj: Any, out: str | None = None) -> None:
    text = json.dumps(obj, sort_keys=True)
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


def _read_json(path: str) -> Any:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise CliError(EXIT_PARSE, f"{path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise CliError(EXIT_PARSE, f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def _descriptor(args: argparse.Namespace) -> MechanismDescriptor:
    if getattr(args, "descriptor", None):
        data = _read_json(args.descriptor)
        if not isinstance(data, dict):
            raise CliError(EXIT_PARSE, f"{args.descriptor}: descriptor must be a JSON object")
        return MechanismDescriptor.from_json(data)
    if args.mechanism is None or args.n is None:
        raise DescriptorError("give --mechanism and --n, or --descriptor FILE")
    return MechanismDescriptor(args.mechanism, args.n, args.seed, max_retries=args.max_retries)


def _add_mechanism_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--mechanism", choices=KINDS, help="mechanism kind ('blocking' picks by n)")
    p.add_argument("--n", type=int, help="number of agents")
    p.add_argument("--seed", type=int, default=None, help="multigraph seed for blocking-random")
    p.add_argument("--max-retries", type=int, default=DEFAULT_MAX_RETRIES)
    p.add_argument("--descriptor", help="JSON file {kind, n, seed?} instead of the flags above")


# ------------------------------------------------------------ commands


def cmd_rank(args: argparse.Namespace) -> int:
    desc = _descriptor(args)
    data = _read_json(args.profile)
    try:
        profile = profile_from_json(data)
    except ProfileFormatError as exc:
        raise CliError(EXIT_PARSE, f"{args.profile}: {exc}") from None
    if profile.n != desc.n:
        raise DescriptorError(f"profile has {profile.n} agents but the mechanism has n={desc.n}")
    out = desc.build().rank(profile)
    _emit({"mechanism": desc.to_json(), "ranking": list(out.image)})
    if not args.quiet:
        print("position  agent")
        for k, agent in enumerate(out.image):
            print(f"{k:>8}  {agent}")
    return EXIT_OK


def _axiom_selection(choice: str, mech: Any) -> list[str]:
    if choice == "claimed":
        chosen = list(claimed_axioms(mech))
        if not chosen:
            raise DescriptorError("this mechanism claims no axioms; pass --axiom all or a name")
        return chosen
    if choice == "all":
        return list(AXIOMS)
    names = [s.strip() for s in choice.split(",") if s.strip()]
    for name in names:
        if name not in AXIOMS:
            raise DescriptorError(f"unknown axiom {name!r}; choose from claimed, all, {', '.join(AXIOMS)}")
    return names


def cmd_verify(args: argparse.Namespace) -> int:
    desc = _descriptor(args)
    mech = desc.build()
    axioms = _axiom_selection(args.axiom, mech)
    mode = "reduced" if args.mode == "exhaustive-triples" else args.mode
    sample_seed = args.sample_seed if args.sample_seed is not None else 0
    reports = run_axioms(mech, axioms, mode=mode, trials=args.trials, seed=sample_seed, jobs=args.jobs)
    _emit({"mechanism": desc.to_json(), "reports": [r.to_json() for r in reports.values()]})
    for r in reports.values():
        print(f"{r.axiom}: {r.verdict} ({r.mode})", file=sys.stderr)
    ok = all(r.holds or (r.verdict == INCONCLUSIVE and args.mode == "sampled") for r in reports.values())
    return EXIT_OK if ok else EXIT_VIOLATED


def cmd_graph_search(args: argparse.Namespace) -> int:
    if args.n > 20:
        raise CapacityError(f"n={args.n} exceeds the supported maximum of 20")
    if args.n < 11:
        raise DescriptorError("random multigraph search is for n >= 11; n = 5..10 have explicit fixtures")
    rho = successor_rho(args.n)
    graph, attempts = search_multigraph(args.n, rho, args.seed, args.max_retries)
    doc = graph.to_json(rho)
    doc.update({"seed": args.seed, "attempts": attempts, "lll_margin": lll_margin(args.n)})
    _emit(doc, args.out)
    print(f"n={args.n} seed={args.seed}: valid multigraph after {attempts} attempt(s)", file=sys.stderr)
    return EXIT_OK


FIXTURES = (
    ["blocking-n4"]
    + [f"blocking-n{n}" for n in range(5, 11)]
    + [f"multigraph-n{n}" for n in range(5, 11)]
    + [f"cutting-n{n}" for n in range(5, 13)]
    + ["matrices-n5"]
)


def export_fixture(name: str) -> dict:
    if name == "blocking-n4":
        return {
            "n": 4, "rho": list(_data.G4_RHO),
            "table": {"".join(map(str, b)): list(p.image) for b, p in sorted(g4_table().items())},
        }
    kind, _, size = name.rpartition("-n")
    n = int(size)
    if kind == "blocking":
        rho, graph = fixture_multigraph(n)
        return {"rho": list(rho), **blocking_from_multigraph(rho, graph).to_json()}
    if kind == "multigraph":
        rho, graph = fixture_multigraph(n)
        return graph.to_json(rho)
    if kind == "cutting":
        return cutting_family(n).to_json()
    if kind == "matrices":
        a = _data.EXAMPLE_TRIPLE_N5
        return {"n": 5, "m": 5, "diagonal": "d^i_p = p + i mod 5", "matrices": {str(i): [list(r) for r in a[i]] for i in range(3)}}
    raise DescriptorError(f"unknown fixture {name!r}")


def cmd_export(args: argparse.Namespace) -> int:
    if args.fixture not in FIXTURES:
        raise DescriptorError(f"unknown fixture {args.fixture!r}; choose from {', '.join(FIXTURES)}")
    _emit(export_fixture(args.fixture), args.out)
    return EXIT_OK


def _load_profiles(path: str) -> list[RankingProfile]:
    data = _read_json(path)
    if isinstance(data, dict) and "profiles" in data:
        data = data["profiles"]
    if not isinstance(data, list):
        raise CliError(EXIT_PARSE, f"{path}: expected a list of profiles or {{\"profiles\": [...]}}")
    out = []
    for k, item in enumerate(data):
        try:
            out.append(profile_from_json(item if isinstance(item, dict) else {"rankings": item}))
        except ProfileFormatError as exc:
            raise CliError(EXIT_PARSE, f"{path}: profiles[{k}]: {exc}") from None
    return out


def cmd_impossibility(args: argparse.Namespace) -> int:
    if args.encode_n4:
        if not args.out:
            raise DescriptorError("--encode-n4 needs --out FILE")
        subset = _load_profiles(args.profiles) if args.profiles else None
        try:
            enc = encode_wu_n4(subset)
        except ProfileFormatError as exc:
            raise CliError(EXIT_PARSE, str(exc)) from None
        with open(args.out, "w") as fh:
            written = enc.write_dimacs(fh)
        sidecar = args.map or args.out + ".map.json"
        with open(sidecar, "w") as fh:
            enc.write_sidecar(fh)
        _emit({"cnf": args.out, "map": sidecar, "variables": enc.num_vars, "clauses": written,
               "scope": "all" if subset is None else len(subset)})
        return EXIT_OK
    if args.n is None:
        raise DescriptorError("give --n 2|3 or --encode-n4")
    if args.n not in (2, 3):
        raise DescriptorError("the refutation covers n = 2 and n = 3")
    res = refute_impartial_ifr(args.n, ifr=not args.no_ifr, rotation_pruning=args.rotation_pruning)
    doc = res.to_json()
    if args.n == 3 and args.rotation_pruning:
        doc["rotation_claim_validated"] = bool(validate_rotation_claim())
    _emit(doc)
    print(f"n={args.n}: {res.status} after {res.nodes} nodes", file=sys.stderr)
    return EXIT_OK


def cmd_audit_unanimity(args: argparse.Namespace) -> int:
    desc = _descriptor(args)
    w = unanimity_chain_audit(desc.build())
    _emit({"mechanism": desc.to_json(), "witness": None if w is None else w.to_json()})
    return EXIT_OK if w is not None and w.kind == "unanimity" else EXIT_VIOLATED


# ------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="impartial-rank",
        description="Impartial ranking mechanisms and machine checks of their axioms.",
        epilog=EXIT_CODES_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rank", help="rank a profile with a mechanism")
    _add_mechanism_args(p)
    p.add_argument("--profile", required=True, help='JSON {"n": N, "rankings": [[...], ...]}, or - for stdin')
    p.add_argument("--quiet", action="store_true", help="JSON line only, no position table")
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("verify", help="check axioms and print JSON reports")
    _add_mechanism_args(p)
    p.add_argument("--axiom", default="claimed", help="claimed (default), all, or comma-separated names")
    p.add_argument("--mode", default="auto", choices=["auto", "exhaustive", "reduced", "exhaustive-triples", "sampled"])
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--sample-seed", type=int, default=None, help="seed for sampled checks (default 0)")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for the decisive-triple sweep")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("graph-search", help="seeded search for a valid multigraph (n >= 11)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--max-retries", type=int, default=DEFAULT_MAX_RETRIES)
    p.add_argument("--out", help="write JSON here instead of standard output")
    p.set_defaults(func=cmd_graph_search)

    p = sub.add_parser("export", help="write a built-in fixture as JSON")
    p.add_argument("--fixture", required=True, help=", ".join(FIXTURES))
    p.add_argument("--out")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("impossibility", help="refutation search (n = 2, 3) or the n = 4 CNF encoding")
    p.add_argument("--n", type=int)
    p.add_argument("--no-ifr", action="store_true", help="drop individual full rank (expect SAT)")
    p.add_argument("--rotation-pruning", action="store_true", help="prune with the validated cyclic-shift claim")
    p.add_argument("--encode-n4", action="store_true")
    p.add_argument("--profiles", help="JSON list of profiles restricting the permutation constraints")
    p.add_argument("--out", help="DIMACS output path")
    p.add_argument("--map", help="variable-map sidecar path (default: OUT.map.json)")
    p.set_defaults(func=cmd_impossibility)

    p = sub.add_parser("audit-unanimity", help="walk the chain profiles and report the unanimity break")
    _add_mechanism_args(p)
    p.set_defaults(func=cmd_audit_unanimity)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except ProfileFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except RetriesExhausted as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RETRIES
    except (DescriptorError, ModeInfeasible) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DESCRIPTOR
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DESCRIPTOR


if __name__ == "__main__":
    sys.exit(main())
