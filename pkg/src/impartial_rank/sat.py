"""A small CNF toolkit: DIMACS I/O and a budgeted DPLL solver.

Meant for subset encodings and tests.  Large instances should go to an
external solver through the DIMACS writer.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import IO, Iterable, Iterator, Sequence

SAT, UNSAT, BUDGET = "SAT", "UNSAT", "BUDGET-EXCEEDED"


@dataclass
class CNF:
    num_vars: int
    clauses: list[tuple[int, ...]] = field(default_factory=list)

    def add(self, *lits: int) -> None:
        self.clauses.append(tuple(lits))

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        return iter(self.clauses)

    def __len__(self) -> int:
        return len(self.clauses)


def write_dimacs(out: IO[str], num_vars: int, num_clauses: int, clauses: Iterable[Sequence[int]]) -> int:
    """Stream clauses in DIMACS format; returns the number written (must match the header)."""
    out.write(f"p cnf {num_vars} {num_clauses}\n")
    written = 0
    buf = []
    for c in clauses:
        buf.append(" ".join(map(str, c)) + " 0\n")
        written += 1
        if len(buf) >= 65536:
            out.write("".join(buf))
            buf.clear()
    out.write("".join(buf))
    if written != num_clauses:
        raise AssertionError(f"header promised {num_clauses} clauses, wrote {written}")
    return written


def parse_dimacs(text: str) -> CNF:
    cnf: CNF | None = None
    pending: list[int] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ValueError(f"line {lineno}: bad header {line!r}")
            cnf = CNF(int(parts[2]))
            continue
        if cnf is None:
            raise ValueError(f"line {lineno}: clause before header")
        for tok in line.split():
            lit = int(tok)
            if lit == 0:
                cnf.clauses.append(tuple(pending))
                pending = []
            else:
                pending.append(lit)
    if cnf is None:
        raise ValueError("missing 'p cnf' header")
    if pending:
        cnf.clauses.append(tuple(pending))
    return cnf


@dataclass(frozen=True)
class SatResult:
    status: str
    model: dict[int, bool] | None = None
    nodes: int = 0

    @property
    def sat(self) -> bool:
        return self.status == SAT


def dpll_solve(cnf: CNF, node_budget: int | None = 1_000_000) -> SatResult:
    """Chronological DPLL with two-watched-literal unit propagation.

    ``nodes`` counts branching decisions including flips.  Exceeding the budget is
    reported as BUDGET-EXCEEDED, never as UNSAT.
    """
    nv = cnf.num_vars
    val = [0] * (nv + 1)  # +1 true, -1 false, 0 free
    clauses: list[list[int]] = []
    units: list[int] = []
    for c in cnf.clauses:
        lits = list(dict.fromkeys(c))
        if any(-l in lits for l in lits):
            continue  # tautology
        if not lits:
            return SatResult(UNSAT)
        for l in lits:
            if not 1 <= abs(l) <= nv:
                raise ValueError(f"literal {l} outside 1..{nv}")
        if len(lits) == 1:
            units.append(lits[0])
        else:
            clauses.append(lits)
    watches: dict[int, list[int]] = {}
    for ci, c in enumerate(clauses):
        watches.setdefault(c[0], []).append(ci)
        watches.setdefault(c[1], []).append(ci)

    trail: list[int] = []

    def value(lit: int) -> int:
        v = val[abs(lit)]
        return v if lit > 0 else -v

    def assign(lit: int) -> bool:
        v = value(lit)
        if v == 1:
            return True
        if v == -1:
            return False
        val[abs(lit)] = 1 if lit > 0 else -1
        trail.append(lit)
        return True

    def propagate(start: int) -> bool:
        head = start
        while head < len(trail):
            false_lit = -trail[head]
            head += 1
            wl = watches.get(false_lit)
            if not wl:
                continue
            keep = []
            conflict = False
            i = 0
            while i < len(wl):
                ci = wl[i]
                i += 1
                c = clauses[ci]
                if c[0] == false_lit:
                    c[0], c[1] = c[1], c[0]
                if value(c[0]) == 1:
                    keep.append(ci)
                    continue
                for k in range(2, len(c)):
                    if value(c[k]) != -1:
                        c[1], c[k] = c[k], c[1]
                        watches.setdefault(c[1], []).append(ci)
                        break
                else:
                    keep.append(ci)
                    if not assign(c[0]):
                        conflict = True
                        keep.extend(wl[i:])
                        break
            watches[false_lit] = keep
            if conflict:
                return False
        return True

    for u in units:
        if not assign(u):
            return SatResult(UNSAT)
    if not propagate(0):
        return SatResult(UNSAT)

    # variables in no clause are set false without branching
    order = sorted({abs(l) for c in clauses for l in c})
    # decision stack entries: (trail length before the decision, literal, flipped?)
    stack: list[tuple[int, int, bool]] = []
    nodes = 0
    next_var = 0
    while True:
        while next_var < len(order) and val[order[next_var]] != 0:
            next_var += 1
        if next_var == len(order):
            return SatResult(SAT, {v: val[v] == 1 for v in range(1, nv + 1)}, nodes)
        if node_budget is not None and nodes >= node_budget:
            return SatResult(BUDGET, nodes=nodes)
        nodes += 1
        lit = -order[next_var]
        stack.append((len(trail), lit, False))
        assign(lit)
        ok = propagate(len(trail) - 1)
        backtracked = not ok
        while not ok:
            # undo to the most recent decision that still has an untried phase
            while stack and stack[-1][2]:
                mark, _, _ = stack.pop()
                _undo(trail, val, mark)
            if not stack:
                return SatResult(UNSAT, nodes=nodes)
            mark, lit, _ = stack.pop()
            _undo(trail, val, mark)
            if node_budget is not None and nodes >= node_budget:
                return SatResult(BUDGET, nodes=nodes)
            nodes += 1
            stack.append((mark, -lit, True))
            assign(-lit)
            ok = propagate(len(trail) - 1)
        if backtracked:
            next_var = 0


def _undo(trail: list[int], val: list[int], mark: int) -> None:
    while len(trail) > mark:
        val[abs(trail.pop())] = 0


def check_model(cnf: CNF, model: dict[int, bool]) -> bool:
    return all(any(model.get(abs(l), False) == (l > 0) for l in c) for c in cnf.clauses)
