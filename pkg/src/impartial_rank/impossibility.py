"""Machine checks of the negative results at small n.

* ``refute_impartial_ifr``: no impartial mechanism with individual full rank
  exists for n = 2, 3.  An impartial mechanism is a family of position
  functions h_i(reduced profile); the search looks for one that is
  permutation-valued everywhere and (optionally) surjective per agent.
* ``unanimity_chain_audit``: walks the chain of profiles along which any
  impartial mechanism must break pairwise unanimity.
* ``encode_wu_n4``: CNF encoding of impartiality + weak unanimity at n = 4.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from typing import IO, Any, Iterable, Iterator, Sequence

from .perms import Permutation, ProfileFormatError, RankingProfile, all_permutations, lex_rank, lex_unrank, replace
from .sat import CNF, SatResult, dpll_solve, write_dimacs

# The two cyclic classes of rankings of three agents.
CYCLIC_CLASSES = (((0, 1, 2), (1, 2, 0), (2, 0, 1)), ((0, 2, 1), (2, 1, 0), (1, 0, 2)))


def cyclic_class(image: Sequence[int]) -> int:
    return 0 if tuple(image) in CYCLIC_CLASSES[0] else 1


# ------------------------------------------------------------ position-function search


class PositionSearch:
    """Backtracking over impartial position functions on a finite set of full profiles.

    Profiles are tuples of per-agent input labels.  Agent i's variable for a profile is
    keyed by the profile with coordinate i removed, so impartiality holds by construction.
    Constraints: the positions in each profile are pairwise distinct, optional per-agent
    surjectivity, optional fixed outputs, and optional cyclic-shift pruning (n = 3).
    """

    def __init__(
        self,
        n: int,
        profiles: Sequence[tuple[int, ...]],
        surjective: bool = False,
        rotation_pruning: bool = False,
        fixed: dict[tuple[int, ...], tuple[int, ...]] | None = None,
        node_budget: int | None = None,
    ):
        self.n = n
        self.full = (1 << n) - 1
        self.surjective = surjective
        self.rotation_pruning = rotation_pruning
        self.node_budget = node_budget
        self.profiles = list(profiles)
        keys: dict[tuple[int, tuple[int, ...]], int] = {}
        for prof in self.profiles:
            for i in range(n):
                keys.setdefault((i, prof[:i] + prof[i + 1:]), len(keys))
        # search order: agent, then reduced profile in lexicographic order
        order = sorted(keys, key=lambda k: (k[0], k[1]))
        self.var_key = order
        self.var_of = {k: v for v, k in enumerate(order)}
        self.agent_vars = [[v for v, k in enumerate(order) if k[0] == i] for i in range(n)]
        self.profile_vars = [
            tuple(self.var_of[(i, prof[:i] + prof[i + 1:])] for i in range(n)) for prof in self.profiles
        ]
        self.var_profiles: list[list[int]] = [[] for _ in order]
        for pi, vs in enumerate(self.profile_vars):
            for v in vs:
                self.var_profiles[v].append(pi)
        self.neighbors = [
            sorted({w for pi in self.var_profiles[v] for w in self.profile_vars[pi] if w != v}) for v in range(len(order))
        ]
        self.fixed = dict(fixed or {})
        self.nodes = 0

    # domains are bitmasks over positions
    def _initial(self) -> list[int] | None:
        dom = [self.full] * len(self.var_key)
        queue = []
        index = {p: k for k, p in enumerate(self.profiles)}
        for prof, out in self.fixed.items():
            inv = Permutation(out).inverse
            for i, v in enumerate(self.profile_vars[index[prof]]):
                dom[v] &= 1 << inv[i]
                if not dom[v]:
                    return None
                queue.append(v)
        return dom if self._propagate(dom, queue) else None

    def _propagate(self, dom: list[int], queue: list[int]) -> bool:
        while queue:
            v = queue.pop()
            d = dom[v]
            if d & (d - 1):
                continue
            for w in self.neighbors[v]:
                if dom[w] & d:
                    dom[w] &= ~d
                    if not dom[w]:
                        return False
                    if not dom[w] & (dom[w] - 1):
                        queue.append(w)
        if self.surjective:
            for vs in self.agent_vars:
                cover = 0
                for v in vs:
                    cover |= dom[v]
                if cover != self.full:
                    return False
        if self.rotation_pruning and self.n == 3:
            seen = [None, None]
            for vs in self.profile_vars:
                ds = [dom[v] for v in vs]
                if any(d & (d - 1) for d in ds):
                    continue
                pos = [d.bit_length() - 1 for d in ds]
                image = Permutation.from_positions(pos).image
                c = cyclic_class(image)
                if seen[c] is None:
                    seen[c] = image
                elif seen[c] != image:
                    return False
        return True

    def solve(self) -> dict[tuple[int, tuple[int, ...]], int] | None:
        """First solution in search order, or None after exhausting the space."""
        self.nodes = 0
        dom = self._initial()
        if dom is None:
            return None
        sol = self._search(dom, 0)
        if sol is None:
            return None
        return {self.var_key[v]: d.bit_length() - 1 for v, d in enumerate(sol)}

    def _search(self, dom: list[int], start: int) -> list[int] | None:
        v = start
        while v < len(dom) and not dom[v] & (dom[v] - 1):
            v += 1
        if v == len(dom):
            return dom
        d = dom[v]
        for k in range(self.n):
            if not (d >> k) & 1:
                continue
            if self.node_budget is not None and self.nodes >= self.node_budget:
                raise BudgetExceeded(self.nodes)
            self.nodes += 1
            child = dom.copy()
            child[v] = 1 << k
            if self._propagate(child, [v]):
                sol = self._search(child, v + 1)
                if sol is not None:
                    return sol
        return None


class BudgetExceeded(RuntimeError):
    def __init__(self, nodes: int):
        super().__init__(f"search budget exhausted after {nodes} nodes")
        self.nodes = nodes


@dataclass(frozen=True)
class Refutation:
    n: int
    status: str  # "UNSAT" or "SAT"
    ifr: bool
    rotation_pruning: bool
    nodes: int
    candidates: int | None = None
    solution: dict | None = None
    outputs: tuple[tuple[int, ...], ...] = ()

    def to_json(self) -> dict:
        out = {
            "n": self.n, "status": self.status, "ifr": self.ifr, "rotation_pruning": self.rotation_pruning,
            "nodes": self.nodes,
        }
        if self.candidates is not None:
            out["candidates"] = self.candidates
        if self.outputs:
            out["outputs"] = [list(o) for o in self.outputs]
        return out


def full_profiles(n: int) -> list[tuple[int, ...]]:
    """All profiles as tuples of lexicographic ranking indices."""
    return list(itertools.product(range(math.factorial(n)), repeat=n))


@dataclass(frozen=True)
class PositionFunctions:
    """A total impartial candidate: ``h[i][reduced]`` is agent i's position."""

    n: int
    h: tuple[dict[tuple[int, ...], int], ...]

    def positions(self, prof: tuple[int, ...]) -> tuple[int, ...]:
        return tuple(self.h[i][prof[:i] + prof[i + 1:]] for i in range(self.n))

    def rank(self, profile: RankingProfile) -> Permutation:
        idx = tuple(lex_rank(p) for p in profile)
        return Permutation.from_positions(self.positions(idx))

    __call__ = rank

    def outputs(self) -> set[tuple[int, ...]]:
        return {Permutation.from_positions(self.positions(p)).image for p in full_profiles(self.n)}

    def is_feasible(self) -> bool:
        full = tuple(range(self.n))
        return all(tuple(sorted(self.positions(p))) == full for p in full_profiles(self.n))

    def is_surjective(self) -> bool:
        return all(set(hi.values()) == set(range(self.n)) for hi in self.h)


def _functions_from(n: int, sol: dict[tuple[int, tuple[int, ...]], int]) -> PositionFunctions:
    h: list[dict[tuple[int, ...], int]] = [{} for _ in range(n)]
    for (i, red), k in sol.items():
        h[i][red] = k
    return PositionFunctions(n, tuple(h))


def _refute_n2(ifr: bool) -> Refutation:
    # h_i maps agent 1-i's ranking (index 0 or 1) to a position: 4 functions each
    funcs = list(itertools.product(range(2), repeat=2))
    found = None
    count = 0
    for h0 in funcs:
        for h1 in funcs:
            count += 1
            feasible = all(h0[p1] != h1[p0] for p0 in range(2) for p1 in range(2))
            surj = len(set(h0)) == 2 and len(set(h1)) == 2
            if feasible and (surj or not ifr) and found is None:
                found = (h0, h1)
    if found is None:
        return Refutation(2, "UNSAT", ifr, False, nodes=count, candidates=count)
    h0, h1 = found
    pf = PositionFunctions(2, ({(p,): h0[p] for p in range(2)}, {(p,): h1[p] for p in range(2)}))
    return Refutation(2, "SAT", ifr, False, nodes=count, candidates=count,
                      solution=_solution_json(pf), outputs=tuple(sorted(pf.outputs())))


def _solution_json(pf: PositionFunctions) -> dict:
    return {str(i): {",".join(map(str, red)): k for red, k in sorted(hi.items())} for i, hi in enumerate(pf.h)}


def refute_impartial_ifr(
    n: int, ifr: bool = True, rotation_pruning: bool = False, node_budget: int | None = None
) -> Refutation:
    """Search for an impartial, permutation-valued mechanism (with individual full rank when
    ``ifr``).  UNSAT means the search space was exhausted."""
    if n == 2:
        return _refute_n2(ifr)
    if n != 3:
        raise ValueError("the refutation search covers n = 2 and n = 3 only")
    search = PositionSearch(3, full_profiles(3), surjective=ifr, rotation_pruning=rotation_pruning,
                            node_budget=node_budget)
    sol = search.solve()
    if sol is None:
        return Refutation(3, "UNSAT", ifr, rotation_pruning, nodes=search.nodes)
    pf = _functions_from(3, sol)
    if not pf.is_feasible():
        raise AssertionError("search returned a candidate that is not permutation-valued")
    return Refutation(3, "SAT", ifr, rotation_pruning, nodes=search.nodes,
                      solution=_solution_json(pf), outputs=tuple(sorted(pf.outputs())))


# ------------------------------------------------------------ cyclic-shift claim


@dataclass(frozen=True)
class RotationCheck:
    ok: bool
    searches: int
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.ok


def validate_rotation_claim() -> RotationCheck:
    """Independent check that no impartial, permutation-valued mechanism on three agents
    outputs two rankings that are cyclic shifts of each other.

    Only the eight profiles mixing the coordinates of the two profiles matter, and only
    the set of agents on which they differ.  For every unordered pair of shifted rankings
    and each of the seven nonempty difference sets the cube search must be infeasible.
    """
    searches = 0
    for cls in CYCLIC_CLASSES:
        for a, b in itertools.combinations(cls, 2):
            for r in range(1, 8):
                diff = tuple((r >> i) & 1 for i in range(3))
                base, other = (0, 0, 0), diff
                cube = sorted({tuple(base[i] if not c[i] else other[i] for i in range(3))
                               for c in itertools.product((0, 1), repeat=3)})
                fixed = {base: a, other: b}
                searches += 1
                if PositionSearch(3, cube, fixed=fixed).solve() is not None:
                    return RotationCheck(False, searches, (a, b, diff))
    return RotationCheck(True, searches)


def check_rotation_claim(candidate: PositionFunctions) -> RotationCheck:
    """True iff the candidate's outputs contain no two distinct rankings in one cyclic class."""
    if candidate.n != 3:
        raise ValueError("the cyclic-shift claim concerns three agents")
    by_class: dict[int, tuple[int, ...]] = {}
    for prof in full_profiles(3):
        image = Permutation.from_positions(candidate.positions(prof)).image
        c = cyclic_class(image)
        prev = by_class.setdefault(c, image)
        if prev != image:
            return RotationCheck(False, 1, (prev, image))
    return RotationCheck(True, 1)


def constant_candidate(n: int, output: Sequence[int]) -> PositionFunctions:
    inv = Permutation(tuple(output)).inverse
    m = math.factorial(n)
    reduced = list(itertools.product(range(m), repeat=n - 1))
    return PositionFunctions(n, tuple({r: inv[i] for r in reduced} for i in range(n)))


# ------------------------------------------------------------ unanimity chain


def shifted(n: int) -> Permutation:
    """(1 2 ... n-1 0)."""
    return Permutation(tuple(range(1, n)) + (0,))


def chain_profiles(n: int) -> list[RankingProfile]:
    """The profiles pi^0 .. pi^(n-1) followed by the all-identity profile.

    In pi^l, agents 0 .. n-l-1 submit (1 2 ... n-1 0) and the rest the identity;
    consecutive profiles differ in exactly one agent's ranking.
    """
    if n < 2:
        raise ValueError("the chain needs n >= 2")
    s, ident = shifted(n), Permutation.identity(n)
    chain = [RankingProfile(tuple(s if i < n - l else ident for i in range(n))) for l in range(n)]
    chain.append(RankingProfile.unanimous(ident))
    return chain


def _changed_agent(a: RankingProfile, b: RankingProfile) -> int:
    diff = [i for i in range(a.n) if a[i] != b[i]]
    assert len(diff) == 1
    return diff[0]


@dataclass(frozen=True)
class ChainWitness:
    kind: str  # "unanimity" or "impartiality"
    step: int
    profile: RankingProfile
    pair: tuple[int, int] | None = None
    deviation: RankingProfile | None = None
    agent: int | None = None

    def to_json(self) -> dict:
        out: dict[str, Any] = {"kind": self.kind, "step": self.step, "profile": self.profile.to_lists()}
        if self.pair is not None:
            out["pair"] = list(self.pair)
        if self.deviation is not None:
            out["deviation"], out["agent"] = self.deviation.to_lists(), self.agent
        return out


def unanimity_chain_audit(mech: Any) -> ChainWitness | None:
    """First point along the chain where ``mech`` breaks pairwise unanimity or impartiality."""
    from .axioms import unanimity_violation

    chain = chain_profiles(mech.n)
    outputs = [mech.rank(p) for p in chain]
    for step, prof in enumerate(chain):
        if step:
            i = _changed_agent(chain[step - 1], prof)
            if outputs[step].position(i) != outputs[step - 1].position(i):
                return ChainWitness("impartiality", step, chain[step - 1], deviation=prof, agent=i)
        pair = unanimity_violation(mech, prof)
        if pair is not None:
            return ChainWitness("unanimity", step, prof, pair=pair)
    return None


# ------------------------------------------------------------ n = 4 encoding

N4 = 4
N4_PERMS = math.factorial(N4)
N4_REDUCED = N4_PERMS ** (N4 - 1)
N4_VARS = N4 * N4_REDUCED * N4  # 221,184


def n4_var(i: int, r: int, k: int) -> int:
    return 1 + ((i * N4_REDUCED + r) * N4 + k)


def n4_unvar(v: int) -> tuple[int, int, int]:
    rest, k = divmod(v - 1, N4)
    i, r = divmod(rest, N4_REDUCED)
    return i, r, k


def reduced_index(prof: Sequence[int], i: int) -> int:
    """Mixed-radix index of the other agents' ranking indices, lowest agent most significant."""
    r = 0
    for a, p in enumerate(prof):
        if a != i:
            r = r * N4_PERMS + p
    return r


@dataclass
class WUEncoding:
    """Clauses are generated on demand; ``profiles`` is None for the full scope."""

    profiles: list[tuple[int, ...]] | None
    units: list[tuple[int, ...]] = field(default_factory=list)

    @property
    def num_vars(self) -> int:
        return N4_VARS

    def exactly_one_keys(self) -> list[tuple[int, int]]:
        if self.profiles is None:
            return [(i, r) for i in range(N4) for r in range(N4_REDUCED)]
        keys = {(i, reduced_index(p, i)) for p in itertools.chain(self.profiles, self.units) for i in range(N4)}
        return sorted(keys)

    @property
    def num_clauses(self) -> int:
        eo = len(self.exactly_one_keys()) if self.profiles is not None else N4 * N4_REDUCED
        scope = N4_PERMS ** N4 if self.profiles is None else len(self.profiles)
        return eo * (1 + math.comb(N4, 2)) + scope * N4 * math.comb(N4, 2) + len(self.units) * N4

    def _scope(self) -> Iterable[tuple[int, ...]]:
        if self.profiles is None:
            return itertools.product(range(N4_PERMS), repeat=N4)
        return self.profiles

    def clauses(self) -> Iterator[tuple[int, ...]]:
        for i, r in self.exactly_one_keys():
            vs = [n4_var(i, r, k) for k in range(N4)]
            yield tuple(vs)
            for a, b in itertools.combinations(vs, 2):
                yield (-a, -b)
        for prof in self._scope():
            red = [reduced_index(prof, i) for i in range(N4)]
            for k in range(N4):
                for a, b in itertools.combinations(range(N4), 2):
                    yield (-n4_var(a, red[a], k), -n4_var(b, red[b], k))
        for prof in self.units:
            inv = lex_unrank(N4, prof[0]).inverse
            for i in range(N4):
                yield (n4_var(i, reduced_index(prof, i), inv[i]),)

    def to_cnf(self) -> CNF:
        if self.profiles is None:
            raise MemoryError("materialize subset encodings only; stream the full scope with write_dimacs")
        return CNF(self.num_vars, list(self.clauses()))

    def write_dimacs(self, out: IO[str]) -> int:
        return write_dimacs(out, self.num_vars, self.num_clauses, self.clauses())

    def variable_map(self) -> dict:
        if self.profiles is None:
            used = range(1, N4_VARS + 1)
        else:
            used = sorted(n4_var(i, r, k) for i, r in self.exactly_one_keys() for k in range(N4))
        return {
            "n": N4,
            "reduced_profiles_per_agent": N4_REDUCED,
            "index": "var = 1 + ((agent * 13824 + reduced) * 4 + position)",
            "reduced": "base-24 digits of the other agents' lexicographic ranking indices, lowest agent first",
            "vars": {str(v): list(n4_unvar(v)) for v in used},
        }

    def write_sidecar(self, out: IO[str]) -> None:
        json.dump(self.variable_map(), out, separators=(",", ":"))


def _as_index_profile(p: Any) -> tuple[int, ...]:
    if isinstance(p, RankingProfile):
        prof = p
    else:
        try:
            prof = RankingProfile.of(p)
        except (TypeError, ValueError) as exc:
            raise ProfileFormatError(f"bad profile {p!r}: {exc}") from None
    if prof.n != N4:
        raise ProfileFormatError(f"profile has {prof.n} agents, the encoding is for n = {N4}")
    return tuple(lex_rank(r) for r in prof)


def unanimous_index_profiles() -> list[tuple[int, ...]]:
    return [(p,) * N4 for p in range(N4_PERMS)]


def unanimous_profiles(n: int = N4) -> list[RankingProfile]:
    return [RankingProfile.unanimous(p) for p in all_permutations(n)]


def encode_wu_n4(profile_subset: Iterable[Any] | None = None) -> WUEncoding:
    """Impartiality + weak unanimity at n = 4 as CNF.

    Impartiality is built into the variables (one position per agent per reduced profile).
    ``profile_subset`` limits the permutation constraints to those profiles; None means all
    24^4.  Exactly-one constraints are emitted for every reduced profile that some clause
    touches, and weak unanimity adds one unit per agent per unanimous profile.
    """
    profiles = None if profile_subset is None else [_as_index_profile(p) for p in profile_subset]
    return WUEncoding(profiles, unanimous_index_profiles())


@dataclass(frozen=True)
class PartialMechanism:
    positions: dict[tuple[int, int], int]

    def place(self, prof: Sequence[int]) -> tuple[int, ...] | None:
        out = []
        for i in range(N4):
            k = self.positions.get((i, reduced_index(prof, i)))
            if k is None:
                return None
            out.append(k)
        return tuple(out)


def decode_wu_n4(model: dict[int, bool], enc: WUEncoding) -> PartialMechanism:
    positions: dict[tuple[int, int], int] = {}
    for v, value in model.items():
        if value:
            i, r, k = n4_unvar(v)
            if (i, r) in positions:
                raise ValueError(f"agent {i}, reduced profile {r} has two positions")
            positions[(i, r)] = k
    return PartialMechanism(positions)


def check_decoded(pm: PartialMechanism, enc: WUEncoding) -> bool:
    """Direct evaluation of the decoded mechanism on every constrained profile."""
    scope = enc.profiles if enc.profiles is not None else list(enc._scope())
    for prof in scope:
        pos = pm.place(prof)
        if pos is None or sorted(pos) != list(range(N4)):
            return False
    for prof in enc.units:
        if pm.place(prof) != lex_unrank(N4, prof[0]).inverse:
            return False
    return True


def solve_wu_subset(profile_subset: Iterable[Any], node_budget: int | None = 1_000_000) -> tuple[SatResult, WUEncoding]:
    enc = encode_wu_n4(profile_subset)
    return dpll_solve(enc.to_cnf(), node_budget), enc
