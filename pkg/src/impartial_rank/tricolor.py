"""The impartial, weakly unanimous mechanism with three decisive agents.

Agents 0, 1, 2 are decisive.  Decisive agent i is placed at
``A^i[k(pi_{i+1}), k(pi_{i+2})]`` where ``k`` is the lexicographic index and
the three m x m matrices (m = n!) are never materialized: entries are derived
on demand from a cutting family.  All other agents fill the remaining
positions in increasing order, except on unanimous decisive triples where
they copy the agreed ranking.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from . import _data
from .perms import MAX_RANKABLE_N, CapacityError, Permutation, RankingProfile, lex_rank, lex_unrank
from .verdict import Verdict

DECISIVE = (0, 1, 2)

# Explicit family for n = 5 (twelve sets, four per color).
CUTTING_N5 = (
    ({0, 1, 2}, {0, 3, 4}, {1, 3}, {2, 4}),
    ({0, 1, 3}, {0, 2, 4}, {1, 4}, {2, 3}),
    ({0, 1, 4}, {0, 2, 3}, {1, 2}, {3, 4}),
)

# For n = 5 and each color i, agent u is the only common element of sets K[i][u] and K2[i][u].
CUTTING_N5_WITNESS_K = ((0, 0, 0, 1, 1), (0, 0, 1, 0, 1), (0, 0, 1, 1, 0))
CUTTING_N5_WITNESS_K2 = ((1, 2, 3, 2, 3), (1, 2, 3, 3, 2), (1, 2, 2, 3, 3))


@dataclass(frozen=True)
class CuttingFamily:
    n: int
    sets: tuple[tuple[frozenset[int], ...], tuple[frozenset[int], ...], tuple[frozenset[int], ...]]

    def __post_init__(self) -> None:
        if len(self.sets) != 3:
            raise ValueError("a cutting family has exactly three colors")
        norm = tuple(tuple(frozenset(int(x) for x in s) for s in color) for color in self.sets)
        for color in norm:
            for s in color:
                if not all(0 <= x < self.n for x in s):
                    raise ValueError(f"set {sorted(s)} is not a subset of [{self.n}]")
        object.__setattr__(self, "sets", norm)

    def to_json(self) -> dict:
        return {"n": self.n, "sets": {str(i): [sorted(s) for s in color] for i, color in enumerate(self.sets)}}

    @classmethod
    def from_json(cls, data: dict) -> CuttingFamily:
        return cls(int(data["n"]), tuple(tuple(frozenset(s) for s in data["sets"][str(i)]) for i in range(3)))


def cutting_family(n: int) -> CuttingFamily:
    if n < 5:
        raise ValueError("cutting families are constructed for n >= 5")
    if n == 5:
        return CuttingFamily(5, CUTTING_N5)
    offsets = ((1, 2), (2, 3), (3, 4))
    return CuttingFamily(
        n,
        tuple(tuple(frozenset({l, (l + a) % n, (l + b) % n}) for l in range(n)) for a, b in offsets),
    )


def verify_cutting_family(f: CuttingFamily) -> Verdict:
    """Separation within each color and non-containment of color i+1 sets in color i sets."""
    n = f.n
    for i, color in enumerate(f.sets):
        for u in range(n):
            for v in range(n):
                if u != v and not any(u in s and v not in s for s in color):
                    return Verdict(False, "separation", (i, u, v))
    for i in range(3):
        nxt = f.sets[(i + 1) % 3]
        for l, s in enumerate(f.sets[i]):
            for lp, t in enumerate(nxt):
                if t <= s:
                    return Verdict(False, "non-containment", (i, l, lp))
    return Verdict(True)


@dataclass(frozen=True)
class MatrixTriple:
    """Three virtual m x m matrices with diagonals d^i_p = position of agent i in the p-th ranking."""

    family: CuttingFamily

    def __post_init__(self) -> None:
        if self.family.n > MAX_RANKABLE_N:
            raise CapacityError(f"n={self.family.n} exceeds the supported maximum of {MAX_RANKABLE_N}")
        # bounded per-instance memo; instance stays immutable from the outside
        object.__setattr__(self, "_diag", lru_cache(maxsize=1 << 16)(self._diagonal_row))
        object.__setattr__(self, "_ell", lru_cache(maxsize=1 << 18)(self._ell_uncached))

    @property
    def n(self) -> int:
        return self.family.n

    @property
    def m(self) -> int:
        return math.factorial(self.family.n)

    def _diagonal_row(self, p: int) -> tuple[int, ...]:
        return lex_unrank(self.n, p).inverse

    def diagonal(self, i: int, p: int) -> int:
        return self._diag(p)[i]

    def _ell_uncached(self, i: int, p: int) -> int:
        mine, nxt = self.diagonal(i, p), self.diagonal((i + 1) % 3, p)
        for l, s in enumerate(self.family.sets[i]):
            if mine in s and nxt not in s:
                return l
        raise ValueError(f"cutting family fails separation for color {i}: ({mine}, {nxt})")

    def ell(self, i: int, p: int) -> int:
        return self._ell(i, p)

    def entry(self, i: int, p: int, q: int) -> int:
        if p == q:
            return self.diagonal(i, p)
        col = self.family.sets[i][self._ell(i, q)]
        prev = (i - 1) % 3
        row_excluded = self.family.sets[prev][self._ell(prev, p)]
        allowed = col - row_excluded
        if not allowed:
            raise ValueError(f"cutting family fails non-containment at ({i}, {p}, {q})")
        return min(allowed)


def diagonal(n: int, i: int, p: int) -> int:
    """Position of agent ``i`` in the ``p``-th permutation of [n] in lexicographic order."""
    if i not in DECISIVE:
        raise ValueError("diagonals exist for the decisive agents 0, 1, 2")
    return lex_unrank(n, p).position(i)


def ell_index(f: CuttingFamily, i: int, p: int) -> int:
    return MatrixTriple(f).ell(i, p)


def matrix_entry(t: MatrixTriple, i: int, p: int, q: int) -> int:
    return t.entry(i, p, q)


def nondecisive_position(t: MatrixTriple, i: int, p: int, q: int, r: int) -> int:
    n = t.n
    if not 3 <= i < n:
        raise ValueError(f"agent {i} is not a non-decisive agent for n={n}")
    if p == q == r:
        return t._diag(p)[i]
    taken = {t.entry(0, q, r), t.entry(1, r, p), t.entry(2, p, q)}
    rest = [k for k in range(n) if k not in taken]
    return rest[i - 3]


@dataclass(frozen=True)
class TricolorMechanism:
    triple: MatrixTriple
    label: str = "weak-unanimity"

    @property
    def n(self) -> int:
        return self.triple.n

    decisive = DECISIVE

    def positions_from_indices(self, p: int, q: int, r: int) -> tuple[int, ...]:
        """Positions of every agent when the decisive agents submit rankings with indices p, q, r."""
        t = self.triple
        if p == q == r:
            return t._diag(p)
        a0, a1, a2 = t.entry(0, q, r), t.entry(1, r, p), t.entry(2, p, q)
        rest = [k for k in range(t.n) if k != a0 and k != a1 and k != a2]
        return (a0, a1, a2, *rest)

    def rank(self, profile: RankingProfile) -> Permutation:
        if profile.n != self.n:
            raise ValueError(f"profile has {profile.n} agents, mechanism expects {self.n}")
        p, q, r = (lex_rank(profile[i]) for i in DECISIVE)
        return Permutation.from_positions(self.positions_from_indices(p, q, r))

    __call__ = rank


def tricolor_mechanism(n: int, family: CuttingFamily | None = None) -> TricolorMechanism:
    if n < 5:
        raise ValueError("the weakly unanimous mechanism needs n >= 5")
    family = family or cutting_family(n)
    verdict = verify_cutting_family(family)
    if not verdict:
        raise ValueError(f"invalid cutting family: {verdict.condition} at {verdict.witness}")
    return TricolorMechanism(MatrixTriple(family), label=f"weak-unanimity-{n}")


def wu_mechanism_rank(profile: RankingProfile, mech: TricolorMechanism) -> Permutation:
    return mech.rank(profile)


@dataclass(frozen=True)
class RelabeledMechanism:
    """Conjugates ``base`` by an agent relabeling so that ``decisive`` play the roles of 0, 1, 2."""

    base: TricolorMechanism
    decisive: tuple[int, int, int]

    def __post_init__(self) -> None:
        n = self.base.n
        if len(set(self.decisive)) != 3 or not all(0 <= a < n for a in self.decisive):
            raise ValueError(f"need three distinct agents in [{n}], got {self.decisive}")

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def sigma(self) -> tuple[int, ...]:
        """sigma[old label] = new label."""
        rest = [a for a in range(self.n) if a not in self.decisive]
        order = list(self.decisive) + rest
        sigma = [0] * self.n
        for new, old in enumerate(order):
            sigma[old] = new
        return tuple(sigma)

    def rank(self, profile: RankingProfile) -> Permutation:
        sigma = self.sigma
        inner = [None] * self.n
        for old, ranking in enumerate(profile):
            inner[sigma[old]] = Permutation(tuple(sigma[a] for a in ranking))
        out = self.base.rank(RankingProfile(tuple(inner)))
        back = {new: old for old, new in enumerate(sigma)}
        return Permutation(tuple(back[a] for a in out))

    __call__ = rank


def example_triple() -> tuple[tuple[tuple[int, ...], ...], ...]:
    return _data.EXAMPLE_TRIPLE_N5


def verify_matrix_triple(
    matrices: Sequence[Sequence[Sequence[int]]], diagonals: Sequence[Sequence[int]]
) -> Verdict:
    """Check an explicit triple against its diagonals and the cross-matrix non-clash condition."""
    m = len(diagonals[0])
    for i in range(3):
        for p in range(m):
            if matrices[i][p][p] != diagonals[i][p]:
                return Verdict(False, "diagonal", (i, p))
    checked = 0
    for i in range(3):
        a, b = matrices[i], matrices[(i + 1) % 3]
        for p in range(m):
            for q in range(m):
                for r in range(m):
                    checked += 1
                    if a[p][q] == b[q][r]:
                        return Verdict(False, "non-clash", (i, p, q, r), checked=checked)
    return Verdict(True, checked=checked)


def _sweep_chunk(args: tuple[int, int, int]) -> dict:
    n, lo, hi = args
    return sweep_decisive_triples(tricolor_mechanism(n), range(lo, hi))


def sweep_decisive_triples(mech: TricolorMechanism, p_range: range | None = None) -> dict:
    """Exhaustive check over decisive triples (p, q, r) with p in ``p_range``.

    Every output must be a bijection, and each decisive agent's position must not
    move when its own coordinate changes.  The reference for agent 0 is its output
    at p = 0, for agent 1 at q = 0 and for agent 2 at r = 0, so chunks of p are
    independent and can be checked in parallel.
    """
    n, m = mech.n, mech.triple.m
    p_range = p_range if p_range is not None else range(m)
    pos_of = mech.positions_from_indices
    full = set(range(n))
    ref0 = [[pos_of(0, q, r)[0] for r in range(m)] for q in range(m)]
    checked = 0
    for p in p_range:
        ref1 = [pos_of(p, 0, r)[1] for r in range(m)]
        for q in range(m):
            ref2 = pos_of(p, q, 0)[2]
            row0 = ref0[q]
            for r in range(m):
                pos = pos_of(p, q, r)
                checked += 1
                if set(pos) != full:
                    return {"ok": False, "condition": "bijection", "witness": (p, q, r), "checked": checked}
                if pos[0] != row0[r]:
                    return {"ok": False, "condition": "impartial-0", "witness": (p, q, r), "checked": checked}
                if pos[1] != ref1[r]:
                    return {"ok": False, "condition": "impartial-1", "witness": (p, q, r), "checked": checked}
                if pos[2] != ref2:
                    return {"ok": False, "condition": "impartial-2", "witness": (p, q, r), "checked": checked}
    return {"ok": True, "condition": None, "witness": None, "checked": checked}


def sweep_all_triples(n: int, jobs: int = 1) -> dict:
    """Run :func:`sweep_decisive_triples` over every p, split across ``jobs`` worker processes."""
    m = math.factorial(n)
    if jobs <= 1:
        return sweep_decisive_triples(tricolor_mechanism(n))
    from concurrent.futures import ProcessPoolExecutor

    bounds = [round(k * m / jobs) for k in range(jobs + 1)]
    chunks = [(n, lo, hi) for lo, hi in zip(bounds, bounds[1:]) if hi > lo]
    total = 0
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for res in pool.map(_sweep_chunk, chunks):
            total += res["checked"]
            if not res["ok"]:
                return {**res, "checked": total}
    return {"ok": True, "condition": None, "witness": None, "checked": total}
