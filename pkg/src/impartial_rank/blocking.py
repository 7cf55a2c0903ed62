"""The monotone, impartial, individual-full-rank mechanism based on blocking sets.

Each agent i sends one bit: whether it ranks agent ``rho[i]`` above itself.
A function ``g`` maps the bit vector to the output ranking.  For n = 4 ``g`` is
an explicit 16-entry table; for n >= 5 it is assembled from blocking sets,
which in turn come from an edge-colored multigraph (explicit for n <= 10,
randomly searched for n >= 11).

Bit vectors are handled both as tuples and as integer codes where bit ``i`` of
the code is agent i's message.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cache, cached_property
from typing import Mapping, Sequence

import numpy as np

from . import _data
from .perms import Permutation, RankingProfile
from .verdict import Verdict

DEFAULT_MAX_RETRIES = 1000
EXHAUSTIVE_LIMIT = 22
_CHUNK = 1 << 16


class RetriesExhausted(RuntimeError):
    def __init__(self, n: int, seed: int, attempts: int):
        super().__init__(f"no valid multigraph for n={n}, seed={seed} after {attempts} attempts")
        self.n, self.seed, self.attempts = n, seed, attempts


class InvalidConstruction(ValueError):
    def __init__(self, verdict: Verdict):
        super().__init__(f"construction failed condition {verdict.condition} at {verdict.witness}")
        self.verdict = verdict


def check_rho(rho: Sequence[int]) -> tuple[int, ...]:
    rho = tuple(int(r) for r in rho)
    n = len(rho)
    for i, r in enumerate(rho):
        if not 0 <= r < n or r == i:
            raise ValueError(f"rho[{i}]={r} is invalid (must lie in [n] and differ from {i})")
    return rho


def successor_rho(n: int) -> tuple[int, ...]:
    return tuple((i + 1) % n for i in range(n))


def chi(i: int, p: Permutation, rho_i: int) -> int:
    """1 iff ``rho_i`` is ranked strictly above ``i`` in ``p``."""
    if rho_i == i:
        raise ValueError("rho_i must differ from i")
    return int(p.position(rho_i) < p.position(i))


def messages(profile: RankingProfile, rho: Sequence[int]) -> tuple[int, ...]:
    return tuple(chi(i, p, rho[i]) for i, p in enumerate(profile))


def realize_message(n: int, i: int, rho_i: int, bit: int) -> Permutation:
    """Canonical ranking for agent ``i`` sending ``bit``: the identity, or the identity
    with ``i`` and ``rho_i`` swapped when the identity sends the other bit."""
    p = Permutation.identity(n)
    if chi(i, p, rho_i) != bit:
        p = p.swap_positions(i, rho_i)
    return p


def realize_messages(rho: Sequence[int], bits: Sequence[int]) -> RankingProfile:
    n = len(rho)
    return RankingProfile(tuple(realize_message(n, i, rho[i], b) for i, b in enumerate(bits)))


def bits_of(code: int, n: int) -> tuple[int, ...]:
    return tuple((code >> i) & 1 for i in range(n))


def code_of(bits: Sequence[int]) -> int:
    return sum(int(b) << i for i, b in enumerate(bits))


@cache
def g4_table() -> dict[tuple[int, ...], Permutation]:
    return {b: Permutation(img) for b, img in _data.G4_TABLE.items()}


# ---------------------------------------------------------------- multigraphs


@dataclass(frozen=True)
class ColoredMultigraph:
    """Vertex set [n]; ``edges[i]`` holds the sorted pairs of color ``i``."""

    n: int
    edges: tuple[frozenset[tuple[int, int]], ...]

    def __post_init__(self) -> None:
        if len(self.edges) != self.n:
            raise ValueError(f"need {self.n} color classes, got {len(self.edges)}")
        norm = []
        for i, es in enumerate(self.edges):
            cls = set()
            for e in es:
                a, b = sorted(int(x) for x in e)
                if a == b or not (0 <= a < self.n and 0 <= b < self.n):
                    raise ValueError(f"bad edge {e} in color {i}")
                if i in (a, b):
                    raise ValueError(f"edge {e} of color {i} is incident to vertex {i}")
                cls.add((a, b))
            norm.append(frozenset(cls))
        object.__setattr__(self, "edges", tuple(norm))

    @classmethod
    def empty(cls, n: int) -> ColoredMultigraph:
        return cls(n, tuple(frozenset() for _ in range(n)))

    @cached_property
    def neighbor_masks(self) -> tuple[tuple[int, ...], ...]:
        """``neighbor_masks[i][j]`` is the bitmask of N_i(j)."""
        masks = [[0] * self.n for _ in range(self.n)]
        for i, es in enumerate(self.edges):
            for a, b in es:
                masks[i][a] |= 1 << b
                masks[i][b] |= 1 << a
        return tuple(tuple(row) for row in masks)

    def neighbors(self, i: int, j: int) -> frozenset[int]:
        return _members(self.neighbor_masks[i][j])

    def without_edge(self, color: int, edge: tuple[int, int]) -> ColoredMultigraph:
        edges = list(self.edges)
        edges[color] = edges[color] - {tuple(sorted(edge))}
        return ColoredMultigraph(self.n, tuple(edges))

    def to_json(self, rho: Sequence[int] | None = None) -> dict:
        out: dict = {"n": self.n}
        if rho is not None:
            out["rho"] = list(rho)
        out["edges"] = {str(i): [list(e) for e in sorted(es)] for i, es in enumerate(self.edges)}
        return out

    @classmethod
    def from_json(cls, data: dict) -> ColoredMultigraph:
        n = int(data["n"])
        edges = data["edges"]
        return cls(n, tuple(frozenset(tuple(e) for e in edges.get(str(i), [])) for i in range(n)))


def _members(mask: int) -> frozenset[int]:
    out = []
    k = 0
    while mask:
        if mask & 1:
            out.append(k)
        mask >>= 1
        k += 1
    return frozenset(out)


def fixture_multigraph(n: int) -> tuple[tuple[int, ...], ColoredMultigraph]:
    """The explicit multigraphs for 5 <= n <= 10 together with their rho."""
    if n not in _data.FIXTURE_EDGES:
        raise ValueError(f"explicit multigraphs exist only for 5 <= n <= 10, got n={n}")
    edges = tuple(frozenset(es) for es in _data.FIXTURE_EDGES[n])
    return _data.FIXTURE_RHO[n], ColoredMultigraph(n, edges)


def verify_multigraph(rho: Sequence[int], g: ColoredMultigraph) -> Verdict:
    """Check the neighborhood condition at rho_i and the path condition on every triple."""
    n = g.n
    if len(rho) != n:
        return Verdict(False, "dimension", (len(rho), n))
    masks = g.neighbor_masks
    for i in range(n):
        want = sum(1 << j for j in range(rho[i]) if j != i)
        if masks[i][rho[i]] != want:
            return Verdict(False, "i", (i,), checked=i + 1)
    checked = 0
    for k in range(n):
        col = [masks[i][k] for i in range(n)]
        for j in range(n):
            if j == k:
                continue
            for l in range(j + 1, n):
                if l == k:
                    continue
                checked += 1
                for i in range(n):
                    if i in (j, k, l):
                        continue
                    if ((col[i] >> j) ^ (col[i] >> l)) & 1:
                        break
                else:
                    return Verdict(False, "ii", (j, k, l), checked=checked)
    return Verdict(True, checked=checked)


def draw_multigraph(n: int, rho: Sequence[int], rng: np.random.Generator) -> ColoredMultigraph:
    """One draw of the random construction: forced edges at rho_i, fair coins elsewhere."""
    edges = []
    for i in range(n):
        r = rho[i]
        es = {(min(r, j), max(r, j)) for j in range(r) if j != i}
        rest = [v for v in range(n) if v not in (i, r)]
        pairs = list(itertools.combinations(rest, 2))
        coins = rng.integers(0, 2, size=len(pairs))
        es.update(e for e, c in zip(pairs, coins) if c)
        edges.append(frozenset(es))
    return ColoredMultigraph(n, tuple(edges))


def search_multigraph(
    n: int, rho: Sequence[int], seed: int, max_retries: int = DEFAULT_MAX_RETRIES
) -> tuple[ColoredMultigraph, int]:
    """Rejection sampling; returns the first verified graph and the number of attempts used."""
    if n < 11:
        raise ValueError("the random construction is only guaranteed for n >= 11")
    rho = check_rho(rho)
    if rho != successor_rho(n):
        raise ValueError("the random construction requires rho_i = i + 1 (mod n)")
    if max_retries <= 0:
        raise ValueError("max_retries must be positive")
    for attempt in range(max_retries):
        rng = np.random.default_rng([seed, attempt])
        g = draw_multigraph(n, rho, rng)
        if verify_multigraph(rho, g):
            return g, attempt + 1
    raise RetriesExhausted(n, seed, max_retries)


def random_multigraph(
    n: int, rho: Sequence[int], seed: int, max_retries: int = DEFAULT_MAX_RETRIES
) -> ColoredMultigraph:
    return search_multigraph(n, rho, seed, max_retries)[0]


def lll_margin(n: int) -> float:
    """e(4n - 9) / 2^(n - 4); below 1 the random construction succeeds with positive probability."""
    if n < 4:
        raise ValueError("defined for n >= 4")
    return math.e * (4 * n - 9) / 2 ** (n - 4)


# -------------------------------------------------------------- blocking sets


@dataclass(frozen=True)
class BlockingSets:
    """``masks[b][i][j]`` is the bitmask of S^b_{ij} (0 when i == j)."""

    n: int
    masks: tuple[tuple[tuple[int, ...], ...], tuple[tuple[int, ...], ...]]

    def get(self, b: int, i: int, j: int) -> frozenset[int]:
        if i == j:
            raise ValueError("blocking sets are defined only for i != j")
        return _members(self.masks[b][i][j])

    @classmethod
    def from_sets(cls, n: int, sets: Mapping[tuple[int, int, int], Sequence[int]]) -> BlockingSets:
        """Build from a mapping ``(b, i, j) -> positions``; missing entries are empty."""
        masks = [[[0] * n for _ in range(n)] for _ in range(2)]
        for (b, i, j), pos in sets.items():
            masks[b][i][j] = sum(1 << k for k in pos)
        return cls(n, tuple(tuple(tuple(row) for row in m) for m in masks))  # type: ignore[arg-type]

    def with_moved(self, i: int, j: int, k: int) -> BlockingSets:
        """Move position ``k`` from whichever of S^0_{ij}, S^1_{ij} holds it to the other."""
        masks = [[list(row) for row in m] for m in self.masks]
        bit = 1 << k
        masks[0][i][j] ^= bit
        masks[1][i][j] ^= bit
        return BlockingSets(self.n, tuple(tuple(tuple(row) for row in m) for m in masks))  # type: ignore[arg-type]

    def to_json(self) -> dict:
        sets = {
            str(i): {
                str(b): {str(j): sorted(self.get(b, i, j)) for j in range(self.n) if j != i} for b in (0, 1)
            }
            for i in range(self.n)
        }
        return {"n": self.n, "sets": sets}

    @classmethod
    def from_json(cls, data: dict) -> BlockingSets:
        n = int(data["n"])
        sets = {}
        for si, per_b in data["sets"].items():
            for sb, per_j in per_b.items():
                for sj, pos in per_j.items():
                    sets[(int(sb), int(si), int(sj))] = pos
        return cls.from_sets(n, sets)


def blocking_from_multigraph(rho: Sequence[int], g: ColoredMultigraph) -> BlockingSets:
    """S^0_{ij} = N_i(j), S^1_{ij} = [n] \\ {i, j} \\ N_i(j)."""
    verdict = verify_multigraph(rho, g)
    if not verdict:
        raise InvalidConstruction(verdict)
    n = g.n
    full = (1 << n) - 1
    m0 = [[0] * n for _ in range(n)]
    m1 = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            m0[i][j] = g.neighbor_masks[i][j]
            m1[i][j] = full & ~(1 << i) & ~(1 << j) & ~m0[i][j]
    return BlockingSets(n, (tuple(map(tuple, m0)), tuple(map(tuple, m1))))


def _blocked_unions(s: BlockingSets, codes: np.ndarray) -> np.ndarray:
    """For each message code and agent j, the bitmask of positions blocked for j."""
    n = s.n
    out = np.zeros((len(codes), n), dtype=np.int64)
    bits = [((codes >> i) & 1).astype(bool) for i in range(n)]
    for j in range(n):
        acc = out[:, j]
        for i in range(n):
            if i != j:
                acc |= np.where(bits[i], s.masks[1][i][j], s.masks[0][i][j])
    return out


def _lowest_bit_index(x: np.ndarray) -> np.ndarray:
    # valid for single-bit values; zero maps to -1
    out = np.full(x.shape, -1, dtype=np.int64)
    nz = x != 0
    out[nz] = np.log2(x[nz]).round().astype(np.int64)
    return out


def _check_unions(s: BlockingSets, codes: np.ndarray, unions: np.ndarray) -> tuple[str, tuple] | None:
    n = s.n
    full = (1 << n) - 1
    sizes = np.bitwise_count(unions)
    bad = ~np.isin(sizes, (n - 2, n - 1))
    if bad.any():
        r, j = np.argwhere(bad)[0]
        return "ii", (bits_of(int(codes[r]), n), int(j))
    for j in range(n):
        full_j = full & ~(1 << j)
        avail = full_j & ~unions[:, j]
        is_default = avail == 0
        for jp in range(n):
            if jp == j:
                continue
            # condition (iii): j keeps its default position, so j must be blocked for j'
            bad3 = is_default & (((unions[:, jp] >> j) & 1) == 0)
            if bad3.any():
                r = int(np.argmax(bad3))
                return "iii", (bits_of(int(codes[r]), n), j, jp)
            # condition (iv): j takes k, so k must be blocked for every j' outside {j, k}
            bad4 = (~is_default) & (avail != (1 << jp)) & ((unions[:, jp] & avail) == 0)
            if bad4.any():
                r = int(np.argmax(bad4))
                k = int(np.log2(int(avail[r])))
                return "iv", (bits_of(int(codes[r]), n), j, k, jp)
    return None


def verify_blocking_sets(
    rho: Sequence[int],
    s: BlockingSets,
    mode: str = "exhaustive",
    trials: int | None = None,
    seed: int = 0,
) -> Verdict:
    """Check conditions (i) and (v) directly and (ii)-(iv) over message vectors.

    ``mode="exhaustive"`` enumerates all 2^n vectors (n <= 22); ``mode="sampled"``
    draws ``trials`` vectors and can only report "sampled, not proven".
    """
    n = s.n
    full = (1 << n) - 1
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            a, b = s.masks[0][i][j], s.masks[1][i][j]
            if a & b or (a | b) != full & ~(1 << i) & ~(1 << j):
                return Verdict(False, "i", (i, j))
    for i in range(n):
        r = rho[i]
        below = sum(1 << k for k in range(r) if k != i)
        above = sum(1 << k for k in range(r + 1, n) if k != i)
        if s.masks[0][i][r] != below or s.masks[1][i][r] != above:
            return Verdict(False, "v", (i,))
    if mode == "exhaustive":
        if n > EXHAUSTIVE_LIMIT:
            raise ValueError(f"exhaustive mode supports n <= {EXHAUSTIVE_LIMIT}; use mode='sampled'")
        chunks = (np.arange(lo, min(lo + _CHUNK, 1 << n), dtype=np.int64) for lo in range(0, 1 << n, _CHUNK))
        total = 1 << n
    elif mode == "sampled":
        if not trials or trials <= 0:
            raise ValueError("sampled mode needs a positive trial count")
        rng = np.random.default_rng(seed)
        chunks = iter([rng.integers(0, 1 << n, size=trials, dtype=np.int64)])
        total = trials
    else:
        raise ValueError(f"unknown mode {mode!r}")
    for codes in chunks:
        failure = _check_unions(s, codes, _blocked_unions(s, codes))
        if failure:
            return Verdict(False, failure[0], failure[1], mode=mode)
    return Verdict(True, mode=mode, checked=total)


def available_positions(j: int, b: Sequence[int], s: BlockingSets) -> frozenset[int]:
    """Non-default positions left unblocked for ``j`` by the others' messages (``b[j]`` is ignored)."""
    blocked = 0
    for i in range(s.n):
        if i != j:
            blocked |= s.masks[b[i]][i][j]
    full = (1 << s.n) - 1
    return _members(full & ~(1 << j) & ~blocked)


def assemble_g(s: BlockingSets, b: Sequence[int]) -> Permutation:
    n = s.n
    positions = []
    for j in range(n):
        avail = available_positions(j, b, s)
        if len(avail) > 1:
            raise AssertionError(f"agent {j} has several available positions {sorted(avail)} for b={tuple(b)}")
        positions.append(next(iter(avail)) if avail else j)
    if len(set(positions)) != n:
        raise AssertionError(f"blocking sets map two agents to one position for b={tuple(b)}")
    return Permutation.from_positions(positions)


def positions_from_blocking(s: BlockingSets, codes: np.ndarray) -> np.ndarray:
    """Vectorized g: row r holds the position of each agent for message code ``codes[r]``."""
    n = s.n
    full = (1 << n) - 1
    unions = _blocked_unions(s, codes)
    pos = np.empty((len(codes), n), dtype=np.int8)
    for j in range(n):
        avail = (full & ~(1 << j)) & ~unions[:, j]
        idx = _lowest_bit_index(avail)
        pos[:, j] = np.where(idx < 0, j, idx)
    return pos


def verify_message_conditions(rho: Sequence[int], positions: np.ndarray) -> Verdict:
    """Check a full g table (row = message code, column = agent position) for a bijective
    output, impartiality (i), reachability of every (agent, position) (ii), and monotonicity (iii)."""
    size, n = positions.shape
    if size != 1 << n:
        raise ValueError("positions must cover all 2^n message codes")
    codes = np.arange(size, dtype=np.int64)
    srt = np.sort(positions, axis=1)
    bad = (srt != np.arange(n)).any(axis=1)
    if bad.any():
        r = int(np.argmax(bad))
        return Verdict(False, "bijection", (bits_of(r, n),))
    for i in range(n):
        flipped = positions[codes ^ (1 << i)]
        diff = positions[:, i] != flipped[:, i]
        if diff.any():
            r = int(np.argmax(diff))
            return Verdict(False, "impartial", (bits_of(r, n), i))
        zero = codes[((codes >> i) & 1) == 0]
        one = zero | (1 << i)
        worse = positions[one, rho[i]] > positions[zero, rho[i]]
        if worse.any():
            r = int(zero[np.argmax(worse)])
            return Verdict(False, "monotone", (bits_of(r, n), i))
    reach = np.zeros((n, n), dtype=bool)
    for j in range(n):
        reach[j, np.unique(positions[:, j])] = True
    if not reach.all():
        j, k = np.argwhere(~reach)[0]
        return Verdict(False, "ifr", (int(j), int(k)))
    return Verdict(True, checked=size)


# ------------------------------------------------------------------ mechanism


@dataclass(frozen=True, eq=False)
class BlockingMechanism:
    """f(profile) = g(chi(profile, rho)), with g given either as a table or by blocking sets."""

    rho: tuple[int, ...]
    blocking: BlockingSets | None = None
    table: Mapping[tuple[int, ...], Permutation] | None = field(default=None, repr=False)
    label: str = "blocking"

    def __post_init__(self) -> None:
        object.__setattr__(self, "rho", check_rho(self.rho))
        if (self.blocking is None) == (self.table is None):
            raise ValueError("give exactly one of blocking sets or a table")

    @property
    def n(self) -> int:
        return len(self.rho)

    def messages(self, profile: RankingProfile) -> tuple[int, ...]:
        if profile.n != self.n:
            raise ValueError(f"profile has {profile.n} agents, mechanism expects {self.n}")
        return messages(profile, self.rho)

    def g(self, b: Sequence[int]) -> Permutation:
        b = tuple(int(x) for x in b)
        if self.table is not None:
            return self.table[b]
        return assemble_g(self.blocking, b)

    def rank(self, profile: RankingProfile) -> Permutation:
        return self.g(self.messages(profile))

    __call__ = rank

    @cached_property
    def positions_table(self) -> np.ndarray:
        n = self.n
        if self.table is not None:
            pos = np.empty((1 << n, n), dtype=np.int8)
            for code in range(1 << n):
                pos[code] = self.table[bits_of(code, n)].inverse
            return pos
        return positions_from_blocking(self.blocking, np.arange(1 << n, dtype=np.int64))

    def realize(self, b: Sequence[int]) -> RankingProfile:
        return realize_messages(self.rho, b)

    def ifr_witness(self, j: int, k: int) -> RankingProfile:
        return ifr_witness(self, j, k)


def n4_mechanism() -> BlockingMechanism:
    return BlockingMechanism(_data.G4_RHO, table=g4_table(), label="blocking-n4")


def fixture_mechanism(n: int) -> BlockingMechanism:
    rho, graph = fixture_multigraph(n)
    return BlockingMechanism(rho, blocking_from_multigraph(rho, graph), label=f"blocking-fixture-{n}")


def mechanism_from_multigraph(rho: Sequence[int], graph: ColoredMultigraph, label: str = "blocking") -> BlockingMechanism:
    return BlockingMechanism(tuple(rho), blocking_from_multigraph(rho, graph), label=label)


def random_mechanism(n: int, seed: int, max_retries: int = DEFAULT_MAX_RETRIES) -> BlockingMechanism:
    rho = successor_rho(n)
    graph = random_multigraph(n, rho, seed, max_retries)
    return mechanism_from_multigraph(rho, graph, label=f"blocking-random-{n}-seed{seed}")


def blocking_mechanism(n: int, seed: int | None = None, max_retries: int = DEFAULT_MAX_RETRIES) -> BlockingMechanism:
    """The mechanism for any n >= 4: table (n=4), explicit graph (5..10), random graph (>= 11)."""
    if n < 4:
        raise ValueError("no such mechanism exists for n < 4")
    if n == 4:
        return n4_mechanism()
    if n <= 10:
        return fixture_mechanism(n)
    if seed is None:
        raise ValueError("n >= 11 needs a seed for the random multigraph")
    return random_mechanism(n, seed, max_retries)


def mechanism_rank(profile: RankingProfile, mech: BlockingMechanism) -> Permutation:
    return mech.rank(profile)


def ifr_witness(mech: BlockingMechanism, j: int, k: int) -> RankingProfile:
    """A profile under which agent ``j`` ends in position ``k``."""
    n = mech.n
    if mech.blocking is None:
        for code in range(1 << n):
            b = bits_of(code, n)
            if mech.g(b)[k] == j:
                return mech.realize(b)
        raise AssertionError(f"no message vector puts agent {j} at position {k}")
    s = mech.blocking
    b = [0] * n
    if k != j:
        for i in range(n):
            if i not in (j, k):
                b[i] = 0 if not (s.masks[0][i][j] >> k) & 1 else 1
    else:
        others = [i for i in range(n) if i != j]
        first = others[0]
        b[first] = 0 if bin(s.masks[0][first][j]).count("1") >= 2 else 1
        union = s.masks[b[first]][first][j]
        for i in others[1:]:
            for bit in (0, 1):
                grown = union | s.masks[bit][i][j]
                if grown != union:
                    b[i] = bit
                    union = grown
                    break
            else:
                b[i] = 0
    return mech.realize(b)
