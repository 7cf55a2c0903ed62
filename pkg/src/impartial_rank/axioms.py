"""Verifiers for the ranking axioms, for any object with ``n`` and ``rank(profile)``.

Three modes:

``exhaustive``
    every profile in (n!)^n, feasible for n <= 4.  The mechanism is evaluated
    once per profile into a positions table and the axioms are read off it.
``reduced``
    exhaustive over a quotient of the profile space that the mechanism's
    structure makes sufficient: message vectors for blocking mechanisms,
    decisive triples for the weakly unanimous one.
``sampled``
    seeded random tests.  A sampled run never reports ``holds``.

``auto`` picks the first of these that is feasible.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Any, Iterable, Mapping, Protocol, Sequence

import numpy as np

from .blocking import BlockingMechanism, bits_of, realize_message
from .perms import Permutation, RankingProfile, all_permutations, lex_unrank, replace
from .tricolor import RelabeledMechanism, TricolorMechanism, sweep_all_triples

FULL_PROFILE_LIMIT = 400_000
WEAK_UNANIMITY_LIMIT = 8
DEFAULT_TRIALS = 10_000
DEFAULT_SEED = 0

AXIOMS = ("impartiality", "monotonicity", "individual-full-rank", "weak-unanimity", "unanimity")

HOLDS, VIOLATED, INCONCLUSIVE = "holds", "violated", "inconclusive-sampled"


class Mechanism(Protocol):
    n: int

    def rank(self, profile: RankingProfile) -> Permutation: ...


class ModeInfeasible(ValueError):
    """The requested verification mode cannot run for this mechanism or size."""


@dataclass(frozen=True)
class AxiomReport:
    axiom: str
    mode: str
    verdict: str
    witness: dict[str, Any] | None = None
    trials: int | None = None
    seed: int | None = None
    checked: int = 0
    notes: tuple[str, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        if self.verdict == VIOLATED and self.witness is None:
            raise ValueError("a violated verdict needs a witness")
        if self.verdict == HOLDS and self.mode == "sampled":
            raise ValueError("sampling cannot establish that an axiom holds")

    @property
    def holds(self) -> bool:
        return self.verdict == HOLDS

    @property
    def violated(self) -> bool:
        return self.verdict == VIOLATED

    def to_json(self) -> dict:
        out = {"axiom": self.axiom, "mode": self.mode, "verdict": self.verdict, "checked": self.checked}
        if self.trials is not None:
            out["trials"], out["seed"] = self.trials, self.seed
        if self.witness is not None:
            out["witness"] = self.witness
        if self.notes:
            out["notes"] = list(self.notes)
        return out


def _profile_json(p: RankingProfile) -> list[list[int]]:
    return p.to_lists()


def _witness(profile: RankingProfile, deviation: RankingProfile | None = None, **details: Any) -> dict:
    w: dict[str, Any] = {"profile": _profile_json(profile)}
    if deviation is not None:
        w["deviation"] = _profile_json(deviation)
    w.update(details)
    return w


# ------------------------------------------------------------ full tables


def full_profile_count(n: int) -> int:
    return math.factorial(n) ** n


def full_positions_table(mech: Mechanism) -> np.ndarray:
    """Positions of every agent for every profile, shape ``(m,)*n + (n,)`` with m = n!.

    Axis i indexes agent i's ranking in lexicographic order.
    """
    n = mech.n
    total = full_profile_count(n)
    if total > FULL_PROFILE_LIMIT:
        raise ModeInfeasible(f"{total} profiles for n={n} exceeds the exhaustive limit {FULL_PROFILE_LIMIT}")
    perms = all_permutations(n)
    table = np.empty((total, n), dtype=np.int8)
    for idx, rows in enumerate(itertools.product(perms, repeat=n)):
        table[idx] = mech.rank(RankingProfile(rows)).inverse
    return table.reshape((len(perms),) * n + (n,))


def _profile_at(n: int, index: Sequence[int]) -> RankingProfile:
    return RankingProfile(tuple(lex_unrank(n, int(p)) for p in index))


def _full_impartiality(mech: Mechanism, table: np.ndarray) -> AxiomReport:
    n = mech.n
    for i in range(n):
        col = np.moveaxis(table[..., i], i, 0)
        bad = (col != col[0:1]).any(axis=0)
        if bad.any():
            rest = [int(x) for x in np.argwhere(bad)[0]]
            line = col[(slice(None), *rest)]
            dev_p = int(np.argmax(line != line[0]))
            base = rest[:i] + [0] + rest[i:]
            dev = rest[:i] + [dev_p] + rest[i:]
            return AxiomReport(
                "impartiality", "exhaustive", VIOLATED,
                _witness(_profile_at(n, base), _profile_at(n, dev), agent=i),
                checked=table.size // n,
            )
    return AxiomReport("impartiality", "exhaustive", HOLDS, checked=table.size // n)


def _adjacent_swaps(n: int) -> tuple[np.ndarray, np.ndarray]:
    """``up[p, k]`` is the index of ranking p with positions k-1 and k swapped (so the agent at
    position k moves up by one) and ``mover[p, k]`` is that agent; column 0 is unused."""
    perms = all_permutations(n)
    index = {p.image: t for t, p in enumerate(perms)}
    up = np.zeros((len(perms), n), dtype=np.int64)
    mover = np.zeros((len(perms), n), dtype=np.int64)
    for t, p in enumerate(perms):
        for k in range(1, n):
            up[t, k] = index[p.swap_positions(k - 1, k).image]
            mover[t, k] = p[k]
    return up, mover


def _full_monotonicity(mech: Mechanism, table: np.ndarray) -> AxiomReport:
    n = mech.n
    up, mover = _adjacent_swaps(n)
    m = up.shape[0]
    checked = 0
    for i in range(n):
        t = np.moveaxis(table, i, 0)  # (m, rest..., n)
        for k in range(1, n):
            before = t[np.arange(m)]
            after = t[up[:, k]]
            movers = mover[:, k]
            # position of the moving agent, before and after its upward step in ranking i
            sel = movers.reshape((m,) + (1,) * (n - 1) + (1,))
            pb = np.take_along_axis(before, np.broadcast_to(sel, before.shape[:-1] + (1,)), axis=-1)[..., 0]
            pa = np.take_along_axis(after, np.broadcast_to(sel, after.shape[:-1] + (1,)), axis=-1)[..., 0]
            checked += pb.size
            bad = pa > pb
            if bad.any():
                loc = [int(x) for x in np.argwhere(bad)[0]]
                p, rest = loc[0], loc[1:]
                base = rest[:i] + [p] + rest[i:]
                dev = rest[:i] + [int(up[p, k])] + rest[i:]
                return AxiomReport(
                    "monotonicity", "exhaustive", VIOLATED,
                    _witness(_profile_at(n, base), _profile_at(n, dev), voter=i, agent=int(mover[p, k])),
                    checked=checked,
                )
    return AxiomReport("monotonicity", "exhaustive", HOLDS, checked=checked)


def _full_ifr(mech: Mechanism, table: np.ndarray) -> AxiomReport:
    n = mech.n
    flat = table.reshape(-1, n)
    reach = np.zeros((n, n), dtype=bool)
    for j in range(n):
        reach[j, np.unique(flat[:, j])] = True
    if not reach.all():
        j, k = (int(x) for x in np.argwhere(~reach)[0])
        return AxiomReport(
            "individual-full-rank", "exhaustive", VIOLATED,
            {"agent": j, "position": k, "reason": "no profile places the agent there"},
            checked=flat.shape[0],
        )
    return AxiomReport("individual-full-rank", "exhaustive", HOLDS, checked=flat.shape[0])


def _full_unanimity(mech: Mechanism, table: np.ndarray) -> AxiomReport:
    n = mech.n
    perms = all_permutations(n)
    inv = np.array([p.inverse for p in perms], dtype=np.int8)  # (m, n)
    flat = table.reshape(-1, n)
    m = len(perms)
    idx = np.indices((m,) * n).reshape(n, -1)  # idx[i, profile] = ranking index of voter i
    for a in range(n):
        for b in range(n):
            if a == b:
                continue
            agreed = np.ones(flat.shape[0], dtype=bool)
            for i in range(n):
                agreed &= inv[idx[i], a] < inv[idx[i], b]
            bad = agreed & (flat[:, a] > flat[:, b])
            if bad.any():
                r = int(np.argmax(bad))
                return AxiomReport(
                    "unanimity", "exhaustive", VIOLATED,
                    _witness(_profile_at(n, idx[:, r]), pair=[a, b]),
                    checked=flat.shape[0],
                )
    return AxiomReport("unanimity", "exhaustive", HOLDS, checked=flat.shape[0])


# ------------------------------------------------------------ helpers


def _is_blocking(mech: Any) -> bool:
    return isinstance(mech, BlockingMechanism)


def _is_tricolor(mech: Any) -> bool:
    return isinstance(mech, TricolorMechanism)


def _has_reduction(mech: Any, axiom: str) -> bool:
    if _is_blocking(mech):
        return axiom in ("impartiality", "monotonicity", "individual-full-rank")
    if _is_tricolor(mech):
        if axiom == "impartiality":
            return mech.n == 5
        return axiom == "individual-full-rank"
    return False


def _resolve_mode(mech: Mechanism, axiom: str, mode: str) -> str:
    if mode not in ("auto", "exhaustive", "reduced", "sampled"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "auto":
        if full_profile_count(mech.n) <= FULL_PROFILE_LIMIT:
            return "exhaustive"
        return "reduced" if _has_reduction(mech, axiom) else "sampled"
    if mode == "exhaustive" and full_profile_count(mech.n) > FULL_PROFILE_LIMIT:
        raise ModeInfeasible(f"full-profile enumeration is infeasible for n={mech.n}; use reduced or sampled")
    if mode == "reduced" and not _has_reduction(mech, axiom):
        raise ModeInfeasible(f"no exhaustive reduction of {axiom} is known for {type(mech).__name__} n={mech.n}")
    return mode


def random_profile(n: int, rng: np.random.Generator) -> RankingProfile:
    return RankingProfile(tuple(Permutation(tuple(int(x) for x in rng.permutation(n))) for _ in range(n)))


def _random_perm(n: int, rng: np.random.Generator) -> Permutation:
    return Permutation(tuple(int(x) for x in rng.permutation(n)))


def _realized_check(mech: BlockingMechanism, limit: int = 1 << 10) -> None:
    """The reduced checks read the mechanism's g table; confirm it matches rank() on realized profiles."""
    n = mech.n
    table = mech.positions_table
    codes = range(1 << n) if n <= 10 else np.random.default_rng(0).integers(0, 1 << n, limit)
    for code in codes:
        b = bits_of(int(code), n)
        got = mech.rank(mech.realize(b)).inverse
        if tuple(int(x) for x in table[int(code)]) != got:
            raise AssertionError(f"g table disagrees with rank() at messages {b}")


def _blocking_positions(mech: BlockingMechanism, code: int) -> tuple[int, ...]:
    return tuple(int(x) for x in mech.positions_table[code])


# ------------------------------------------------------------ impartiality


def check_impartiality(
    mech: Mechanism, mode: str = "auto", trials: int = DEFAULT_TRIALS, seed: int = DEFAULT_SEED,
    jobs: int = 1, table: np.ndarray | None = None,
) -> AxiomReport:
    mode = _resolve_mode(mech, "impartiality", mode)
    n = mech.n
    if mode == "exhaustive":
        return _full_impartiality(mech, full_positions_table(mech) if table is None else table)
    if mode == "reduced" and _is_blocking(mech):
        _realized_check(mech)
        pos = mech.positions_table
        for code in range(1 << n):
            for i in range(n):
                other = code ^ (1 << i)
                if pos[code, i] != pos[other, i]:
                    b = bits_of(code, n)
                    base = mech.realize(b)
                    dev = replace(base, i, realize_message(n, i, mech.rho[i], 1 - b[i]))
                    return AxiomReport("impartiality", "reduced-exhaustive", VIOLATED,
                                       _witness(base, dev, agent=i), checked=code * n + i + 1)
        return AxiomReport("impartiality", "reduced-exhaustive", HOLDS, checked=(1 << n) * n,
                           notes=("all message vectors, both realizations of each agent's bit",))
    if mode == "reduced":
        res = sweep_all_triples(n, jobs=jobs)
        if not res["ok"]:
            if res["condition"] == "bijection":
                raise AssertionError(f"mechanism output is not a ranking at decisive triple {res['witness']}")
            p, q, r = res["witness"]
            agent = int(res["condition"].split("-")[1])
            base = _decisive_profile(n, (p, q, r))
            ref = [p, q, r]
            ref[agent] = 0
            return AxiomReport("impartiality", "reduced-exhaustive", VIOLATED,
                               _witness(base, _decisive_profile(n, tuple(ref)), agent=agent),
                               checked=res["checked"])
        return AxiomReport("impartiality", "reduced-exhaustive", HOLDS, checked=res["checked"],
                           notes=("decisive agents: every decisive triple, own coordinate varied over all n! values",
                                  "non-decisive agents: output reads only the decisive rankings"))
    rng = np.random.default_rng(seed)
    for t in range(trials):
        base = random_profile(n, rng)
        i = int(rng.integers(n))
        dev = replace(base, i, _random_perm(n, rng))
        if mech.rank(base).position(i) != mech.rank(dev).position(i):
            return AxiomReport("impartiality", "sampled", VIOLATED, _witness(base, dev, agent=i),
                               trials=trials, seed=seed, checked=t + 1)
    return AxiomReport("impartiality", "sampled", INCONCLUSIVE, trials=trials, seed=seed, checked=trials)


def _decisive_profile(n: int, idx: tuple[int, int, int]) -> RankingProfile:
    ident = Permutation.identity(n)
    return RankingProfile(tuple(lex_unrank(n, p) for p in idx) + (ident,) * (n - 3))


# ------------------------------------------------------------ monotonicity


def check_monotonicity(
    mech: Mechanism, mode: str = "auto", trials: int = DEFAULT_TRIALS, seed: int = DEFAULT_SEED,
    table: np.ndarray | None = None,
) -> AxiomReport:
    mode = _resolve_mode(mech, "monotonicity", mode)
    n = mech.n
    if mode == "exhaustive":
        return _full_monotonicity(mech, full_positions_table(mech) if table is None else table)
    if mode == "reduced":
        # Only a step of rho_i past i (or of i past rho_i) in voter i's ranking can change a
        # message; every other adjacent step leaves the output untouched.  The first case
        # turns bit i from 0 to 1, the second is covered by impartiality.
        _realized_check(mech)
        imp = check_impartiality(mech, "reduced")
        if imp.violated:
            return AxiomReport("monotonicity", "reduced-exhaustive", VIOLATED, imp.witness, checked=imp.checked)
        pos = mech.positions_table
        for code in range(1 << n):
            for i in range(n):
                if (code >> i) & 1:
                    continue
                r = mech.rho[i]
                if pos[code | (1 << i), r] > pos[code, r]:
                    base = mech.realize(bits_of(code, n))
                    rest = [a for a in range(n) if a not in (i, r)]
                    low = replace(base, i, Permutation((i, r, *rest)))
                    high = replace(base, i, Permutation((r, i, *rest)))
                    return AxiomReport("monotonicity", "reduced-exhaustive", VIOLATED,
                                       _witness(low, high, voter=i, agent=r), checked=code * n + i + 1)
        return AxiomReport("monotonicity", "reduced-exhaustive", HOLDS, checked=(1 << n) * n)
    rng = np.random.default_rng(seed)
    for t in range(trials):
        base = random_profile(n, rng)
        i, k = int(rng.integers(n)), int(rng.integers(1, n))
        dev = replace(base, i, base[i].swap_positions(k - 1, k))
        j0 = base[i][k]
        if mech.rank(dev).position(j0) > mech.rank(base).position(j0):
            return AxiomReport("monotonicity", "sampled", VIOLATED, _witness(base, dev, voter=i, agent=j0),
                               trials=trials, seed=seed, checked=t + 1)
    return AxiomReport("monotonicity", "sampled", INCONCLUSIVE, trials=trials, seed=seed, checked=trials)


# ------------------------------------------------------------ individual full rank


def ifr_candidates(mech: Mechanism, j: int, k: int) -> Iterable[RankingProfile]:
    """Profiles likely to place agent ``j`` at position ``k``."""
    n = mech.n
    if _is_blocking(mech):
        yield mech.ifr_witness(j, k)
        return
    # a unanimous profile with j at k is a witness for any weakly unanimous mechanism
    rest = [a for a in range(n) if a != j]
    yield RankingProfile.unanimous(Permutation(tuple(rest[:k] + [j] + rest[k:])))


def check_individual_full_rank(
    mech: Mechanism, mode: str = "auto", trials: int = DEFAULT_TRIALS, seed: int = DEFAULT_SEED,
    table: np.ndarray | None = None,
) -> AxiomReport:
    n = mech.n
    if mode == "exhaustive" or (mode == "auto" and full_profile_count(n) <= FULL_PROFILE_LIMIT and table is not None):
        _resolve_mode(mech, "individual-full-rank", "exhaustive")
        return _full_ifr(mech, full_positions_table(mech) if table is None else table)
    witnesses: dict[str, list[list[int]]] = {}
    missing = []
    for j in range(n):
        for k in range(n):
            for cand in ifr_candidates(mech, j, k):
                if mech.rank(cand).position(j) == k:
                    witnesses[f"{j},{k}"] = _profile_json(cand)
                    break
            else:
                missing.append((j, k))
    if missing:
        # hints failed; sample for the rest
        rng = np.random.default_rng(seed)
        for _ in range(trials if mode != "reduced" else 0):
            p = random_profile(n, rng)
            out = mech.rank(p)
            for j, k in list(missing):
                if out.position(j) == k:
                    witnesses[f"{j},{k}"] = _profile_json(p)
                    missing.remove((j, k))
            if not missing:
                break
    if missing:
        if full_profile_count(n) <= FULL_PROFILE_LIMIT:
            return _full_ifr(mech, full_positions_table(mech))
        return AxiomReport("individual-full-rank", "sampled", INCONCLUSIVE, trials=trials, seed=seed,
                           checked=len(witnesses), notes=(f"unreached pairs: {missing}",))
    # a complete witness set proves the axiom whatever the search strategy
    return AxiomReport("individual-full-rank", "reduced-exhaustive", HOLDS, checked=n * n,
                       witness=None, notes=(f"{n * n} witness profiles",))


def ifr_witnesses(mech: Mechanism) -> dict[tuple[int, int], RankingProfile]:
    out = {}
    for j in range(mech.n):
        for k in range(mech.n):
            for cand in ifr_candidates(mech, j, k):
                if mech.rank(cand).position(j) == k:
                    out[(j, k)] = cand
                    break
    return out


# ------------------------------------------------------------ unanimity


def check_weak_unanimity(
    mech: Mechanism, mode: str = "auto", trials: int = DEFAULT_TRIALS, seed: int = DEFAULT_SEED
) -> AxiomReport:
    n = mech.n
    if mode == "sampled" or (mode == "auto" and n > WEAK_UNANIMITY_LIMIT):
        rng = np.random.default_rng(seed)
        for t in range(trials):
            p = _random_perm(n, rng)
            prof = RankingProfile.unanimous(p)
            if mech.rank(prof) != p:
                return AxiomReport("weak-unanimity", "sampled", VIOLATED,
                                   _witness(prof, output=list(mech.rank(prof).image)),
                                   trials=trials, seed=seed, checked=t + 1)
        return AxiomReport("weak-unanimity", "sampled", INCONCLUSIVE, trials=trials, seed=seed, checked=trials)
    if n > WEAK_UNANIMITY_LIMIT:
        raise ModeInfeasible(f"{math.factorial(n)} unanimous profiles is beyond the exhaustive limit")
    count = 0
    for p in all_permutations(n):
        count += 1
        prof = RankingProfile.unanimous(p)
        out = mech.rank(prof)
        if out != p:
            return AxiomReport("weak-unanimity", "exhaustive", VIOLATED,
                               _witness(prof, output=list(out.image)), checked=count)
    return AxiomReport("weak-unanimity", "exhaustive", HOLDS, checked=count)


def unanimity_violation(mech: Mechanism, profile: RankingProfile) -> tuple[int, int] | None:
    """A pair (a, b) that every voter ranks a above b but the output reverses, if any."""
    out = mech.rank(profile)
    n = profile.n
    for a in range(n):
        for b in range(n):
            if a != b and out.position(a) > out.position(b):
                if all(p.position(a) < p.position(b) for p in profile):
                    return a, b
    return None


def check_unanimity(
    mech: Mechanism, mode: str = "auto", trials: int = DEFAULT_TRIALS, seed: int = DEFAULT_SEED,
    table: np.ndarray | None = None, profiles: Iterable[RankingProfile] = (),
) -> AxiomReport:
    """Pairwise unanimity.  ``profiles`` are tried first in sampled mode (e.g. a known witness)."""
    n = mech.n
    if mode == "exhaustive" or (mode == "auto" and full_profile_count(n) <= FULL_PROFILE_LIMIT):
        _resolve_mode(mech, "unanimity", "exhaustive")
        return _full_unanimity(mech, full_positions_table(mech) if table is None else table)
    if mode == "reduced":
        raise ModeInfeasible("unanimity has no exhaustive reduction; use sampled")
    from .impossibility import chain_profiles

    checked = 0
    for prof in itertools.chain(profiles, chain_profiles(n)):
        checked += 1
        pair = unanimity_violation(mech, prof)
        if pair is not None:
            return AxiomReport("unanimity", "sampled", VIOLATED, _witness(prof, pair=list(pair)),
                               trials=trials, seed=seed, checked=checked)
    rng = np.random.default_rng(seed)
    for t in range(trials):
        prof = random_profile(n, rng)
        pair = unanimity_violation(mech, prof)
        if pair is not None:
            return AxiomReport("unanimity", "sampled", VIOLATED, _witness(prof, pair=list(pair)),
                               trials=trials, seed=seed, checked=checked + t + 1)
    return AxiomReport("unanimity", "sampled", INCONCLUSIVE, trials=trials, seed=seed, checked=checked + trials)


# ------------------------------------------------------------ suites and replay

CHECKS = {
    "impartiality": check_impartiality,
    "monotonicity": check_monotonicity,
    "individual-full-rank": check_individual_full_rank,
    "weak-unanimity": check_weak_unanimity,
    "unanimity": check_unanimity,
}


def claimed_axioms(mech: Any) -> tuple[str, ...]:
    if _is_blocking(mech):
        return ("impartiality", "monotonicity", "individual-full-rank")
    if isinstance(mech, (TricolorMechanism, RelabeledMechanism)):
        return ("impartiality", "weak-unanimity", "individual-full-rank")
    return ()


def run_axioms(
    mech: Mechanism, axioms: Sequence[str] = AXIOMS, mode: str = "auto",
    trials: int = DEFAULT_TRIALS, seed: int = DEFAULT_SEED, jobs: int = 1,
) -> dict[str, AxiomReport]:
    """Run several checks, sharing one full positions table when exhaustive mode is used."""
    table = None
    uses_table = {"impartiality", "monotonicity", "individual-full-rank", "unanimity"}
    if mode in ("auto", "exhaustive") and full_profile_count(mech.n) <= FULL_PROFILE_LIMIT and uses_table & set(axioms):
        table = full_positions_table(mech)
    out = {}
    for ax in axioms:
        if ax not in CHECKS:
            raise ValueError(f"unknown axiom {ax!r}; choose from {', '.join(AXIOMS)}")
        kwargs: dict[str, Any] = {"mode": mode, "trials": trials, "seed": seed}
        if ax in uses_table:
            kwargs["table"] = table
        if ax == "impartiality":
            kwargs["jobs"] = jobs
        out[ax] = CHECKS[ax](mech, **kwargs)
    return out


def replay_witness(mech: Mechanism, report: AxiomReport) -> bool:
    """Re-evaluate a violated report's witness; True iff the violation reproduces."""
    if not report.violated:
        raise ValueError("only violated reports carry a witness")
    w = report.witness
    if report.axiom == "individual-full-rank":
        return check_individual_full_rank(mech, mode="exhaustive").violated
    base = RankingProfile.of(w["profile"])
    if report.axiom == "impartiality":
        dev, i = RankingProfile.of(w["deviation"]), w["agent"]
        return mech.rank(base).position(i) != mech.rank(dev).position(i)
    if report.axiom == "monotonicity":
        dev, j0 = RankingProfile.of(w["deviation"]), w["agent"]
        return mech.rank(dev).position(j0) > mech.rank(base).position(j0)
    if report.axiom == "weak-unanimity":
        return mech.rank(base) != base[0]
    if report.axiom == "unanimity":
        a, b = w["pair"]
        out = mech.rank(base)
        return all(p.position(a) < p.position(b) for p in base) and out.position(a) > out.position(b)
    raise ValueError(f"unknown axiom {report.axiom!r}")


# Implications between axioms: stronger => weaker.
IMPLICATIONS = (
    ("unanimity", "weak-unanimity"),
    ("weak-unanimity", "individual-full-rank"),
    ("unanimity", "individual-full-rank"),
)


@dataclass(frozen=True)
class MetaVerdict:
    ok: bool
    inconsistencies: tuple[tuple[str, str], ...] = ()

    def __bool__(self) -> bool:
        return self.ok


def implication_meta_check(reports: Mapping[str, AxiomReport] | Iterable[AxiomReport]) -> MetaVerdict:
    """Flag any pair where a stronger axiom holds while a weaker one is violated."""
    if not isinstance(reports, Mapping):
        reports = {r.axiom: r for r in reports}
    bad = []
    for strong, weak in IMPLICATIONS:
        s, w = reports.get(strong), reports.get(weak)
        if s is not None and w is not None and s.holds and w.violated:
            bad.append((strong, weak))
    return MetaVerdict(not bad, tuple(bad))
