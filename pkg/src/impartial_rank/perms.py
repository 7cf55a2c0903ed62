"""Permutations, ranking profiles and lexicographic ranking of permutations.

A ranking of n agents is stored in one-line notation: ``image[k]`` is the agent
in position ``k``.  The inverse (agent -> position) is computed lazily.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

# 21! does not fit in 64 bits.
MAX_RANKABLE_N = 20


class CapacityError(ValueError):
    """Raised when a construction would need permutation indices beyond 20!."""


class ProfileFormatError(ValueError):
    """Raised when a ranking or profile fails validation."""


@dataclass(frozen=True)
class ModIndex:
    """An element of Z_r, used for the +_r / -_r index arithmetic."""

    value: int
    modulus: int

    def __post_init__(self) -> None:
        if self.modulus <= 0:
            raise ValueError("modulus must be positive")
        object.__setattr__(self, "value", self.value % self.modulus)

    def __add__(self, other: int | ModIndex) -> ModIndex:
        return ModIndex(self.value + int(other), self.modulus)

    def __sub__(self, other: int | ModIndex) -> ModIndex:
        return ModIndex(self.value - int(other), self.modulus)

    def __int__(self) -> int:
        return self.value

    __index__ = __int__


@dataclass(frozen=True)
class Permutation:
    image: tuple[int, ...]

    def __post_init__(self) -> None:
        image = tuple(int(x) for x in self.image)
        object.__setattr__(self, "image", image)
        n = len(image)
        if n == 0:
            raise ProfileFormatError("a ranking must contain at least one agent")
        seen = [False] * n
        for pos, agent in enumerate(image):
            if not 0 <= agent < n:
                raise ProfileFormatError(f"position {pos}: agent {agent} outside 0..{n - 1}")
            if seen[agent]:
                raise ProfileFormatError(f"position {pos}: agent {agent} appears twice")
            seen[agent] = True

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(n)))

    @classmethod
    def from_positions(cls, positions: Sequence[int]) -> Permutation:
        """Build the ranking in which agent ``j`` sits at ``positions[j]``."""
        image = [-1] * len(positions)
        for agent, pos in enumerate(positions):
            if not 0 <= pos < len(positions) or image[pos] != -1:
                raise ProfileFormatError(f"positions {tuple(positions)} are not a bijection")
            image[pos] = agent
        return cls(tuple(image))

    @property
    def n(self) -> int:
        return len(self.image)

    @cached_property
    def inverse(self) -> tuple[int, ...]:
        inv = [0] * len(self.image)
        for pos, agent in enumerate(self.image):
            inv[agent] = pos
        return tuple(inv)

    def position(self, agent: int) -> int:
        return self.inverse[agent]

    def __getitem__(self, position: int) -> int:
        return self.image[position]

    def __len__(self) -> int:
        return len(self.image)

    def __iter__(self) -> Iterator[int]:
        return iter(self.image)

    def __str__(self) -> str:
        return "(" + " ".join(map(str, self.image)) + ")"

    def inverted(self) -> Permutation:
        return Permutation(self.inverse)

    def swap_positions(self, a: int, b: int) -> Permutation:
        image = list(self.image)
        image[a], image[b] = image[b], image[a]
        return Permutation(tuple(image))


def _check_capacity(n: int) -> None:
    if n > MAX_RANKABLE_N:
        raise CapacityError(f"n={n} exceeds the supported maximum of {MAX_RANKABLE_N} for n! indices")


def lex_rank(p: Permutation) -> int:
    """Index of ``p`` among all permutations of its size in lexicographic order."""
    n = p.n
    _check_capacity(n)
    idx = 0
    remaining = list(range(n))
    for k, agent in enumerate(p.image):
        smaller = remaining.index(agent)
        idx += smaller * math.factorial(n - 1 - k)
        remaining.pop(smaller)
    return idx


def lex_unrank(n: int, idx: int) -> Permutation:
    """Inverse of :func:`lex_rank`, decoding ``idx`` through its Lehmer code."""
    _check_capacity(n)
    total = math.factorial(n)
    if not 0 <= idx < total:
        raise IndexError(f"index {idx} outside [0, {n}!)")
    remaining = list(range(n))
    image = []
    for k in range(n - 1, -1, -1):
        digit, idx = divmod(idx, math.factorial(k))
        image.append(remaining.pop(digit))
    return Permutation(tuple(image))


def all_permutations(n: int) -> list[Permutation]:
    """All permutations of [n] in lexicographic order (so index == lex_rank)."""
    return [Permutation(t) for t in itertools.permutations(range(n))]


@dataclass(frozen=True)
class RankingProfile:
    rankings: tuple[Permutation, ...]

    def __post_init__(self) -> None:
        rankings = tuple(r if isinstance(r, Permutation) else Permutation(tuple(r)) for r in self.rankings)
        object.__setattr__(self, "rankings", rankings)
        n = len(rankings)
        if n == 0:
            raise ProfileFormatError("a profile needs at least one ranking")
        for i, r in enumerate(rankings):
            if r.n != n:
                raise ProfileFormatError(f"rankings[{i}] has {r.n} agents, expected {n}")

    @classmethod
    def of(cls, rows: Iterable[Sequence[int]]) -> RankingProfile:
        return cls(tuple(Permutation(tuple(r)) for r in rows))

    @classmethod
    def unanimous(cls, p: Permutation) -> RankingProfile:
        return cls((p,) * p.n)

    @property
    def n(self) -> int:
        return len(self.rankings)

    def __getitem__(self, i: int) -> Permutation:
        return self.rankings[i]

    def __iter__(self) -> Iterator[Permutation]:
        return iter(self.rankings)

    def __len__(self) -> int:
        return len(self.rankings)

    def to_lists(self) -> list[list[int]]:
        return [list(r.image) for r in self.rankings]


def replace(profile: RankingProfile, i: int, p: Permutation) -> RankingProfile:
    """The profile with agent ``i``'s ranking substituted by ``p``."""
    if p.n != profile.n:
        raise ProfileFormatError(f"ranking has {p.n} agents but the profile has {profile.n}")
    if not 0 <= i < profile.n:
        raise ProfileFormatError(f"agent {i} outside 0..{profile.n - 1}")
    rankings = list(profile.rankings)
    rankings[i] = p
    return RankingProfile(tuple(rankings))


def profile_from_json(data: dict | str) -> RankingProfile:
    """Parse ``{"n": 4, "rankings": [[...], ...]}``, raising ProfileFormatError with a field path."""
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise ProfileFormatError(f"line {exc.lineno}: {exc.msg}") from exc
    if not isinstance(data, dict):
        raise ProfileFormatError("profile must be a JSON object")
    if "rankings" not in data:
        raise ProfileFormatError("missing field 'rankings'")
    rows = data["rankings"]
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise ProfileFormatError("'rankings' must be a list of lists")
    n = data.get("n", len(rows))
    if not isinstance(n, int) or n <= 0:
        raise ProfileFormatError("'n' must be a positive integer")
    if len(rows) != n:
        raise ProfileFormatError(f"'rankings' has {len(rows)} rows but n={n}")
    perms = []
    for i, row in enumerate(rows):
        if len(row) != n:
            raise ProfileFormatError(f"rankings[{i}]: expected {n} entries, got {len(row)}")
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in row):
            raise ProfileFormatError(f"rankings[{i}]: entries must be integers")
        try:
            perms.append(Permutation(tuple(row)))
        except ProfileFormatError as exc:
            raise ProfileFormatError(f"rankings[{i}]: {exc}") from None
    return RankingProfile(tuple(perms))


def profile_to_json(profile: RankingProfile) -> dict:
    return {"n": profile.n, "rankings": profile.to_lists()}
