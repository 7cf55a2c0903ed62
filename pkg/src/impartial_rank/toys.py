"""Small reference mechanisms used to exercise the verifiers from both sides."""

from __future__ import annotations

from dataclasses import dataclass

from . import _data
from .blocking import g4_table, messages
from .perms import Permutation, RankingProfile


@dataclass(frozen=True)
class ConstantMechanism:
    output: Permutation

    @property
    def n(self) -> int:
        return self.output.n

    def rank(self, profile: RankingProfile) -> Permutation:
        return self.output

    __call__ = rank


@dataclass(frozen=True)
class Dictatorship:
    n: int
    dictator: int = 0

    def rank(self, profile: RankingProfile) -> Permutation:
        return profile[self.dictator]

    __call__ = rank


@dataclass(frozen=True)
class AntiMonotone:
    """The n = 4 blocking table read with every message bit inverted."""

    n: int = 4

    def rank(self, profile: RankingProfile) -> Permutation:
        b = messages(profile, _data.G4_RHO)
        return g4_table()[tuple(1 - x for x in b)]

    __call__ = rank
