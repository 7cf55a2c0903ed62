"""Serializable handles naming a concrete mechanism instance."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Any

from .blocking import DEFAULT_MAX_RETRIES, fixture_mechanism, n4_mechanism, random_mechanism
from .perms import MAX_RANKABLE_N, CapacityError, Permutation
from .toys import AntiMonotone, ConstantMechanism, Dictatorship
from .tricolor import tricolor_mechanism

KINDS = (
    "blocking", "blocking-n4", "blocking-fixture", "blocking-random", "weak-unanimity",
    "constant", "dictatorship", "anti-monotone",
)


class DescriptorError(ValueError):
    """Kind and parameters do not describe a mechanism."""


@dataclass(frozen=True)
class MechanismDescriptor:
    kind: str
    n: int
    seed: int | None = None
    fixture: str | None = None
    max_retries: int = DEFAULT_MAX_RETRIES

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise DescriptorError(f"unknown mechanism kind {self.kind!r}; choose from {', '.join(KINDS)}")
        if self.n > MAX_RANKABLE_N:
            raise CapacityError(f"n={self.n} exceeds the supported maximum of {MAX_RANKABLE_N}")
        if self.n < 2:
            raise DescriptorError("n must be at least 2")
        if self.kind == "blocking":
            if self.n < 4:
                raise DescriptorError("no blocking mechanism exists for n < 4")
            # resolve by size
            kind = "blocking-n4" if self.n == 4 else "blocking-fixture" if 5 <= self.n <= 10 else "blocking-random"
            object.__setattr__(self, "kind", kind)
        k, n = self.kind, self.n
        if k == "blocking-n4" and n != 4:
            raise DescriptorError("blocking-n4 is the n = 4 table")
        if k == "blocking-fixture" and not 5 <= n <= 10:
            raise DescriptorError("explicit multigraphs exist for n = 5..10")
        if k == "blocking-random":
            if n < 11:
                raise DescriptorError("blocking-random needs n >= 11 (smaller n use the explicit fixtures)")
            if self.seed is None:
                raise DescriptorError("blocking-random needs a seed")
        if k == "weak-unanimity" and n < 5:
            raise DescriptorError("the weakly unanimous mechanism needs n >= 5")
        if k == "anti-monotone" and n != 4:
            raise DescriptorError("anti-monotone is defined for n = 4")

    def build(self) -> Any:
        k, n = self.kind, self.n
        if k == "blocking-n4":
            return n4_mechanism()
        if k == "blocking-fixture":
            return fixture_mechanism(n)
        if k == "blocking-random":
            return random_mechanism(n, self.seed, self.max_retries)
        if k == "weak-unanimity":
            return tricolor_mechanism(n)
        if k == "constant":
            return ConstantMechanism(Permutation.identity(n))
        if k == "dictatorship":
            return Dictatorship(n, 0 if self.seed is None else self.seed % n)
        return AntiMonotone()

    def to_json(self) -> dict:
        return {k: v for k, v in asdict(self).items() if v is not None and not (k == "max_retries" and v == DEFAULT_MAX_RETRIES)}

    @classmethod
    def from_json(cls, data: dict) -> MechanismDescriptor:
        try:
            return cls(str(data["kind"]), int(data["n"]), data.get("seed"), data.get("fixture"),
                       int(data.get("max_retries", DEFAULT_MAX_RETRIES)))
        except KeyError as exc:
            raise DescriptorError(f"descriptor is missing field {exc}") from None
