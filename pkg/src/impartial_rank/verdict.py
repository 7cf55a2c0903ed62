from __future__ import annotations

from dataclasses import dataclass
from typing import Any


@dataclass(frozen=True)
class Verdict:
    """Outcome of a structural check.

    ``mode`` is ``"exhaustive"`` when every case was examined and ``"sampled"``
    when only a random subset was; a sampled pass is not a proof.
    """

    ok: bool
    condition: str | None = None
    witness: tuple[Any, ...] | None = None
    mode: str = "exhaustive"
    checked: int = 0

    def __bool__(self) -> bool:
        return self.ok

    @property
    def label(self) -> str:
        if not self.ok:
            return "violated"
        return "holds" if self.mode == "exhaustive" else "sampled, not proven"

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "label": self.label,
            "condition": self.condition,
            "witness": None if self.witness is None else _jsonable(self.witness),
            "mode": self.mode,
            "checked": self.checked,
        }


def _jsonable(x: Any) -> Any:
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (set, frozenset)):
        return sorted(_jsonable(v) for v in x)
    if hasattr(x, "image"):
        return list(x.image)
    if hasattr(x, "item"):
        return x.item()
    return x
