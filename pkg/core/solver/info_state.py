# core/solver/info_state.py
from __future__ import annotations

from dataclasses import dataclass, field
from typing import FrozenSet, Hashable, Iterable, Optional

from core.graph.graph import INFINITE
from core.mouse.consistency import Element, SuccessorModel


@dataclass(frozen=True)
class InfoState:
    """
    What the cat knows between rounds: the consistent (position, distance)
    pairs and, for movement rules that avoid the cat, its own last vertex.
    Equality and hashing go through the packed key only.
    """

    key: Hashable
    elements: Optional[FrozenSet[Element]] = field(default=None, compare=False)
    last_cat: Optional[int] = field(default=None, compare=False)

    @property
    def initial(self) -> bool:
        return self.elements is None

    @staticmethod
    def start() -> "InfoState":
        return InfoState(key=("start",))

    @staticmethod
    def of(model: SuccessorModel, elements: Iterable[Element], last_cat: Optional[int]) -> "InfoState":
        normalized = model.normalize(elements)
        cat = last_cat if model.tracks_last_cat else None
        return InfoState(key=(pack(model, normalized), cat), elements=normalized, last_cat=cat)

    def positions(self) -> FrozenSet[int]:
        return frozenset(m for m, _ in (self.elements or ()))


def pack(model: SuccessorModel, elements: Iterable[Element]) -> int:
    """One bit per (position, distance code); code 0 is 'untracked', n + 1 is infinity."""
    n = model.graph.vertex_count
    width = n + 2
    mask = 0
    for m, d in elements:
        if d is None:
            code = 0
        elif d == INFINITE:
            code = n + 1
        else:
            code = int(d) + 1
        mask |= 1 << (m * width + code)
    return mask
