# core/rules/players.py
from __future__ import annotations

import copy
from abc import ABC, abstractmethod
from typing import ClassVar, FrozenSet, Hashable, List, Optional, Protocol, Sequence, Tuple

from core.rules.ruleset import Observation


class TraceEvent(Protocol):
    def format_line(self) -> str:
        ...


class CatStrategy(ABC):
    """
    Base class for every cat. The engine calls next_move once per round with
    the observation of the previous round (None in round 1) and nothing else.
    """

    name: ClassVar[str] = ""

    # Scripted cats end the game after their script.
    horizon: Optional[int] = None

    def __init__(self) -> None:
        self.events: List[TraceEvent] = []

    @abstractmethod
    def next_move(self, observation: Optional[Observation]) -> int:
        raise NotImplementedError(f"{self.__class__.__name__}.next_move() not implemented")

    def clone(self) -> "CatStrategy":
        return copy.deepcopy(self)

    def state_key(self) -> Optional[Hashable]:
        """Hashable snapshot of everything that drives future moves, or None if unknown."""
        return None

    def soundness_violation(self, positions: FrozenSet[int]) -> Optional[str]:
        """Hook for audits: called after next_move with the mouse positions still possible."""
        return None

    def tally(self) -> Optional[Tuple[int, ...]]:
        """Per-game counters an audit should maximise, if the strategy keeps any."""
        return None


class MouseAgent(ABC):
    name: ClassVar[str] = ""
    is_phantom: ClassVar[bool] = False


class ConcreteMouse(MouseAgent):
    """A mouse that commits to actual vertices."""

    is_phantom = False

    @abstractmethod
    def choose(self, round_no: int, cat: int, cat_history: Sequence[int], legal: FrozenSet[int]) -> Optional[int]:
        """
        Pick m_i knowing c_1..c_i. `legal` is every vertex in round 1 and the
        movement rule's set afterwards. Return None only when `legal` is empty.
        """
        raise NotImplementedError


class PhantomMouse(MouseAgent):
    """A mouse that commits only to signals and keeps every consistent trajectory open."""

    is_phantom = True

    @abstractmethod
    def signal(self, round_no: int, cat: int) -> Optional[Observation]:
        """The observation for this round, or None when no trajectory has a legal move."""
        raise NotImplementedError

    @abstractmethod
    def witness(self) -> List[int]:
        raise NotImplementedError
