# core/cat/errors.py
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Optional


@dataclass
class StrategyError(Exception):
    message: str
    details: Optional[Any] = None

    def __str__(self) -> str:
        if self.details is None:
            return self.message
        return f"{self.message} | details={self.details!r}"


class InvariantViolation(StrategyError):
    """The observation is impossible for the state the strategy is in."""


class ComponentExhausted(StrategyError):
    """Every candidate position of the component has been ruled out."""


class StrategyExhausted(StrategyError):
    """The strategy ran out of moves without capturing."""


class WrongGraphShape(StrategyError):
    pass
