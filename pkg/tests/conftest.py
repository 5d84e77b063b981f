# tests/conftest.py
from __future__ import annotations

import logging
from pathlib import Path
from typing import FrozenSet, List, Optional, Sequence

import pytest

from core.config.workbench_config import VerifySettings, WorkbenchConfig
from core.graph.graph import Graph
from core.logger import BasicLogger
from core.rules.players import CatStrategy, ConcreteMouse
from core.rules.ruleset import Observation


@pytest.fixture
def tmp_project_root(tmp_path: Path) -> Path:
    """Temporary directory for report and config files."""
    return tmp_path


@pytest.fixture
def test_logger() -> logging.Logger:
    return BasicLogger("test-logger", log_to_file=False).get_logger()


@pytest.fixture
def small_config() -> WorkbenchConfig:
    """Config with sample sizes cut down so whole suites run in a test."""
    return make_small_config()


def make_small_config(**verify) -> WorkbenchConfig:
    settings = dict(seed=7, sampled_trees=3, random_games=5, cycle_horizon=60, oracle_depth=2)
    settings.update(verify)
    return WorkbenchConfig(verify=VerifySettings(**settings))


def k2() -> Graph:
    return Graph.from_edges(2, [(0, 1)])


class ScriptCat(CatStrategy):
    """Plays a fixed list of vertices, cycling through it."""

    name = "script"

    def __init__(self, moves: Sequence[int]):
        super().__init__()
        self.moves = list(moves)
        self.played = 0
        self.observations: List[Optional[Observation]] = []

    def next_move(self, observation: Optional[Observation]) -> int:
        self.observations.append(observation)
        move = self.moves[self.played % len(self.moves)]
        self.played += 1
        return move


class ScriptMouse(ConcreteMouse):
    """Visits a fixed list of vertices, cycling through it; the engine checks legality."""

    name = "script"

    def __init__(self, positions: Sequence[int]):
        self.positions = list(positions)
        self.played = 0

    def choose(self, round_no: int, cat: int, cat_history: Sequence[int], legal: FrozenSet[int]) -> Optional[int]:
        if not legal:
            return None
        m = self.positions[self.played % len(self.positions)]
        self.played += 1
        return m
