# tests/test_audit.py
from __future__ import annotations

from typing import Hashable, Optional

from core.cat.errors import InvariantViolation
from core.cat.transition import TransitionCat, round_bound
from core.graph.named import make_named
from core.rules.players import CatStrategy
from core.rules.ruleset import MAIN_GAME, Observation
from core.solver.audit import StrategyExplorer, explore_cat_strategy
from tests.conftest import ScriptCat, k2


class _StubbornCat(CatStrategy):
    """Always plays the same vertex and says so in its state key."""

    def __init__(self, vertex: int):
        super().__init__()
        self.vertex = vertex

    def next_move(self, observation: Optional[Observation]) -> int:
        return self.vertex

    def state_key(self) -> Hashable:
        return self.vertex


class _BrokenCat(CatStrategy):
    def __init__(self):
        super().__init__()
        self.rounds = 0

    def next_move(self, observation: Optional[Observation]) -> int:
        self.rounds += 1
        if self.rounds > 1:
            raise InvariantViolation("second move unsupported")
        return 0


def test_k2_script_is_audited_without_memo():
    audit = explore_cat_strategy(k2(), MAIN_GAME, ScriptCat([0, 0]), 10)
    assert audit.ok
    assert audit.worst_rounds == 2
    assert audit.worst_tally is None
    assert audit.leaves == 1


def test_survivors_are_reported_at_the_horizon():
    audit = explore_cat_strategy(make_named("cycle", 4), MAIN_GAME, ScriptCat([0, 2]), 6)
    assert not audit.all_captured
    assert audit.survivors
    assert all(len(history) == 6 for history in audit.survivors)


def test_repeated_position_means_the_mouse_escapes():
    audit = explore_cat_strategy(make_named("cycle", 4), MAIN_GAME, _StubbornCat(0), 10_000)
    assert not audit.all_captured
    assert audit.survivors
    assert audit.nodes < 50


def test_strategy_errors_become_violations():
    audit = explore_cat_strategy(make_named("path", 3), MAIN_GAME, _BrokenCat(), 10)
    assert not audit.ok
    assert audit.violations
    assert "InvariantViolation" in audit.violations[0][1]


def test_leaf_callback_sees_every_capture():
    finals = []
    explore_cat_strategy(k2(), MAIN_GAME, ScriptCat([0, 0]), 10, on_leaf=lambda s, captured: finals.append((s, captured)))
    assert len(finals) == 1
    assert all(captured for _, captured in finals)
    assert all(s.positions() == {0} for s, _ in finals)


def test_transition_tally_on_a_path():
    g = make_named("path", 4)
    audit = StrategyExplorer(g, MAIN_GAME, round_bound(4)).run(TransitionCat(g))
    assert audit.ok
    excess, t2, t3, t4 = audit.worst_tally
    assert t2 <= 3
    assert excess + t2 + t3 + t4 <= t2 + t3 + t4 + 1
