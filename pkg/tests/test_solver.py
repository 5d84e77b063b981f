# tests/test_solver.py
from __future__ import annotations

from dataclasses import replace

import pytest

from core.config.workbench_config import SolverLimits
from core.graph.enumeration import enumerate_labeled_trees
from core.graph.graph import Graph
from core.graph.named import make_named
from core.mouse.consistency import SuccessorModel
from core.rules.ruleset import (
    MAIN_GAME,
    ORIGINAL_GAME,
    SEAGER_DEMO_GAME,
    FeedbackChannel,
    MovementRule,
    RuleSet,
)
from core.solver.info_state import InfoState, pack
from core.solver.solver import (
    GameTable,
    NotWinningError,
    SolveOutcome,
    SolverLimitError,
    optimal_cat_move,
    solve,
    solve_game,
    variant_table,
)
from tests.conftest import k2

ALL_RULES = [RuleSet(c, m) for c in FeedbackChannel for m in MovementRule]


@pytest.mark.parametrize("rules", ALL_RULES, ids=lambda r: r.label)
def test_k1_is_won_in_one_round(rules):
    result = solve(Graph.from_edges(1, []), rules)
    assert result.outcome is SolveOutcome.CAT_WINS
    assert result.optimal_rounds == 1


def test_k2_needs_two_rounds_and_starts_at_zero():
    table = solve_game(k2(), MAIN_GAME)
    assert table.result().optimal_rounds == 2
    assert optimal_cat_move(k2(), MAIN_GAME, table.initial) == 0


def test_level_one_move_forces_capture():
    table = solve_game(make_named("path", 4), MAIN_GAME)
    for sid, level in enumerate(table.levels):
        if level == 1:
            state = table.states[sid]
            v = table.best_move(state)
            parts = table.model.successors(state.elements, v, state.last_cat)
            assert all(obs.is_capture for obs, s in parts.items() if s)


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_cycles_are_lost_for_the_cat(n):
    result = solve(make_named("cycle", n), MAIN_GAME)
    assert result.outcome is SolveOutcome.MOUSE_WINS
    assert result.optimal_rounds is None


def test_t_star_binary_is_lost_for_the_cat():
    assert solve(make_named("t_star"), ORIGINAL_GAME).outcome is SolveOutcome.MOUSE_WINS


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_small_trees_binary_are_won(n):
    for tree in enumerate_labeled_trees(n):
        assert solve(tree, ORIGINAL_GAME).cat_wins


def test_every_tree_is_won_under_the_main_game():
    for n in range(1, 6):
        for tree in enumerate_labeled_trees(n):
            assert solve(tree, MAIN_GAME).cat_wins


def test_more_information_never_hurts_the_cat():
    chain = [FeedbackChannel.BINARY, FeedbackChannel.COARSE, FeedbackChannel.COARSE_CMP, FeedbackChannel.EXACT]
    for n in range(1, 5):
        for tree in enumerate_labeled_trees(n):
            wins = [solve(tree, RuleSet(c, MovementRule.MUST_MOVE)).cat_wins for c in chain]
            assert wins == sorted(wins), tree.edges()


def test_not_winning_state_has_no_best_move():
    table = solve_game(make_named("cycle", 4), MAIN_GAME)
    with pytest.raises(NotWinningError):
        table.best_move(table.initial)


def test_vertex_cap_depends_on_the_channel():
    with pytest.raises(SolverLimitError):
        solve(make_named("path", 9), MAIN_GAME)
    assert solve(make_named("path", 9), RuleSet(FeedbackChannel.EXACT, MovementRule.MUST_MOVE)).cat_wins


def test_state_cap_is_reported():
    with pytest.raises(SolverLimitError) as exc:
        GameTable(make_named("path", 6), MAIN_GAME, SolverLimits(max_states=3))
    assert "State cap 3" in exc.value.message


def test_unknown_state_is_reported():
    table = solve_game(k2(), MAIN_GAME)
    stray = InfoState.of(table.model, {(0, 1), (1, 1)}, None)
    with pytest.raises(SolverLimitError):
        table.level(stray)


def test_successor_follows_the_observation():
    table = solve_game(k2(), MAIN_GAME)
    parts = table.model.successors(None, 0, None)
    escape = next(obs for obs in parts if not obs.is_capture)
    nxt = table.successor(table.initial, 0, escape)
    assert nxt.positions() == {1}
    assert table.level(nxt) == 1
    capture = next(obs for obs in parts if obs.is_capture)
    assert table.successor(table.initial, 0, capture) is None


def test_format_line():
    result = solve(Graph.from_edges(1, []), MAIN_GAME)
    assert result.format_line("k1", MAIN_GAME) == (
        "instance=k1 channel=coarse-cmp movement=must-move outcome=cat rounds=1 states=1"
    )
    lost = solve(make_named("cycle", 3), MAIN_GAME)
    assert "outcome=mouse rounds=-" in lost.format_line("cycle:3", MAIN_GAME)


def test_variant_table_on_t_star_weakened_channels():
    limits = replace(SolverLimits(), max_vertices=10)
    rules = [RuleSet(c, MovementRule.MUST_MOVE) for c in (FeedbackChannel.COARSE, FeedbackChannel.CMP_ONLY)]
    rows = variant_table([("t_star", make_named("t_star"))], rules, limits)
    assert [row.result.outcome for row in rows] == [SolveOutcome.CAT_WINS, SolveOutcome.CAT_WINS]


def test_variant_table_keeps_going_past_a_failure():
    rows = variant_table([("path:9", make_named("path", 9))], [MAIN_GAME, RuleSet(FeedbackChannel.COARSE, MovementRule.MUST_MOVE)])
    assert rows[0].result is None
    assert "outcome=error" in rows[0].format_line()
    assert rows[1].result.cat_wins


def test_variant_table_paths_with_exact_feedback():
    rules = RuleSet(FeedbackChannel.EXACT, MovementRule.MUST_MOVE)
    rows = variant_table([(f"path:{n}", make_named("path", n)) for n in range(2, 8)], [rules])
    assert all(row.result.cat_wins for row in rows)


# ----------------------------
# information states
# ----------------------------

def test_pack_is_unique_per_element_set():
    model = SuccessorModel(make_named("path", 3), MAIN_GAME)
    sets = [{(0, 1)}, {(0, 2)}, {(1, 1)}, {(0, 1), (1, 1)}, {(2, float("inf"))}]
    keys = {pack(model, s) for s in sets}
    assert len(keys) == len(sets)


def test_info_state_drops_what_the_rules_ignore():
    coarse = SuccessorModel(k2(), RuleSet(FeedbackChannel.COARSE, MovementRule.MUST_MOVE))
    assert InfoState.of(coarse, {(1, 1)}, 0) == InfoState.of(coarse, {(1, 7)}, 1)

    avoid = SuccessorModel(make_named("t_star"), SEAGER_DEMO_GAME)
    assert InfoState.of(avoid, {(3, None)}, 0) != InfoState.of(avoid, {(3, None)}, 2)


def test_start_state_is_initial():
    assert InfoState.start().initial
    assert InfoState.start().positions() == frozenset()
