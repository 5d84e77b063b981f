# tests/test_transition_cat.py
from __future__ import annotations

import pytest

from core.cat.errors import InvariantViolation, StrategyError, WrongGraphShape
from core.cat.transition import (
    Phase,
    TransitionCat,
    TransitionEvent,
    TransitionState,
    accounting_violation,
    event_violation,
    round_bound,
    structure_violation,
    transition_cat,
    transition_cat_next,
)
from core.graph.enumeration import enumerate_labeled_trees
from core.graph.graph import Graph
from core.graph.named import make_named, t_star_leg
from core.graph.rooted_tree import root_tree
from core.mouse.agents import PhantomAdversary
from core.rules.engine import Outcome, play_game
from core.rules.ruleset import MAIN_GAME, ORIGINAL_GAME, Comparison, DistClass, Observation
from core.solver.audit import explore_cat_strategy

ONE = Observation(DistClass.ONE)
TWO_PLUS = Observation(DistClass.TWO_PLUS)


def test_round_bound_values():
    assert round_bound(1) == 1
    assert round_bound(2) == 21
    assert round_bound(3) == 65


def test_first_move_is_the_root():
    assert TransitionCat(make_named("star", 3)).next_move(None) == 0


def test_root_is_smallest_vertex_of_the_component():
    g = Graph.from_edges(5, [(0, 1), (4, 2), (2, 3)])
    assert TransitionCat(g, component_vertex=3).next_move(None) == 2


def test_star_distance_one_repeats_the_centre():
    cat = transition_cat(make_named("star", 3))
    cat.next_move(None)
    assert cat.next_move(ONE) == 0
    assert cat.state.phase is Phase.REPEAT_AFTER_ONE


def test_star_is_captured_by_round_two():
    g = make_named("star", 3)
    audit = explore_cat_strategy(g, MAIN_GAME, TransitionCat(g), round_bound(4))
    assert audit.ok
    assert audit.worst_rounds == 2


def test_distance_one_twice_is_an_invariant_violation():
    cat = TransitionCat(make_named("star", 3))
    cat.next_move(None)
    cat.next_move(ONE)
    with pytest.raises(InvariantViolation):
        cat.next_move(Observation(DistClass.ONE, cmp=Comparison.NOT_GREATER))


def test_t_star_probe_goes_to_the_first_child_of_w1():
    cat = TransitionCat(make_named("t_star"))
    assert cat.next_move(None) == 0
    w1, v1, _ = t_star_leg(1)
    assert cat.next_move(TWO_PLUS) == v1
    assert cat.state.phase is Phase.PROBE_X1
    assert cat.state.pending.w1 == w1
    assert cat.state.pending.branches == (1, 4, 7)


def test_p3_single_branch_is_a_type_2_transition():
    cat = TransitionCat(make_named("path", 3))
    cat.next_move(None)
    assert cat.next_move(TWO_PLUS) == 1
    assert cat.state.r == 1
    assert cat.state.t2 == 1
    assert [e.type for e in cat.events] == [2]
    assert cat.events[0].format_line() == "transition type=2 start=1 j=1 X=2 Y=0"


def test_non_coarse_observation_is_rejected():
    state = TransitionState.initial(root_tree(make_named("path", 3), 0, 0))
    step = transition_cat_next(state, None)
    with pytest.raises(InvariantViolation):
        transition_cat_next(step.state, Observation(DistClass.NONZERO))


def test_capture_observation_ends_the_procedure():
    state = transition_cat_next(TransitionState.initial(root_tree(make_named("path", 2), 0, 0)), None).state
    step = transition_cat_next(state, Observation(DistClass.ZERO))
    assert step.vertex is None


def test_cycle_is_the_wrong_shape():
    with pytest.raises(WrongGraphShape):
        TransitionCat(make_named("cycle", 4))


def test_other_rule_sets_are_refused_up_front():
    with pytest.raises(StrategyError) as exc:
        transition_cat(make_named("path", 3), rules=ORIGINAL_GAME)
    assert exc.value.details == ORIGINAL_GAME.label
    assert transition_cat(make_named("path", 3), rules=MAIN_GAME).next_move(None) == 0


def test_clone_is_independent():
    cat = TransitionCat(make_named("t_star"))
    cat.next_move(None)
    twin = cat.clone()
    twin.next_move(TWO_PLUS)
    assert cat.state.rounds_used == 1
    assert twin.state.rounds_used == 2
    assert cat.events == []


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_every_tree_is_cleared_within_the_bound(n):
    for tree in enumerate_labeled_trees(n):
        audit = explore_cat_strategy(tree, MAIN_GAME, TransitionCat(tree), round_bound(n))
        assert audit.ok, (tree.edges(), audit.violations[:1], audit.survivors[:1])
        assert audit.worst_rounds <= round_bound(n)
        excess, t2, t3, t4 = audit.worst_tally
        assert accounting_violation(excess + t2 + t3 + t4, t2, t3, t4, n, audit.worst_rounds) is None


def test_greedy_games_keep_structure_and_event_rules():
    for tree in enumerate_labeled_trees(5):
        cat = TransitionCat(tree)
        states = []
        original = cat.next_move

        def tracked(obs, _next=original):
            move = _next(obs)
            states.append(cat.state)
            return move

        cat.next_move = tracked
        result = play_game(tree, MAIN_GAME, cat, PhantomAdversary(tree, MAIN_GAME), round_bound(5))
        assert result.outcome is Outcome.CAT_WINS
        for s in states:
            assert structure_violation(s) is None
        for event in cat.events:
            assert event_violation(event) is None


def test_reference_log_is_sound_against_the_phantom():
    g = make_named("spider", 2)
    cat = TransitionCat(g)
    mouse = PhantomAdversary(g, MAIN_GAME)
    play_game(g, MAIN_GAME, cat, mouse, round_bound(g.vertex_count))
    assert cat.reference_log
    for round_no, ruled_out in cat.reference_log:
        positions = {m for m, _ in mouse.state.layers[round_no - 1]}
        assert not positions & ruled_out


def test_accounting_violation_messages():
    assert accounting_violation(0, 0, 0, 0, 1, 1) is None
    assert "t1=3" in accounting_violation(3, 1, 0, 0, 4, 5)
    assert "t2=4" in accounting_violation(0, 4, 0, 0, 4, 5)
    assert "t3=7" in accounting_violation(0, 0, 7, 0, 4, 5)
    assert "rounds=22" in accounting_violation(0, 0, 0, 0, 2, 22)


def test_event_violation_rules():
    assert event_violation(TransitionEvent(2, 1, 1, 0, 2, 0, 0)) is None
    assert event_violation(TransitionEvent(1, 1, 1, 0, 1, 0, 0)) is not None
    assert event_violation(TransitionEvent(3, 1, 1, 0, 4, 0, 0)) is not None
    assert event_violation(TransitionEvent(4, 1, 2, 3, 3, 1, 3)) is None
    assert "shrank" in event_violation(TransitionEvent(4, 1, 2, 3, 2, 1, 3))
