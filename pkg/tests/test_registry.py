# tests/test_registry.py
from __future__ import annotations

import pytest

from core.cat.errors import StrategyError
from core.cat.forest import ForestCat
from core.cat.scripted import RandomCat, SeagerDemoCat, TStarWeakenedCat
from core.cat.transition import TransitionCat
from core.graph.named import make_named
from core.mouse.agents import AdversaryMode, CycleMouse, PathMouse, PhantomAdversary, RandomMouse
from core.mouse.consistency import AdversaryError
from core.registry import PlayerSpec, StrategyRegistry
from core.rules.ruleset import MAIN_GAME, ORIGINAL_GAME, SEAGER_DEMO_GAME, FeedbackChannel, MovementRule, RuleSet
from tests.conftest import k2


def test_player_spec_parse():
    assert PlayerSpec.parse("random:7") == PlayerSpec("random", "7")
    assert PlayerSpec.parse(" transition ") == PlayerSpec("transition", None)


def test_default_names():
    assert StrategyRegistry.cat_names() == ["forest", "random", "seager-demo", "solver", "transition", "tstar-script"]
    assert StrategyRegistry.mouse_names() == ["cycle", "path", "phantom-exact", "phantom-greedy", "random"]


def test_create_cats():
    assert isinstance(StrategyRegistry.create_cat("transition", k2(), MAIN_GAME), TransitionCat)
    assert isinstance(StrategyRegistry.create_cat("forest", k2(), MAIN_GAME), ForestCat)
    t_star = make_named("t_star")
    assert isinstance(StrategyRegistry.create_cat("seager-demo", t_star, SEAGER_DEMO_GAME), SeagerDemoCat)
    coarse = RuleSet(FeedbackChannel.COARSE, MovementRule.MUST_MOVE)
    assert isinstance(StrategyRegistry.create_cat("tstar-script", t_star, coarse), TStarWeakenedCat)
    cat = StrategyRegistry.create_cat("random:3", k2(), MAIN_GAME)
    assert isinstance(cat, RandomCat)
    assert cat.seed == 3


def test_create_mice():
    exact = StrategyRegistry.create_mouse("phantom-exact", k2(), MAIN_GAME)
    assert isinstance(exact, PhantomAdversary)
    assert exact.mode is AdversaryMode.EXACT
    assert exact.table is not None
    assert isinstance(StrategyRegistry.create_mouse("cycle", make_named("cycle", 4), MAIN_GAME), CycleMouse)
    assert isinstance(StrategyRegistry.create_mouse("path", make_named("path", 5), MAIN_GAME), PathMouse)
    assert StrategyRegistry.create_mouse("random:11", k2(), MAIN_GAME).seed == 11
    assert isinstance(StrategyRegistry.create_mouse("random:11", k2(), MAIN_GAME), RandomMouse)


def test_unknown_names_and_missing_seeds():
    with pytest.raises(ValueError) as exc:
        StrategyRegistry.create_cat("tiger", k2(), MAIN_GAME)
    assert "Available" in str(exc.value)
    with pytest.raises(ValueError):
        StrategyRegistry.create_mouse("random", k2(), MAIN_GAME)
    with pytest.raises(ValueError):
        StrategyRegistry.create_cat("random:abc", k2(), MAIN_GAME)


def test_transition_cat_refuses_other_rule_sets():
    with pytest.raises(StrategyError):
        StrategyRegistry.create_cat("transition", make_named("path", 3), ORIGINAL_GAME)


def test_cycle_mouse_needs_a_cycle():
    with pytest.raises(AdversaryError):
        StrategyRegistry.create_mouse("cycle", make_named("path", 4), MAIN_GAME)


def test_register_rejects_blank_names():
    with pytest.raises(ValueError):
        StrategyRegistry.register_cat("  ", lambda ctx: None)
