# core/registry.py
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, List, Optional

from core.cat.forest import forest_cat
from core.cat.scripted import random_cat, seager_demo_cat, tstar_weakened_cat
from core.cat.solver_cat import solver_cat
from core.cat.transition import transition_cat
from core.config.workbench_config import SolverLimits
from core.graph.graph import Graph, is_forest
from core.mouse.agents import AdversaryMode, cycle_mouse, path_mouse, phantom_adversary, random_mouse
from core.mouse.consistency import AdversaryError
from core.rules.players import CatStrategy, MouseAgent
from core.rules.ruleset import RuleSet
from core.solver.solver import solve_game


@dataclass(frozen=True)
class PlayerSpec:
    """A registry name plus the optional argument after the colon, as in 'random:7'."""

    name: str
    arg: Optional[str] = None

    @staticmethod
    def parse(text: str) -> "PlayerSpec":
        name, _, arg = text.strip().partition(":")
        return PlayerSpec(name=name, arg=arg or None)


@dataclass(frozen=True)
class PlayerContext:
    graph: Graph
    rules: RuleSet
    limits: SolverLimits
    arg: Optional[str] = None

    def seed(self) -> int:
        if self.arg is None:
            raise ValueError("A seed is required, e.g. 'random:7'.")
        try:
            return int(self.arg)
        except ValueError as e:
            raise ValueError(f"Seed must be an integer, got {self.arg!r}") from e


CatFactory = Callable[[PlayerContext], CatStrategy]
MouseFactory = Callable[[PlayerContext], MouseAgent]


def _transition(ctx: PlayerContext) -> CatStrategy:
    return transition_cat(ctx.graph, rules=ctx.rules)


def _forest(ctx: PlayerContext) -> CatStrategy:
    return forest_cat(ctx.graph, ctx.rules)


def _tstar_script(ctx: PlayerContext) -> CatStrategy:
    return tstar_weakened_cat(ctx.graph, ctx.rules)


def _seager_demo(ctx: PlayerContext) -> CatStrategy:
    return seager_demo_cat(ctx.graph)


def _solver_cat(ctx: PlayerContext) -> CatStrategy:
    return solver_cat(ctx.graph, ctx.rules, ctx.limits)


def _random_cat(ctx: PlayerContext) -> CatStrategy:
    return random_cat(ctx.graph, ctx.seed())


def _phantom(mode_name: str) -> MouseFactory:
    def build(ctx: PlayerContext) -> MouseAgent:
        mode = AdversaryMode(mode_name)
        table = None
        if mode is AdversaryMode.EXACT:
            table = solve_game(ctx.graph, ctx.rules, ctx.limits)
        return phantom_adversary(ctx.graph, ctx.rules, mode, table)

    return build


def _cycle_mouse(ctx: PlayerContext) -> MouseAgent:
    verdict = is_forest(ctx.graph)
    if verdict:
        raise AdversaryError("Graph has no cycle for the cycle mouse.")
    return cycle_mouse(ctx.graph, ctx.rules, verdict.cycle)


def _path_mouse(ctx: PlayerContext) -> MouseAgent:
    return path_mouse(ctx.graph, ctx.rules)


def _random_mouse(ctx: PlayerContext) -> MouseAgent:
    return random_mouse(ctx.seed())


class StrategyRegistry:
    """Maps command-line player names -> factories."""

    _cats: Dict[str, CatFactory] = {}
    _mice: Dict[str, MouseFactory] = {}
    _defaults_registered: bool = False

    @classmethod
    def register_defaults(cls) -> None:
        if cls._defaults_registered:
            return

        cls.register_cat("transition", _transition)
        cls.register_cat("forest", _forest)
        cls.register_cat("tstar-script", _tstar_script)
        cls.register_cat("seager-demo", _seager_demo)
        cls.register_cat("solver", _solver_cat)
        cls.register_cat("random", _random_cat)

        cls.register_mouse("phantom-greedy", _phantom("greedy"))
        cls.register_mouse("phantom-exact", _phantom("exact"))
        cls.register_mouse("cycle", _cycle_mouse)
        cls.register_mouse("path", _path_mouse)
        cls.register_mouse("random", _random_mouse)

        cls._defaults_registered = True

    @classmethod
    def register_cat(cls, name: str, factory: CatFactory) -> None:
        if not isinstance(name, str) or not name.strip():
            raise ValueError(f"Cannot register cat {factory!r}: invalid name")
        cls._cats[name] = factory

    @classmethod
    def register_mouse(cls, name: str, factory: MouseFactory) -> None:
        if not isinstance(name, str) or not name.strip():
            raise ValueError(f"Cannot register mouse {factory!r}: invalid name")
        cls._mice[name] = factory

    @classmethod
    def cat_names(cls) -> List[str]:
        cls.register_defaults()
        return sorted(cls._cats)

    @classmethod
    def mouse_names(cls) -> List[str]:
        cls.register_defaults()
        return sorted(cls._mice)

    @classmethod
    def create_cat(cls, spec: str, graph: Graph, rules: RuleSet, limits: Optional[SolverLimits] = None) -> CatStrategy:
        cls.register_defaults()
        parsed = PlayerSpec.parse(spec)
        factory = cls._cats.get(parsed.name)
        if factory is None:
            available = ", ".join(sorted(cls._cats.keys()))
            raise ValueError(f"Cat '{parsed.name}' is not registered. Available: {available}")
        return factory(PlayerContext(graph, rules, limits or SolverLimits(), parsed.arg))

    @classmethod
    def create_mouse(cls, spec: str, graph: Graph, rules: RuleSet, limits: Optional[SolverLimits] = None) -> MouseAgent:
        cls.register_defaults()
        parsed = PlayerSpec.parse(spec)
        factory = cls._mice.get(parsed.name)
        if factory is None:
            available = ", ".join(sorted(cls._mice.keys()))
            raise ValueError(f"Mouse '{parsed.name}' is not registered. Available: {available}")
        return factory(PlayerContext(graph, rules, limits or SolverLimits(), parsed.arg))
