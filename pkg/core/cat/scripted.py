# core/cat/scripted.py
from __future__ import annotations

import copy
import random
from typing import Hashable, List, Optional

from core.cat.errors import InvariantViolation, StrategyExhausted, WrongGraphShape
from core.graph.graph import Graph
from core.graph.named import T_STAR_X, make_named, t_star_leg
from core.logger import BasicLogger
from core.mouse.consistency import ConsistencySet, update_consistency
from core.rules.players import CatStrategy
from core.rules.ruleset import FeedbackChannel, MovementRule, Observation, RuleSet

T_STAR_LEGS = (1, 2, 3)


def _require_t_star(graph: Graph) -> None:
    if graph.canonical_edges() != make_named("t_star").canonical_edges():
        raise WrongGraphShape("Graph is not T* in its canonical numbering.", details=graph.canonical_edges())


class TStarWeakenedCat(CatStrategy):
    """
    Wins on T* with only coarse classes or only comparisons. Sits on the
    centre until every consistent position is two or more steps away, probes
    the middle vertex of the next leg, and once the mouse is pinned to the
    outer or inner vertex of one leg sweeps that leg from the centre outward.
    """

    name = "tstar-script"

    def __init__(self, graph: Graph, rules: RuleSet):
        super().__init__()
        _require_t_star(graph)
        if rules.movement_rule is not MovementRule.MUST_MOVE or rules.feedback_channel not in (
            FeedbackChannel.COARSE,
            FeedbackChannel.CMP_ONLY,
        ):
            raise WrongGraphShape("T* script expects coarse or cmp-only feedback with must-move.", details=rules.label)

        self.graph = graph
        self.rules = rules
        self.known = ConsistencySet.initial(graph, rules)
        self.last_move: Optional[int] = None
        self.probed = 0
        self.script: List[int] = []
        self.swept = False
        self.logger = BasicLogger("TStarWeakenedCat").get_logger()

    def _pinned_leg(self) -> Optional[int]:
        positions = self.known.positions()
        for j in T_STAR_LEGS:
            w, _, u = t_star_leg(j)
            if positions <= {w, u}:
                return j
        return None

    def _far_from_centre(self) -> bool:
        return all(self.known.model.distance(T_STAR_X, m) >= 2 for m in self.known.positions())

    def next_move(self, observation: Optional[Observation]) -> int:
        if observation is not None:
            self.known = update_consistency(self.known, self.graph, self.rules, self.last_move, observation)
            if not self.known.elements:
                raise InvariantViolation("No mouse trajectory matches the signals.", details=self.known.round)

        move = self._decide()
        self.last_move = move
        return move

    def _decide(self) -> int:
        if self.script:
            return self.script.pop(0)
        if self.swept:
            raise StrategyExhausted("Leg sweep ended without a capture.", details=sorted(self.known.positions()))
        if self.known.elements is None:
            return T_STAR_X

        j = self._pinned_leg()
        if j is not None:
            w, v, u = t_star_leg(j)
            self.logger.debug("Mouse pinned to leg %s; sweeping", j)
            self.swept = True
            self.script = [w, v, u]
            return T_STAR_X

        if self._far_from_centre():
            positions = self.known.positions()
            for j in T_STAR_LEGS[self.probed:]:
                self.probed = j
                if positions & set(t_star_leg(j)):
                    return t_star_leg(j)[1]
            raise InvariantViolation("All legs probed without pinning the mouse.", details=sorted(positions))

        return T_STAR_X

    def clone(self) -> "TStarWeakenedCat":
        twin = copy.copy(self)
        twin.events = list(self.events)
        twin.script = list(self.script)
        return twin

    def state_key(self) -> Hashable:
        return (self.known.elements, self.last_move, self.probed, tuple(self.script), self.swept)


def tstar_weakened_cat(g: Graph, rules: RuleSet) -> TStarWeakenedCat:
    return TStarWeakenedCat(g, rules)


class SeagerDemoCat(CatStrategy):
    """Fixed seven-move script x, v1, x, v2, x, v3, x on T*."""

    name = "seager-demo"
    horizon = 7

    def __init__(self, graph: Graph):
        super().__init__()
        _require_t_star(graph)
        self.script = [T_STAR_X]
        for j in T_STAR_LEGS:
            self.script += [t_star_leg(j)[1], T_STAR_X]
        self.played = 0

    def next_move(self, observation: Optional[Observation]) -> int:
        if self.played >= len(self.script):
            raise StrategyExhausted("Script finished.", details=self.played)
        move = self.script[self.played]
        self.played += 1
        return move

    def state_key(self) -> Hashable:
        return self.played


def seager_demo_cat(g: Graph) -> SeagerDemoCat:
    return SeagerDemoCat(g)


class RandomCat(CatStrategy):
    name = "random"

    def __init__(self, graph: Graph, seed: int):
        super().__init__()
        self.vertex_count = graph.vertex_count
        self.seed = seed
        self.rng = random.Random(seed)

    def next_move(self, observation: Optional[Observation]) -> int:
        return self.rng.randrange(self.vertex_count)


def random_cat(g: Graph, seed: int) -> RandomCat:
    return RandomCat(g, seed)
