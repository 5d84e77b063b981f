# core/cat/forest.py
from __future__ import annotations

import copy
from typing import FrozenSet, Hashable, List, Optional

from core.cat.errors import ComponentExhausted, StrategyError, StrategyExhausted, WrongGraphShape
from core.cat.transition import TransitionCat, round_bound
from core.graph.graph import Graph, connected_components, is_forest
from core.logger import BasicLogger
from core.rules.players import CatStrategy
from core.rules.ruleset import MAIN_GAME, Observation, RuleSet


class ForestCat(CatStrategy):
    """
    Runs the transition strategy on one component after another, smallest
    vertex first, giving each component its round budget.
    """

    name = "forest"

    def __init__(self, graph: Graph, rules: RuleSet = MAIN_GAME):
        super().__init__()
        verdict = is_forest(graph)
        if not verdict:
            raise WrongGraphShape("Forest strategy called on a graph with a cycle.", details=verdict.cycle)
        if rules != MAIN_GAME:
            raise StrategyError("Forest strategy needs coarse-cmp feedback with must-move.", details=rules.label)

        self.graph = graph
        self.components: List[List[int]] = connected_components(graph)
        self.index = 0
        self.current: Optional[TransitionCat] = None
        self.used = 0
        self.logger = BasicLogger("ForestCat").get_logger()

    @property
    def budget(self) -> int:
        return round_bound(len(self.components[self.index]))

    def _advance(self, reason: str) -> None:
        self.logger.debug("Leaving component %s after %s rounds: %s", self.components[self.index], self.used, reason)
        self.index += 1
        self.current = None
        self.used = 0

    def next_move(self, observation: Optional[Observation]) -> int:
        obs = observation
        while self.index < len(self.components):
            if self.current is None:
                self.current = TransitionCat(self.graph, self.components[self.index][0])
                obs = None

            if self.used >= self.budget:
                self._advance("round budget spent")
                continue

            before = len(self.current.events)
            try:
                vertex = self.current.next_move(obs)
            except ComponentExhausted as e:
                self._advance(e.message)
                continue

            self.used += 1
            self.events.extend(self.current.events[before:])
            return vertex

        raise StrategyExhausted("Every component was searched without a capture.", details=len(self.components))

    def clone(self) -> "ForestCat":
        twin = copy.copy(self)
        twin.events = list(self.events)
        twin.current = self.current.clone() if self.current is not None else None
        return twin

    def state_key(self) -> Hashable:
        inner = self.current.state_key() if self.current is not None else None
        return (self.index, self.used, inner)

    def soundness_violation(self, positions: FrozenSet[int]) -> Optional[str]:
        if self.current is None:
            return None
        return self.current.soundness_violation(positions & self.current.tree.vertices)


def forest_cat(g: Graph, rules: RuleSet = MAIN_GAME) -> ForestCat:
    return ForestCat(g, rules)
