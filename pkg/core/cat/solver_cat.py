# core/cat/solver_cat.py
from __future__ import annotations

import copy
from typing import Hashable, Optional

from core.cat.errors import InvariantViolation
from core.config.workbench_config import SolverLimits
from core.graph.graph import Graph
from core.logger import BasicLogger
from core.rules.players import CatStrategy
from core.rules.ruleset import Observation, RuleSet
from core.solver.solver import MouseWinsError, solve_game


class SolverCat(CatStrategy):
    """Plays the solver's optimal move from the information state it tracks."""

    name = "solver"

    def __init__(self, graph: Graph, rules: RuleSet, limits: Optional[SolverLimits] = None):
        super().__init__()
        self.table = solve_game(graph, rules, limits or SolverLimits())
        result = self.table.result()
        if not result.cat_wins:
            raise MouseWinsError(
                f"The mouse wins on this graph under {rules.label}.",
                details={"states": result.states_explored},
            )

        self.optimal_rounds = result.optimal_rounds
        self.info = self.table.initial
        self.last_move: Optional[int] = None
        self.logger = BasicLogger("SolverCat").get_logger()

    def next_move(self, observation: Optional[Observation]) -> int:
        if observation is not None:
            nxt = self.table.successor(self.info, self.last_move, observation)
            if nxt is None:
                raise InvariantViolation("Observation leaves no live information state.", details=str(observation))
            self.info = nxt

        self.last_move = self.table.best_move(self.info)
        self.logger.debug("level=%s move=%s", self.table.level(self.info), self.last_move)
        return self.last_move

    def clone(self) -> "SolverCat":
        twin = copy.copy(self)
        twin.events = list(self.events)
        return twin

    def state_key(self) -> Hashable:
        return self.info.key


def solver_cat(g: Graph, rules: RuleSet, limits: Optional[SolverLimits] = None) -> SolverCat:
    return SolverCat(g, rules, limits)
