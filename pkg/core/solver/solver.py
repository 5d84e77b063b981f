# core/solver/solver.py
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from core.config.workbench_config import SolverLimits
from core.graph.graph import Graph
from core.logger import BasicLogger
from core.mouse.consistency import Element, SuccessorModel
from core.rules.ruleset import Observation, RuleSet
from core.solver.info_state import InfoState


# ----------------------------
# Exceptions
# ----------------------------

@dataclass
class SolverLimitError(Exception):
    message: str
    details: Optional[Any] = None

    def __str__(self) -> str:
        if self.details is None:
            return self.message
        return f"{self.message} | details={self.details!r}"


@dataclass
class NotWinningError(Exception):
    message: str
    details: Optional[Any] = None

    def __str__(self) -> str:
        if self.details is None:
            return self.message
        return f"{self.message} | details={self.details!r}"


@dataclass
class MouseWinsError(Exception):
    message: str
    details: Optional[Any] = None

    def __str__(self) -> str:
        if self.details is None:
            return self.message
        return f"{self.message} | details={self.details!r}"


# ----------------------------
# Results
# ----------------------------

class SolveOutcome(Enum):
    CAT_WINS = "cat"
    MOUSE_WINS = "mouse"


@dataclass(frozen=True)
class SolveResult:
    outcome: SolveOutcome
    optimal_rounds: Optional[int]
    states_explored: int

    @property
    def cat_wins(self) -> bool:
        return self.outcome is SolveOutcome.CAT_WINS

    def format_line(self, instance: str, rules: RuleSet) -> str:
        rounds = "-" if self.optimal_rounds is None else str(self.optimal_rounds)
        return (
            f"instance={instance} channel={rules.feedback_channel.value} "
            f"movement={rules.movement_rule.value} outcome={self.outcome.value} "
            f"rounds={rounds} states={self.states_explored}"
        )


# ----------------------------
# Game table
# ----------------------------

class GameTable:
    """
    Reachable information states with, per cat action, the ids of the states
    the adversary can move to. levels[i] is the number of rounds the cat needs
    from state i under optimal play, None where the mouse survives forever.
    """

    def __init__(self, graph: Graph, rules: RuleSet, limits: SolverLimits):
        self.graph = graph
        self.rules = rules
        self.limits = limits
        self.model = SuccessorModel.for_game(graph, rules)
        self.logger = BasicLogger("Solver").get_logger()

        self.states: List[InfoState] = []
        self.index: Dict[Any, int] = {}
        self.moves: List[List[Tuple[int, Tuple[int, ...]]]] = []
        self.levels: List[Optional[int]] = []

        cap = limits.max_vertices if self.model.tracks_distance else limits.max_vertices_positional
        if graph.vertex_count > cap:
            raise SolverLimitError(
                f"Graph has {graph.vertex_count} vertices; the cap for {rules.label} is {cap}.",
                details={"n": graph.vertex_count, "cap": cap},
            )

        self._explore()
        self._assign_levels()

        self.logger.info(
            "Solved %s on n=%s: %s states, initial level %s",
            rules.label, graph.vertex_count, len(self.states), self.levels[0],
        )

    # ---- construction ----

    def _add(self, state: InfoState) -> int:
        if len(self.states) >= self.limits.max_states:
            raise SolverLimitError(
                f"State cap {self.limits.max_states} exceeded.",
                details={"rules": self.rules.label, "n": self.graph.vertex_count},
            )
        sid = len(self.states)
        self.states.append(state)
        self.index[state.key] = sid
        return sid

    def _explore(self) -> None:
        self._add(InfoState.start())
        queue = deque([0])

        while queue:
            sid = queue.popleft()
            state = self.states[sid]
            row: List[Tuple[int, Tuple[int, ...]]] = []

            for v in self.graph.vertices:
                successors = set()
                for obs, elements in self.model.successors(state.elements, v, state.last_cat).items():
                    if not elements or obs.is_capture:
                        continue
                    nxt = InfoState.of(self.model, elements, v)
                    tid = self.index.get(nxt.key)
                    if tid is None:
                        tid = self._add(nxt)
                        queue.append(tid)
                    successors.add(tid)
                row.append((v, tuple(sorted(successors))))

            # ids are handed out in queue order, so rows line up with states
            self.moves.append(row)

    def _assign_levels(self) -> None:
        count = len(self.states)
        levels: List[Optional[int]] = [None] * count
        remaining: List[List[int]] = []
        preds: List[List[Tuple[int, int]]] = [[] for _ in range(count)]
        frontier: deque = deque()

        for sid, row in enumerate(self.moves):
            counters = []
            for ai, (_, succ) in enumerate(row):
                counters.append(len(succ))
                if not succ:
                    if levels[sid] is None:
                        levels[sid] = 1
                        frontier.append(sid)
                else:
                    for tid in succ:
                        preds[tid].append((sid, ai))
            remaining.append(counters)

        # FIFO keeps levels nondecreasing, so the last successor to resolve is the worst one
        while frontier:
            tid = frontier.popleft()
            level = levels[tid]
            for sid, ai in preds[tid]:
                remaining[sid][ai] -= 1
                if remaining[sid][ai] == 0 and levels[sid] is None:
                    levels[sid] = level + 1
                    frontier.append(sid)

        self.levels = levels

    # ---- queries ----

    @property
    def initial(self) -> InfoState:
        return self.states[0]

    def result(self) -> SolveResult:
        level = self.levels[0]
        outcome = SolveOutcome.CAT_WINS if level is not None else SolveOutcome.MOUSE_WINS
        return SolveResult(outcome=outcome, optimal_rounds=level, states_explored=len(self.states))

    def state_id(self, state: InfoState) -> int:
        sid = self.index.get(state.key)
        if sid is None:
            raise SolverLimitError("Information state was never reached by the solver.", details=sorted(state.positions()))
        return sid

    def level(self, state: InfoState) -> Optional[int]:
        return self.levels[self.state_id(state)]

    def level_of(self, elements: Iterable[Element], last_cat: Optional[int]) -> Optional[int]:
        return self.level(InfoState.of(self.model, elements, last_cat))

    def best_move(self, state: InfoState) -> int:
        sid = self.state_id(state)
        level = self.levels[sid]
        if level is None:
            raise NotWinningError("Cat has no winning move from this state.", details=sorted(state.positions()))

        for v, succ in self.moves[sid]:
            worst = max((self._rank(t) for t in succ), default=0)
            if worst < level:
                return v

        raise NotWinningError("No move lowers the level.", details={"level": level})

    def _rank(self, sid: int) -> float:
        level = self.levels[sid]
        return math.inf if level is None else level

    def successor(self, state: InfoState, v: int, obs: Observation) -> Optional[InfoState]:
        """State after the cat played v and saw obs; None when obs is a capture or infeasible."""
        if obs.is_capture:
            return None
        elements = self.model.successors(state.elements, v, state.last_cat).get(obs)
        if not elements:
            return None
        return InfoState.of(self.model, elements, v)


# ----------------------------
# Entry points
# ----------------------------

@lru_cache(maxsize=16)
def solve_game(graph: Graph, rules: RuleSet, limits: SolverLimits = SolverLimits()) -> GameTable:
    return GameTable(graph, rules, limits)


def solve(g: Graph, rules: RuleSet, limits: Optional[SolverLimits] = None) -> SolveResult:
    return solve_game(g, rules, limits or SolverLimits()).result()


def optimal_cat_move(g: Graph, rules: RuleSet, s: InfoState, limits: Optional[SolverLimits] = None) -> int:
    return solve_game(g, rules, limits or SolverLimits()).best_move(s)


@dataclass(frozen=True)
class VariantRow:
    instance: str
    rules: RuleSet
    result: Optional[SolveResult] = None
    error: Optional[str] = None

    def format_line(self) -> str:
        if self.result is not None:
            return self.result.format_line(self.instance, self.rules)
        return (
            f"instance={self.instance} channel={self.rules.feedback_channel.value} "
            f"movement={self.rules.movement_rule.value} outcome=error reason={self.error}"
        )


def variant_table(
    instances: Sequence[Tuple[str, Graph]],
    rule_sets: Sequence[RuleSet],
    limits: Optional[SolverLimits] = None,
) -> List[VariantRow]:
    """Solve every (instance, rules) pair; a failing instance becomes an error row."""
    logger = BasicLogger("VariantTable").get_logger()
    rows: List[VariantRow] = []

    for name, graph in instances:
        for rules in rule_sets:
            try:
                rows.append(VariantRow(name, rules, result=solve(graph, rules, limits)))
            except SolverLimitError as e:
                logger.warning("Instance %s under %s skipped: %s", name, rules.label, e)
                rows.append(VariantRow(name, rules, error=e.message))

    return rows
