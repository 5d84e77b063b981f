# core/mouse/agents.py
from __future__ import annotations

import random
from enum import Enum
from typing import FrozenSet, List, Optional, Sequence

from core.graph.graph import INFINITE, Graph, GraphStructureError, path_order
from core.logger import BasicLogger
from core.mouse.consistency import (
    AdversaryError,
    ConsistencySet,
    Element,
    SuccessorModel,
    extract_witness,
    update_consistency,
)
from core.rules.players import ConcreteMouse, PhantomMouse
from core.rules.ruleset import Observation, RuleSet
from core.solver.solver import GameTable, solve_game


class AdversaryMode(Enum):
    GREEDY = "greedy"
    EXACT = "exact"


# ----------------------------
# Phantom adversary
# ----------------------------

class PhantomAdversary(PhantomMouse):
    """
    Commits to signals only. Each round the successor pairs are split by
    observation and one class is kept; the capture class is taken only when
    nothing else is left.
    """

    name = "phantom"

    def __init__(
        self,
        graph: Graph,
        rules: RuleSet,
        mode: AdversaryMode = AdversaryMode.GREEDY,
        table: Optional[GameTable] = None,
    ):
        self.graph = graph
        self.rules = rules
        self.mode = mode
        self.model = SuccessorModel.for_game(graph, rules)
        self.state = ConsistencySet.initial(graph, rules)
        self.logger = BasicLogger("PhantomAdversary").get_logger()

        if mode is AdversaryMode.EXACT and table is None:
            table = solve_game(graph, rules)
        self.table = table

    def signal(self, round_no: int, cat: int) -> Optional[Observation]:
        parts = {
            obs: s
            for obs, s in self.model.successors(self.state.elements, cat, self.state.last_cat).items()
            if s
        }
        if not parts:
            return None

        escapes = {obs: s for obs, s in parts.items() if not obs.is_capture}
        if not escapes:
            chosen = min(parts, key=lambda o: o.sort_key)
        elif self.mode is AdversaryMode.GREEDY:
            chosen = min(escapes, key=lambda o: (-len(escapes[o]), o.sort_key))
        else:
            chosen = min(escapes, key=lambda o: (-self._survival(escapes[o], cat), -len(escapes[o]), o.sort_key))

        self.state = update_consistency(self.state, self.graph, self.rules, cat, chosen)
        self.logger.debug("round=%s cat=%s chose %s of %s classes size=%s", round_no, cat, chosen, len(parts), len(self.state))
        return chosen

    def _survival(self, elements: FrozenSet[Element], cat: int) -> float:
        level = self.table.level_of(elements, cat)
        return INFINITE if level is None else level

    def consistent_positions(self) -> FrozenSet[int]:
        return self.state.positions()

    def witness(self) -> List[int]:
        if not self.state.layers:
            return []
        return extract_witness(self.state)


def phantom_adversary(
    g: Graph,
    rules: RuleSet,
    mode: AdversaryMode = AdversaryMode.GREEDY,
    table: Optional[GameTable] = None,
) -> PhantomAdversary:
    return PhantomAdversary(g, rules, mode, table)


# ----------------------------
# Concrete mice
# ----------------------------

class CycleMouse(ConcreteMouse):
    """Stays on a fixed cycle, always stepping to a cycle neighbour the cat is not on."""

    name = "cycle"

    def __init__(self, graph: Graph, rules: RuleSet, cycle: Sequence[int]):
        cycle = list(cycle)
        if len(cycle) >= 2 and cycle[0] == cycle[-1]:
            cycle = cycle[:-1]
        if len(cycle) < 3 or len(set(cycle)) != len(cycle):
            raise AdversaryError("Cycle must list at least 3 distinct vertices.", details=cycle)
        for a, b in zip(cycle, cycle[1:] + cycle[:1]):
            if not (0 <= a < graph.vertex_count and 0 <= b < graph.vertex_count) or not graph.is_adjacent(a, b):
                raise AdversaryError("Cycle is not a cycle of the graph.", details=(a, b))

        self.cycle = cycle
        self.model = SuccessorModel.for_game(graph, rules)
        self._index = {v: i for i, v in enumerate(cycle)}
        self.position: Optional[int] = None

    def _cycle_neighbors(self, v: int) -> List[int]:
        i = self._index[v]
        k = len(self.cycle)
        return [self.cycle[(i + 1) % k], self.cycle[(i - 1) % k]]

    def choose(self, round_no: int, cat: int, cat_history: Sequence[int], legal: FrozenSet[int]) -> Optional[int]:
        if not legal:
            return None

        if self.position is None:
            options = [v for v in self.cycle if v in legal]
        else:
            options = [v for v in self._cycle_neighbors(self.position) if v in legal and v != cat]
            if not options:
                options = sorted(v for v in legal if v != cat) or sorted(legal)

        # max() keeps the first of equal candidates
        self.position = max(options, key=lambda v: self.model.distance(cat, v))
        return self.position


def cycle_mouse(g: Graph, rules: RuleSet, cycle: Sequence[int]) -> CycleMouse:
    return CycleMouse(g, rules, cycle)


class PathMouse(ConcreteMouse):
    """Starts near the middle of a path and keeps stepping away from the cat."""

    name = "path"

    def __init__(self, graph: Graph, rules: RuleSet):
        try:
            self.order = path_order(graph)
        except GraphStructureError as e:
            raise AdversaryError("path mouse needs a path graph.", details=str(e)) from e
        self.rules = rules
        self._index = {v: i for i, v in enumerate(self.order)}
        self.position: Optional[int] = None

    def _larger_half(self, i: int) -> Optional[int]:
        left, right = i, len(self.order) - 1 - i
        if left == 0 and right == 0:
            return None
        return i - 1 if left >= right else i + 1

    def _away_from(self, i: int, ci: int) -> Optional[int]:
        n = len(self.order)
        if ci < i:
            step = i + 1 if i + 1 < n else i - 1
        else:
            step = i - 1 if i - 1 >= 0 else i + 1
        return step if 0 <= step < n else None

    def choose(self, round_no: int, cat: int, cat_history: Sequence[int], legal: FrozenSet[int]) -> Optional[int]:
        if not legal:
            return None

        if self.position is None:
            i = len(self.order) // 2
            target: Optional[int] = i
            if self.order[i] == cat:
                target = self._larger_half(i)
        else:
            i = self._index[self.position]
            ci = self._index[cat]
            target = self._larger_half(i) if ci == i else self._away_from(i, ci)

        if target is not None and self.order[target] in legal:
            self.position = self.order[target]
        else:
            fallback = sorted(v for v in legal if v != cat) or sorted(legal)
            self.position = fallback[0]
        return self.position


def path_mouse(g: Graph, rules: RuleSet) -> PathMouse:
    return PathMouse(g, rules)


class RandomMouse(ConcreteMouse):
    name = "random"

    def __init__(self, seed: int):
        self.seed = seed
        self.rng = random.Random(seed)

    def choose(self, round_no: int, cat: int, cat_history: Sequence[int], legal: FrozenSet[int]) -> Optional[int]:
        if not legal:
            return None
        return self.rng.choice(sorted(legal))


def random_mouse(seed: int) -> RandomMouse:
    return RandomMouse(seed)
