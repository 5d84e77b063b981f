# core/mouse/consistency.py
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

from core.graph.graph import Distance, Graph, all_pairs_distances
from core.rules.ruleset import Observation, RuleSet, feedback, legal_mouse_moves

# (mouse position, exact distance to the cat in the round it was recorded).
# The distance is what the next round's comparison is made against.
Element = Tuple[int, Optional[Distance]]


@dataclass
class AdversaryError(Exception):
    message: str
    details: Optional[Any] = None

    def __str__(self) -> str:
        if self.details is None:
            return self.message
        return f"{self.message} | details={self.details!r}"


class SuccessorModel:
    """
    Per-(graph, rules) tables: exact distances, legal moves and signals.

    successors() is the one place where candidate mouse positions are
    advanced by a round and split by the signal the cat would receive.
    """

    def __init__(self, graph: Graph, rules: RuleSet):
        self.graph = graph
        self.rules = rules
        self.dist = all_pairs_distances(graph)
        self.tracks_distance = rules.feedback_channel.has_comparison
        self.tracks_last_cat = rules.movement_rule.avoids_cat
        self._moves: Dict[Tuple[int, Optional[int]], Tuple[int, ...]] = {}
        self._signals: Dict[Tuple[Distance, Optional[Distance]], Observation] = {}

    @staticmethod
    @lru_cache(maxsize=512)
    def for_game(graph: Graph, rules: RuleSet) -> "SuccessorModel":
        return SuccessorModel(graph, rules)

    def distance(self, a: int, b: int) -> Distance:
        return self.dist[a][b]

    def moves(self, m: int, c_prev: Optional[int]) -> Tuple[int, ...]:
        key = (m, c_prev if self.tracks_last_cat else None)
        cached = self._moves.get(key)
        if cached is None:
            cached = tuple(sorted(legal_mouse_moves(self.rules, self.graph, m, key[1])))
            self._moves[key] = cached
        return cached

    def signal(self, d: Distance, d_prev: Optional[Distance]) -> Observation:
        key = (d, d_prev)
        obs = self._signals.get(key)
        if obs is None:
            obs = feedback(self.rules, d, d_prev)
            self._signals[key] = obs
        return obs

    def successors(
        self,
        elements: Optional[Iterable[Element]],
        cat: int,
        last_cat: Optional[int],
    ) -> Dict[Observation, FrozenSet[Element]]:
        """
        Split the next-round elements by signal. elements=None means round 1,
        where the mouse may be placed anywhere.
        """
        buckets: Dict[Observation, Set[Element]] = defaultdict(set)
        row = self.dist[cat]

        if elements is None:
            for m in self.graph.vertices:
                d = row[m]
                buckets[self.signal(d, None)].add((m, d))
        else:
            for m, d_prev in elements:
                for m2 in self.moves(m, last_cat):
                    d = row[m2]
                    buckets[self.signal(d, d_prev)].add((m2, d))

        return {obs: frozenset(s) for obs, s in buckets.items()}

    def normalize(self, elements: Iterable[Element]) -> FrozenSet[Element]:
        """Drop distances when the channel never compares against them."""
        if self.tracks_distance:
            return frozenset(elements)
        return frozenset((m, None) for m, _ in elements)


@dataclass(frozen=True)
class ConsistencySet:
    """Every (position, distance) pair some legal trajectory reaches under the signals so far."""

    model: SuccessorModel = field(compare=False, repr=False)
    # None before round 1
    elements: Optional[FrozenSet[Element]] = None
    history: Tuple[Tuple[int, Observation], ...] = ()
    # layers[k] holds the elements after round k + 1
    layers: Tuple[FrozenSet[Element], ...] = ()

    @staticmethod
    def initial(graph: Graph, rules: RuleSet) -> "ConsistencySet":
        return ConsistencySet(model=SuccessorModel.for_game(graph, rules))

    @property
    def round(self) -> int:
        return len(self.history)

    @property
    def last_cat(self) -> Optional[int]:
        return self.history[-1][0] if self.history else None

    def positions(self) -> FrozenSet[int]:
        return frozenset(m for m, _ in (self.elements or ()))

    def __len__(self) -> int:
        return len(self.elements or ())


def update_consistency(s: ConsistencySet, g: Graph, rules: RuleSet, c: int, obs: Observation) -> ConsistencySet:
    """Advance by one round in which the cat played c and received obs. Empty means infeasible."""
    model = s.model
    if model.graph != g or model.rules != rules:
        model = SuccessorModel.for_game(g, rules)

    parts = model.successors(s.elements, c, s.last_cat)
    new_elements = parts.get(obs, frozenset())

    return ConsistencySet(
        model=model,
        elements=new_elements,
        history=s.history + ((c, obs),),
        layers=s.layers + (new_elements,),
    )


def extract_witness(s: ConsistencySet) -> List[int]:
    """A legal trajectory m_1..m_t that reproduces every recorded signal."""
    if not s.layers:
        raise AdversaryError("No rounds played; nothing to witness.")
    if not s.layers[-1]:
        raise AdversaryError("Consistency set is empty; the signals were infeasible.", details=s.round)

    model = s.model
    current = min(s.layers[-1], key=_element_order)
    trajectory = [current[0]]

    for k in range(len(s.layers) - 1, 0, -1):
        cat_now, obs_now = s.history[k]
        cat_before = s.history[k - 1][0]
        m, d = current
        predecessor = None
        for p in sorted(s.layers[k - 1], key=_element_order):
            if m in model.moves(p[0], cat_before) and model.signal(d, p[1]) == obs_now:
                predecessor = p
                break
        if predecessor is None:
            raise AdversaryError("Witness reconstruction failed.", details=(k + 1, current))
        current = predecessor
        trajectory.append(current[0])

    trajectory.reverse()
    return trajectory


def _element_order(e: Element) -> tuple:
    m, d = e
    return (m, -1 if d is None else d)
