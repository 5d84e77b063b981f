# core/solver/audit.py
from __future__ import annotations

import sys
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Set, Tuple

from core.cat.errors import StrategyError
from core.graph.graph import Graph
from core.logger import BasicLogger
from core.mouse.consistency import ConsistencySet, SuccessorModel, update_consistency
from core.rules.players import CatStrategy
from core.rules.ruleset import Observation, RuleSet

History = Tuple[Tuple[int, Observation], ...]
# (final consistency set, True if the game ended in a capture rather than a stuck mouse)
LeafCallback = Callable[[ConsistencySet, bool], None]


@dataclass
class StrategyAudit:
    all_captured: bool = True
    worst_rounds: int = 0
    # counters of the cat maximised over every game, when the cat keeps any
    worst_tally: Optional[Tuple[int, ...]] = None
    survivors: List[History] = field(default_factory=list)
    violations: List[Tuple[History, str]] = field(default_factory=list)
    nodes: int = 0
    leaves: int = 0

    @property
    def ok(self) -> bool:
        return self.all_captured and not self.violations


@dataclass(frozen=True)
class _Summary:
    # rounds from this node to the latest capture below it, this node's round included
    rounds: int
    tally: Optional[Tuple[int, ...]]
    failed: bool


_FAILED = _Summary(rounds=0, tally=None, failed=True)


def _delta(before: Optional[Tuple[int, ...]], after: Optional[Tuple[int, ...]]) -> Optional[Tuple[int, ...]]:
    if before is None or after is None:
        return None
    return tuple(a - b for a, b in zip(after, before))


def _add(a: Optional[Tuple[int, ...]], b: Optional[Tuple[int, ...]]) -> Optional[Tuple[int, ...]]:
    if a is None:
        return b
    if b is None:
        return a
    return tuple(x + y for x, y in zip(a, b))


def _merge(a: Optional[_Summary], b: _Summary) -> _Summary:
    if a is None:
        return b
    if a.tally is None or b.tally is None:
        tally = a.tally if b.tally is None else b.tally
    else:
        tally = tuple(max(x, y) for x, y in zip(a.tally, b.tally))
    return _Summary(rounds=max(a.rounds, b.rounds), tally=tally, failed=a.failed or b.failed)


class StrategyExplorer:
    """
    Plays a deterministic cat against every mouse at once: each round every
    feasible non-capture signal is followed with its own copy of the cat.
    Nodes are memoised on (cat state, pending signal, consistency set).
    """

    def __init__(
        self,
        graph: Graph,
        rules: RuleSet,
        max_rounds: int,
        check_soundness: bool = True,
        on_leaf: Optional[LeafCallback] = None,
    ):
        self.graph = graph
        self.rules = rules
        self.max_rounds = max_rounds
        self.check_soundness = check_soundness
        self.on_leaf = on_leaf
        self.model = SuccessorModel.for_game(graph, rules)
        self.memo: Dict[Any, _Summary] = {}
        self.in_progress: Set[Any] = set()
        self.audit = StrategyAudit()
        self.logger = BasicLogger("StrategyExplorer").get_logger()

    def run(self, cat: CatStrategy) -> StrategyAudit:
        limit = 4 * self.max_rounds + 200
        if sys.getrecursionlimit() < limit:
            sys.setrecursionlimit(limit)

        summary = self._visit(cat, None, ConsistencySet.initial(self.graph, self.rules))
        self.audit.worst_rounds = summary.rounds
        self.audit.worst_tally = summary.tally
        self.audit.all_captured = not summary.failed and summary.rounds <= self.max_rounds

        self.logger.debug(
            "Explored %s nodes, %s leaves, worst %s rounds",
            self.audit.nodes, self.audit.leaves, summary.rounds,
        )
        return self.audit

    def _fail(self, shadow: ConsistencySet, reason: Optional[str]) -> _Summary:
        if reason is None:
            self.audit.survivors.append(shadow.history)
        else:
            self.audit.violations.append((shadow.history, reason))
            self.logger.warning("round %s: %s", shadow.round + 1, reason)
        return _FAILED

    def _visit(self, cat: CatStrategy, obs: Optional[Observation], shadow: ConsistencySet) -> _Summary:
        horizon = self.max_rounds if cat.horizon is None else min(self.max_rounds, cat.horizon)
        if shadow.round >= horizon:
            return self._fail(shadow, None)

        key = None
        state = cat.state_key()
        if state is not None:
            key = (state, obs, shadow.elements, shadow.last_cat)
            cached = self.memo.get(key)
            if cached is not None:
                return cached
            if key in self.in_progress:
                # the same position repeats: the mouse can loop forever
                return self._fail(shadow, None)
            self.in_progress.add(key)

        try:
            summary = self._expand(cat, obs, shadow)
        finally:
            if key is not None:
                self.in_progress.discard(key)

        if key is not None:
            self.memo[key] = summary
        return summary

    def _expand(self, cat: CatStrategy, obs: Optional[Observation], shadow: ConsistencySet) -> _Summary:
        self.audit.nodes += 1
        before = cat.tally()

        try:
            c = cat.next_move(obs)
        except StrategyError as e:
            return self._fail(shadow, f"{type(e).__name__}: {e}")

        if not isinstance(c, int) or not 0 <= c < self.graph.vertex_count:
            return self._fail(shadow, f"invalid cat move {c!r}")

        if obs is not None and self.check_soundness:
            reason = cat.soundness_violation(shadow.positions())
            if reason is not None:
                return self._fail(shadow, reason)

        parts = {o: s for o, s in self.model.successors(shadow.elements, c, shadow.last_cat).items() if s}
        escapes = sorted((o for o in parts if not o.is_capture), key=lambda o: o.sort_key)
        spent = _delta(before, cat.tally())

        if not escapes:
            self.audit.leaves += 1
            if self.on_leaf is not None:
                if parts:
                    final = update_consistency(shadow, self.graph, self.rules, c, next(iter(parts)))
                    self.on_leaf(final, True)
                else:
                    self.on_leaf(shadow, False)
            return _Summary(rounds=1, tally=spent, failed=False)

        worst: Optional[_Summary] = None
        for o in escapes:
            child = update_consistency(shadow, self.graph, self.rules, c, o)
            sub = self._visit(cat.clone(), o, child)
            worst = _merge(worst, _Summary(rounds=sub.rounds + 1, tally=_add(spent, sub.tally), failed=sub.failed))
        return worst


def explore_cat_strategy(
    g: Graph,
    rules: RuleSet,
    cat: CatStrategy,
    max_rounds: int,
    check_soundness: bool = True,
    on_leaf: Optional[LeafCallback] = None,
) -> StrategyAudit:
    return StrategyExplorer(g, rules, max_rounds, check_soundness, on_leaf).run(cat)
