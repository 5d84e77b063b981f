# core/cat/transition.py
from __future__ import annotations

import copy
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import FrozenSet, Hashable, List, Optional, Tuple

from core.cat.errors import ComponentExhausted, InvariantViolation, StrategyError, WrongGraphShape
from core.graph.graph import Graph, GraphStructureError, component_of
from core.graph.rooted_tree import RootedTree, root_tree
from core.logger import BasicLogger
from core.rules.players import CatStrategy
from core.rules.ruleset import MAIN_GAME, Comparison, DistClass, Observation, RuleSet


class Phase(Enum):
    AT_REFERENCE = "at-reference"
    REPEAT_AFTER_ONE = "repeat-after-one"
    PROBE_X1 = "probe-x1"
    RETURN_AFTER_GREATER = "return-after-greater"


def round_bound(n: int) -> int:
    """Rounds the transition strategy needs at most on a tree of order n."""
    return 12 * n * n - 16 * n + 5


@dataclass(frozen=True)
class Pending:
    """Choices made when a two-round transition started at its reference vertex."""

    w1: int
    x1: int
    leaves: Tuple[int, ...]
    # non-leaf children of r outside X, w1 first
    branches: Tuple[int, ...]
    start_round: int
    x_size: int
    y_size: int


@dataclass(frozen=True)
class TransitionEvent:
    type: int
    start_round: int
    j: int
    x_before: int
    x_after: int
    y_before: int
    y_after: int

    def format_line(self) -> str:
        return f"transition type={self.type} start={self.start_round} j={self.j} X={self.x_after} Y={self.y_after}"


@dataclass(frozen=True)
class TransitionState:
    tree: RootedTree = field(compare=False, repr=False)
    r: int = 0
    X: FrozenSet[int] = frozenset()
    Y: FrozenSet[int] = frozenset()
    # parent of the roots of Y; None while Y is empty
    y_parent: Optional[int] = None
    phase: Phase = Phase.AT_REFERENCE
    pending: Optional[Pending] = None
    start_round: int = 1
    t1: int = 0
    t2: int = 0
    t3: int = 0
    t4: int = 0
    rounds_used: int = 0

    @staticmethod
    def initial(tree: RootedTree) -> "TransitionState":
        return TransitionState(tree=tree, r=tree.root)

    @property
    def counters(self) -> Tuple[int, int, int, int]:
        return (self.t1, self.t2, self.t3, self.t4)


@dataclass(frozen=True)
class TransitionStep:
    # None when the observation was a capture
    vertex: Optional[int]
    state: TransitionState
    events: Tuple[TransitionEvent, ...] = ()
    # X ∪ Y in force when the observation just read was taken at a reference vertex
    reference: Optional[FrozenSet[int]] = None


# ----------------------------
# Decision procedure
# ----------------------------

def transition_cat_next(state: TransitionState, obs: Optional[Observation]) -> TransitionStep:
    if obs is None:
        if state.rounds_used:
            raise InvariantViolation("Observation missing after round 1.", details=state.rounds_used)
        return _play(state, state.r, Phase.AT_REFERENCE, (), None, start_round=1)

    if obs.dist_class not in (DistClass.ZERO, DistClass.ONE, DistClass.TWO_PLUS):
        raise InvariantViolation("Transition strategy needs the coarse distance classes.", details=str(obs))
    if obs.is_capture:
        return TransitionStep(vertex=None, state=state)

    if state.phase is Phase.AT_REFERENCE:
        return _at_reference(state, obs, ())

    if state.phase is Phase.REPEAT_AFTER_ONE:
        if obs.dist_class is DistClass.ONE:
            raise InvariantViolation("Distance 1 twice in a row at the reference; the mouse must move.",
                                     details=state.rounds_used)
        event = TransitionEvent(1, state.start_round, 1, len(state.X), len(state.X), len(state.Y), 0)
        after = replace(state, Y=frozenset(), y_parent=None, t1=state.t1 + 1, start_round=state.rounds_used)
        return _at_reference(after, obs, (event,))

    pending = state.pending
    if pending is None:
        raise InvariantViolation("No pending transition.", details=state.phase.value)

    if state.phase is Phase.PROBE_X1:
        if obs.cmp is None:
            raise InvariantViolation("Probe observation carries no comparison.", details=str(obs))
        if obs.cmp is Comparison.NOT_GREATER:
            tree = state.tree
            X = state.X | frozenset(pending.leaves) | tree.subtree_union(pending.branches[1:])
            event = TransitionEvent(3, pending.start_round, 2, pending.x_size, len(X), pending.y_size, 0)
            after = replace(state, X=X, Y=frozenset(), y_parent=None, pending=None, t3=state.t3 + 1)
            return _play(after, state.r, Phase.AT_REFERENCE, (event,), None, start_round=state.rounds_used + 1)
        return _play(state, state.r, Phase.RETURN_AFTER_GREATER, (), None)

    # RETURN_AFTER_GREATER: this observation also opens the next transition
    tree = state.tree
    if obs.dist_class is DistClass.ONE:
        X = state.X | frozenset(pending.leaves) | tree.descendants[pending.w1]
        event = TransitionEvent(3, pending.start_round, 2, pending.x_size, len(X), pending.y_size, 0)
        after = replace(state, X=X, Y=frozenset(), y_parent=None, pending=None, t3=state.t3 + 1,
                        start_round=state.rounds_used)
    else:
        X = state.X | frozenset(pending.leaves)
        Y = state.Y | tree.descendants[pending.x1]
        event = TransitionEvent(4, pending.start_round, 2, pending.x_size, len(X), pending.y_size, len(Y))
        after = replace(state, X=X, Y=Y, y_parent=pending.w1, pending=None, t4=state.t4 + 1,
                        start_round=state.rounds_used)
    return _at_reference(after, obs, (event,))


def _at_reference(state: TransitionState, obs: Observation, events: Tuple[TransitionEvent, ...]) -> TransitionStep:
    reference = state.X | state.Y
    if obs.dist_class is DistClass.ONE:
        return _play(state, state.r, Phase.REPEAT_AFTER_ONE, events, reference)
    return _branch(state, events, reference)


def _branch(state: TransitionState, events: Tuple[TransitionEvent, ...], reference: FrozenSet[int]) -> TransitionStep:
    tree = state.tree
    r = state.r
    X, Y, y_parent = state.X, state.Y, state.y_parent
    x_size, y_size = len(X), len(Y)
    round_no = state.rounds_used

    while True:
        outside = [u for u in tree.children[r] if u not in X]
        leaves = tuple(sorted(u for u in outside if tree.is_leaf(u)))
        inner = sorted(u for u in outside if not tree.is_leaf(u))

        if y_parent is not None:
            if y_parent not in inner:
                raise InvariantViolation("Y hangs below a vertex that is not a candidate branch.",
                                         details=(r, y_parent))
            w1: Optional[int] = y_parent
        else:
            w1 = inner[0] if inner else None

        if w1 is None:
            break
        xs = [u for u in tree.children[w1] if u not in Y]
        if xs:
            break
        # every child of w1 is already in Y: w1's whole subtree is ruled out
        X, Y, y_parent = X | tree.descendants[w1], frozenset(), None

    if not inner:
        raise ComponentExhausted("Every position of the component is ruled out.",
                                 details={"round": round_no, "reference": r})

    if len(inner) == 1:
        new_X = X | Y | frozenset(leaves) | {w1, r}
        event = TransitionEvent(2, round_no, 1, x_size, len(new_X), y_size, 0)
        after = replace(state, r=w1, X=new_X, Y=frozenset(), y_parent=None, pending=None, t2=state.t2 + 1)
        return _play(after, w1, Phase.AT_REFERENCE, events + (event,), reference, start_round=round_no + 1)

    branches = (w1,) + tuple(u for u in inner if u != w1)
    pending = Pending(w1=w1, x1=xs[0], leaves=leaves, branches=branches,
                      start_round=round_no, x_size=len(X), y_size=len(Y))
    after = replace(state, X=X, Y=Y, y_parent=y_parent, pending=pending)
    return _play(after, xs[0], Phase.PROBE_X1, events, reference)


def _play(
    state: TransitionState,
    vertex: int,
    phase: Phase,
    events: Tuple[TransitionEvent, ...],
    reference: Optional[FrozenSet[int]],
    **changes,
) -> TransitionStep:
    after = replace(state, phase=phase, rounds_used=state.rounds_used + 1, **changes)
    return TransitionStep(vertex=vertex, state=after, events=events, reference=reference)


def structure_violation(state: TransitionState) -> Optional[str]:
    """Check X and Y are built from the pieces the procedure is allowed to use."""
    tree = state.tree
    X, Y, r = state.X, state.Y, state.r

    if X & Y:
        return "X and Y overlap"
    if not tree.non_descendants(r) <= X:
        return "X misses a non-descendant of the reference"

    rest = X - tree.non_descendants(r) - {r}
    pieces = tree.subtree_union([u for u in tree.children[r] if tree.descendants[u] <= rest])
    if pieces != rest:
        return "X is not a union of subtrees below the reference"

    if Y:
        w1 = state.y_parent
        if w1 is None or tree.parent[w1] != r:
            return "Y has no anchor among the children of the reference"
        if tree.subtree_union([u for u in tree.children[w1] if tree.descendants[u] <= Y]) != Y:
            return "Y is not a union of subtrees below its anchor"
    return None


def accounting_violation(t1: int, t2: int, t3: int, t4: int, n: int, rounds: int) -> Optional[str]:
    """Per-game counter bounds on a tree of order n."""
    if t1 > t2 + t3 + t4 + 1:
        return f"t1={t1} exceeds t2+t3+t4+1={t2 + t3 + t4 + 1}"
    if t2 > n - 1:
        return f"t2={t2} exceeds n-1={n - 1}"
    if t3 > 2 * n - 2:
        return f"t3={t3} exceeds 2n-2={2 * n - 2}"
    if t4 > (2 * n - 2) ** 2:
        return f"t4={t4} exceeds (2n-2)^2={(2 * n - 2) ** 2}"
    if rounds > round_bound(n):
        return f"rounds={rounds} exceeds {round_bound(n)}"
    return None


def event_violation(event: TransitionEvent) -> Optional[str]:
    """Size changes each transition type must show."""
    grew = event.x_after > event.x_before
    if event.x_after < event.x_before:
        return f"type {event.type}: X shrank"
    if event.type == 1 and (event.x_after != event.x_before or event.y_after != 0 or event.j != 1):
        return "type 1 must keep X, clear Y and last one round"
    if event.type == 2 and (not grew or event.y_after != 0 or event.j != 1):
        return "type 2 must grow X, clear Y and last one round"
    if event.type == 3 and (not grew or event.y_after != 0 or event.j != 2):
        return "type 3 must grow X, clear Y and last two rounds"
    if event.type == 4 and (event.y_after <= event.y_before or event.j != 2):
        return "type 4 must grow Y and last two rounds"
    return None

# ----------------------------
# Strategy wrapper
# ----------------------------

class TransitionCat(CatStrategy):
    """Transition strategy on the tree component containing `component_vertex`."""

    name = "transition"

    def __init__(self, graph: Graph, component_vertex: int = 0, rules: RuleSet = MAIN_GAME):
        super().__init__()
        if rules != MAIN_GAME:
            raise StrategyError("Transition strategy needs coarse-cmp feedback with must-move.", details=rules.label)
        try:
            root = min(component_of(graph, component_vertex))
            tree = root_tree(graph, component_vertex, root)
        except GraphStructureError as e:
            raise WrongGraphShape("Transition strategy needs an acyclic component.", details=str(e)) from e

        self.state = TransitionState.initial(tree)
        # (round of the observation, X ∪ Y held for it)
        self.reference_log: List[Tuple[int, FrozenSet[int]]] = []
        self.last_reference: Optional[FrozenSet[int]] = None
        self.logger = BasicLogger("TransitionCat").get_logger()

    @property
    def tree(self) -> RootedTree:
        return self.state.tree

    def next_move(self, observation: Optional[Observation]) -> int:
        observed_round = self.state.rounds_used
        step = transition_cat_next(self.state, observation)
        if step.vertex is None:
            raise InvariantViolation("Asked for a move after a capture.", details=observed_round)

        self.state = step.state
        self.events.extend(step.events)
        self.last_reference = step.reference
        if step.reference is not None:
            self.reference_log.append((observed_round, step.reference))

        for event in step.events:
            self.logger.debug(event.format_line())
        return step.vertex

    def clone(self) -> "TransitionCat":
        twin = copy.copy(self)
        twin.events = list(self.events)
        twin.reference_log = list(self.reference_log)
        return twin

    def state_key(self) -> Hashable:
        # round counters only matter for accounting, not for future moves
        s = self.state
        return (s.r, s.X, s.Y, s.y_parent, s.phase, s.pending)

    def tally(self) -> Tuple[int, int, int, int]:
        # t1 - (t2 + t3 + t4) rather than t1, so suffix maxima add up per game
        s = self.state
        return (s.t1 - s.t2 - s.t3 - s.t4, s.t2, s.t3, s.t4)

    def soundness_violation(self, positions: FrozenSet[int]) -> Optional[str]:
        broken = structure_violation(self.state)
        if broken is not None:
            return broken
        if self.last_reference is None:
            return None
        bad = positions & self.last_reference
        if bad:
            return f"mouse may be at {sorted(bad)} which the cat had ruled out"
        return None


def transition_cat(g: Graph, component_vertex: int = 0, rules: RuleSet = MAIN_GAME) -> TransitionCat:
    return TransitionCat(g, component_vertex, rules)
