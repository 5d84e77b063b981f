# core/rules/engine.py
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, List, Optional

from core.graph.graph import Distance, Graph
from core.logger import BasicLogger
from core.mouse.consistency import ConsistencySet, SuccessorModel, update_consistency
from core.rules.players import CatStrategy, ConcreteMouse, MouseAgent, PhantomMouse, TraceEvent
from core.rules.ruleset import Observation, RuleSet, feedback, legal_mouse_moves


# ----------------------------
# Exceptions
# ----------------------------

@dataclass
class RuleViolationError(Exception):
    message: str
    round_no: Optional[int] = None
    details: Optional[Any] = None

    def __str__(self) -> str:
        where = f"round {self.round_no}: " if self.round_no is not None else ""
        if self.details is None:
            return f"{where}{self.message}"
        return f"{where}{self.message} | details={self.details!r}"


class IllegalMoveError(RuleViolationError):
    pass


class InfeasibleSignalError(RuleViolationError):
    pass


# ----------------------------
# Records
# ----------------------------

class Outcome(Enum):
    """
    How a game ended. MOUSE_NO_LEGAL_MOVE arises under the avoid-cat rules,
    and under any must-move rule when the mouse sits on an isolated vertex
    (K1 + K1 ends this way in round 2). It counts as a cat success.
    """

    CAT_WINS = "cat"
    MOUSE_SURVIVED_HORIZON = "horizon"
    MOUSE_NO_LEGAL_MOVE = "stuck"

    @property
    def cat_succeeded(self) -> bool:
        return self is not Outcome.MOUSE_SURVIVED_HORIZON


@dataclass(frozen=True)
class RoundRecord:
    round: int
    cat: int
    observation: Observation
    mouse: Optional[int] = None

    def format_line(self) -> str:
        mouse = "-" if self.mouse is None else str(self.mouse)
        return f"round={self.round} cat={self.cat} {self.observation} mouse={mouse}"


@dataclass
class GameResult:
    outcome: Outcome
    rounds_played: int
    trace: List[RoundRecord]
    events: List[TraceEvent] = field(default_factory=list)
    # Phantom games only: one trajectory reproducing every emitted signal.
    witness: Optional[List[int]] = None

    def omniscient_trace(self) -> List[RoundRecord]:
        """The trace with mouse fields filled in from the witness when needed."""
        if self.witness is None:
            return list(self.trace)
        return [
            RoundRecord(r.round, r.cat, r.observation, self.witness[r.round - 1])
            for r in self.trace
        ]


# ----------------------------
# Round loop
# ----------------------------

class GameEngine:
    """Runs one game: cat commits, mouse answers knowing the cat's vertex, signal is recorded."""

    def __init__(self, graph: Graph, rules: RuleSet):
        self.graph = graph
        self.rules = rules
        self.model = SuccessorModel.for_game(graph, rules)
        self.logger = BasicLogger("GameEngine").get_logger()

    def play(self, cat: CatStrategy, mouse: MouseAgent, max_rounds: int) -> GameResult:
        if max_rounds < 1:
            raise ValueError("max_rounds must be >= 1")

        horizon = max_rounds if cat.horizon is None else min(max_rounds, cat.horizon)
        trace: List[RoundRecord] = []
        cat_history: List[int] = []

        observation: Optional[Observation] = None
        mouse_pos: Optional[int] = None
        d_prev: Optional[Distance] = None
        shadow = ConsistencySet.initial(self.graph, self.rules)
        outcome = Outcome.MOUSE_SURVIVED_HORIZON
        rounds_played = horizon

        for rnd in range(1, horizon + 1):
            c = cat.next_move(observation)
            if not isinstance(c, int) or not 0 <= c < self.graph.vertex_count:
                raise IllegalMoveError("Cat chose an invalid vertex.", round_no=rnd, details=c)
            c_prev = cat_history[-1] if cat_history else None
            cat_history.append(c)

            if isinstance(mouse, PhantomMouse):
                signal = mouse.signal(rnd, c)
                if signal is None:
                    if any(self.model.successors(shadow.elements, c, c_prev).values()):
                        raise InfeasibleSignalError(
                            "Phantom claimed no legal move while trajectories remain.", round_no=rnd
                        )
                    outcome, rounds_played = Outcome.MOUSE_NO_LEGAL_MOVE, rnd
                    break
                shadow = update_consistency(shadow, self.graph, self.rules, c, signal)
                if not shadow.elements:
                    raise InfeasibleSignalError("Phantom emitted an infeasible signal.", round_no=rnd, details=str(signal))
                observation = signal
                trace.append(RoundRecord(rnd, c, observation))

            elif isinstance(mouse, ConcreteMouse):
                if mouse_pos is None:
                    legal = frozenset(self.graph.vertices)
                else:
                    legal = legal_mouse_moves(self.rules, self.graph, mouse_pos, c_prev)
                if not legal:
                    outcome, rounds_played = Outcome.MOUSE_NO_LEGAL_MOVE, rnd
                    break

                m = mouse.choose(rnd, c, tuple(cat_history), legal)
                if m not in legal:
                    raise IllegalMoveError("Mouse chose an illegal vertex.", round_no=rnd, details=(m, sorted(legal)))

                d = self.model.distance(c, m)
                observation = feedback(self.rules, d, d_prev)
                trace.append(RoundRecord(rnd, c, observation, m))
                mouse_pos, d_prev = m, d

            else:
                raise TypeError(f"Unsupported mouse agent {type(mouse)!r}")

            self.logger.debug("round=%s cat=%s %s", rnd, c, observation)

            if observation.is_capture:
                outcome, rounds_played = Outcome.CAT_WINS, rnd
                break

        witness = mouse.witness() if isinstance(mouse, PhantomMouse) else None
        self.logger.debug(
            "Game finished",
            extra={"outcome": outcome.value, "rounds": rounds_played, "rules": self.rules.label},
        )
        return GameResult(
            outcome=outcome,
            rounds_played=rounds_played,
            trace=trace,
            events=list(cat.events),
            witness=witness,
        )


def play_game(g: Graph, rules: RuleSet, cat: CatStrategy, mouse: MouseAgent, max_rounds: int) -> GameResult:
    return GameEngine(g, rules).play(cat, mouse, max_rounds)
