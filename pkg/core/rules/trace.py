# core/rules/trace.py
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence

from core.graph.graph import Distance, Graph, distances_from
from core.rules.engine import GameResult, RoundRecord
from core.rules.ruleset import RuleSet, feedback, legal_mouse_moves


@dataclass(frozen=True)
class TraceVerdict:
    valid: bool
    round: Optional[int] = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.valid


def validate_trace(g: Graph, rules: RuleSet, trace: Sequence[RoundRecord]) -> TraceVerdict:
    """Replay an omniscient trace and recompute every signal from scratch."""
    prev: Optional[RoundRecord] = None
    d_prev: Optional[Distance] = None

    for idx, rec in enumerate(trace, start=1):
        if rec.round != idx:
            return TraceVerdict(False, rec.round, f"expected round {idx}")
        if not 0 <= rec.cat < g.vertex_count:
            return TraceVerdict(False, rec.round, "cat vertex out of range")
        if rec.mouse is None:
            return TraceVerdict(False, rec.round, "mouse position missing")
        if not 0 <= rec.mouse < g.vertex_count:
            return TraceVerdict(False, rec.round, "mouse vertex out of range")
        if prev is not None:
            if prev.observation.is_capture:
                return TraceVerdict(False, rec.round, "record after capture")
            legal = legal_mouse_moves(rules, g, prev.mouse, prev.cat)
            if rec.mouse not in legal:
                return TraceVerdict(False, rec.round, f"illegal move {prev.mouse}->{rec.mouse}")

        d = distances_from(g, rec.cat)[rec.mouse]
        expected = feedback(rules, d, d_prev)
        if expected != rec.observation:
            return TraceVerdict(False, rec.round, f"signal {rec.observation} != recomputed {expected}")

        prev, d_prev = rec, d

    return TraceVerdict(True)


def format_trace(result: GameResult) -> List[str]:
    """Round lines, then transition lines, then the witness line of phantom games."""
    lines = [rec.format_line() for rec in result.trace]
    lines.extend(event.format_line() for event in result.events)
    if result.witness is not None:
        lines.append("witness=" + ",".join(str(v) for v in result.witness))
    return lines
