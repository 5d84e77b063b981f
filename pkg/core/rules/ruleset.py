# core/rules/ruleset.py
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import FrozenSet, Optional

from core.graph.graph import INFINITE, Distance, Graph


class FeedbackChannel(Enum):
    BINARY = "binary"          # 0 vs >= 1
    COARSE = "coarse"          # {0, 1, 2+}
    COARSE_CMP = "coarse-cmp"  # {0, 1, 2+} plus comparison with the previous distance
    CMP_ONLY = "cmp-only"      # capture signal plus comparison
    EXACT = "exact"            # exact distance

    @property
    def has_comparison(self) -> bool:
        return self in (FeedbackChannel.COARSE_CMP, FeedbackChannel.CMP_ONLY)


class MovementRule(Enum):
    MUST_MOVE = "must-move"                      # m' in N(m)
    MAY_STAY_AVOID_CAT = "may-stay-avoid-cat"    # m' in ({m} u N(m)) \ {c_prev}
    MUST_MOVE_AVOID_CAT = "must-move-avoid-cat"  # m' in N(m) \ {c_prev}
    MAY_STAY = "may-stay"                        # m' in {m} u N(m)

    @property
    def may_stay(self) -> bool:
        return self in (MovementRule.MAY_STAY, MovementRule.MAY_STAY_AVOID_CAT)

    @property
    def avoids_cat(self) -> bool:
        return self in (MovementRule.MAY_STAY_AVOID_CAT, MovementRule.MUST_MOVE_AVOID_CAT)


@dataclass(frozen=True)
class RuleSet:
    feedback_channel: FeedbackChannel
    movement_rule: MovementRule

    @property
    def label(self) -> str:
        return f"{self.feedback_channel.value}/{self.movement_rule.value}"

    @staticmethod
    def parse(channel: str, movement: str) -> "RuleSet":
        try:
            return RuleSet(FeedbackChannel(channel), MovementRule(movement))
        except ValueError as e:
            raise ValueError(
                f"Unknown rule set {channel!r}/{movement!r}. "
                f"Channels: {[c.value for c in FeedbackChannel]}; "
                f"movements: {[m.value for m in MovementRule]}"
            ) from e


MAIN_GAME = RuleSet(FeedbackChannel.COARSE_CMP, MovementRule.MUST_MOVE)
ORIGINAL_GAME = RuleSet(FeedbackChannel.BINARY, MovementRule.MUST_MOVE)
SEAGER_DEMO_GAME = RuleSet(FeedbackChannel.BINARY, MovementRule.MUST_MOVE_AVOID_CAT)


class DistClass(Enum):
    ZERO = "0"
    ONE = "1"
    TWO_PLUS = "2+"
    NONZERO = "nz"
    EXACT = "k"


class Comparison(Enum):
    NOT_GREATER = "le"
    GREATER = "gt"


_CLASS_RANK = {
    DistClass.ZERO: 0,
    DistClass.ONE: 1,
    DistClass.TWO_PLUS: 2,
    DistClass.NONZERO: 3,
    DistClass.EXACT: 4,
}
_CMP_RANK = {None: 0, Comparison.NOT_GREATER: 1, Comparison.GREATER: 2}


def format_distance(d: Distance) -> str:
    return "inf" if d == INFINITE else str(int(d))


@dataclass(frozen=True)
class Observation:
    dist_class: DistClass
    exact: Optional[Distance] = None  # set only for DistClass.EXACT
    cmp: Optional[Comparison] = None

    @property
    def is_capture(self) -> bool:
        return self.dist_class is DistClass.ZERO

    @property
    def sort_key(self) -> tuple:
        exact = -1 if self.exact is None else self.exact
        return (_CLASS_RANK[self.dist_class], exact, _CMP_RANK[self.cmp])

    def class_token(self) -> str:
        if self.dist_class is DistClass.EXACT:
            return f"k:{format_distance(self.exact)}"
        return self.dist_class.value

    def cmp_token(self) -> str:
        return "-" if self.cmp is None else self.cmp.value

    def __str__(self) -> str:
        return f"class={self.class_token()} cmp={self.cmp_token()}"


def _dist_class(channel: FeedbackChannel, d: Distance) -> DistClass:
    if d == 0:
        return DistClass.ZERO
    if channel in (FeedbackChannel.BINARY, FeedbackChannel.CMP_ONLY):
        return DistClass.NONZERO
    if channel is FeedbackChannel.EXACT:
        return DistClass.EXACT
    return DistClass.ONE if d == 1 else DistClass.TWO_PLUS


def feedback(rules: RuleSet, d: Distance, d_prev: Optional[Distance]) -> Observation:
    """Signal for distance d; d_prev is None exactly in round 1."""
    channel = rules.feedback_channel
    cls = _dist_class(channel, d)

    cmp: Optional[Comparison] = None
    if channel.has_comparison and d_prev is not None:
        # math.inf compares as the extended order needs: inf <= inf, inf > k
        cmp = Comparison.NOT_GREATER if d <= d_prev else Comparison.GREATER

    exact = d if cls is DistClass.EXACT else None
    return Observation(dist_class=cls, exact=exact, cmp=cmp)


def legal_mouse_moves(rules: RuleSet, g: Graph, m_prev: int, c_prev: Optional[int]) -> FrozenSet[int]:
    """Moves available in rounds >= 2; round-1 placement is any vertex."""
    movement = rules.movement_rule
    options = set(g.neighbors(m_prev))
    if movement.may_stay:
        options.add(m_prev)
    if movement.avoids_cat and c_prev is not None:
        options.discard(c_prev)
    return frozenset(options)
