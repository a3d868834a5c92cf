"""Management advice for a firm that wants an alliance to form or hold."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

from .equilibrium import region_boundaries
from .game import AttackLevels, GameParameters, validate_attack
from .scalar import Scalar, ScalarLike, to_scalar


@dataclass(frozen=True)
class Interval:
    lo: Scalar
    hi: Scalar
    lo_strict: bool = False
    hi_strict: bool = False

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"interval bounds out of order: {self.lo} > {self.hi}")

    @classmethod
    def empty(cls) -> "Interval":
        return cls(Scalar(0), Scalar(0), True, True)

    @property
    def is_empty(self) -> bool:
        return self.lo == self.hi and (self.lo_strict or self.hi_strict)

    def __contains__(self, q: Scalar) -> bool:
        if self.is_empty:
            return False
        above = q > self.lo if self.lo_strict else q >= self.lo
        below = q < self.hi if self.hi_strict else q <= self.hi
        return above and below

    def shrink(self, lo_by: Scalar, hi_by: Scalar) -> "Interval":
        lo, hi = self.lo + lo_by, self.hi - hi_by
        if self.is_empty or lo > hi:
            return Interval.empty()
        return Interval(lo, hi, self.lo_strict, self.hi_strict)

    def __str__(self) -> str:
        if self.is_empty:
            return "empty"
        return f"{'(' if self.lo_strict else '['}{self.lo}, {self.hi}{')' if self.hi_strict else ']'}"


class RecommendationKind(str, Enum):
    FIGHT_NO_COMMITMENT = "FightNoCommitment"
    COMMIT_TO_FORM_ALLIANCE = "CommitToFormAlliance"
    COMMIT_TO_STABILIZE = "CommitToStabilize"
    ALLIANCE_ALREADY_STABLE = "AllianceAlreadyStable"


class MarginTooLarge(ValueError):
    def __init__(self, interval: Interval, margin: Scalar):
        super().__init__(f"margin {margin} empties the commitment interval {interval}")
        self.interval = interval
        self.margin = margin


@dataclass(frozen=True)
class Recommendation:
    kind: RecommendationKind
    focal_player: int
    thresholds: Tuple[Scalar, Scalar]
    margin: Scalar
    target_interval: Optional[Interval] = None
    thresholds_ordered: bool = True


def thresholds(params: GameParameters) -> Tuple[Scalar, Scalar]:
    """(t_low, t_high): where the AA lines meet on the diagonal, and the FF bound."""
    return (params.v - params.x) / (params.v + params.y), 1 - params.f / params.v


def commitment_interval(params: GameParameters, q_opponent: ScalarLike) -> Interval:
    """Own pressures that make Ally-Ally an equilibrium against ``q_opponent``."""
    q = to_scalar(q_opponent)
    if not 0 <= q <= 1:
        raise ValueError(f"requires 0 <= q_opponent <= 1 (got {q})")
    v, x, c, y = params.v, params.x, params.c, params.y
    k = 2 * v + 2 * y + c
    lo = (2 * v - 2 * x + c * q) / k
    if c == 0:
        # the opponent's condition no longer involves our pressure
        hi = Scalar(1) if k * q >= 2 * v - 2 * x else Scalar(-1)
    else:
        hi = min(Scalar(1), (k * q - 2 * v + 2 * x) / c)
    if lo > hi:
        return Interval.empty()
    return Interval(lo, hi)


def _aa_holds(params: GameParameters, attack: AttackLevels) -> bool:
    b = region_boundaries(params)
    q = (attack.q1, attack.q2)
    return b.aa_line_1.value(q) >= 0 and b.aa_line_2.value(q) >= 0


def advise(
    params: GameParameters, attack: AttackLevels, focal_player: int = 1, margin: ScalarLike = 0
) -> Recommendation:
    """Recommend how the focal firm should use unilateral commitments.

    The decision depends on the opponent's pressure band. Between the two
    thresholds a commitment can make the alliance an equilibrium, but
    overshooting the interval's upper end lands in the asymmetric region
    where the committing firm is exploited.
    """
    validate_attack(attack)
    if focal_player not in (1, 2):
        raise ValueError("focal_player must be 1 or 2")
    m = to_scalar(margin)
    if m < 0:
        raise ValueError("margin must be non-negative")
    q_opp = attack.of_player(3 - focal_player)
    t_low, t_high = thresholds(params)
    common = dict(focal_player=focal_player, thresholds=(t_low, t_high), margin=m,
                  thresholds_ordered=t_low < t_high)

    if _aa_holds(params, attack):
        return Recommendation(RecommendationKind.ALLIANCE_ALREADY_STABLE, **common)
    if q_opp <= t_low:
        return Recommendation(RecommendationKind.FIGHT_NO_COMMITMENT, **common)

    full = commitment_interval(params, q_opp)
    if q_opp <= t_high:
        kind = RecommendationKind.COMMIT_TO_FORM_ALLIANCE
        target = full.shrink(m, m)
    else:
        kind = RecommendationKind.COMMIT_TO_STABILIZE
        # full pressure is not a region boundary, so no safety margin is needed there
        target = full.shrink(m, m if full.hi < 1 else Scalar(0))
    if target.is_empty:
        if full.is_empty:
            return Recommendation(RecommendationKind.FIGHT_NO_COMMITMENT, **common)
        raise MarginTooLarge(full, m)
    return Recommendation(kind, target_interval=target, **common)
