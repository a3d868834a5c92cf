"""Third-player payoffs and the optimal choice of attack levels.

The played equilibrium (after Pareto selection) only depends on where
``(q1, q2)`` sits in a fixed line arrangement; the market value ``l`` and
the attack cost ``sigma`` enter the attacker's payoff solely through
``d = l - sigma``. Both facts let the optimisation be done exactly by
enumerating arrangement vertices.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

from . import geometry
from .equilibrium import (
    DegenerateGame,
    RegionLabel,
    _classify_point,
    played_equilibrium,
    region_boundaries,
)
from .game import AttackLevels, GameParameters, Profile, validate_attack
from .geometry import Line, Point
from .scalar import Scalar, ScalarLike, to_scalar

DEFAULT_BACKOFF = Scalar(1, 1000)


class DegenerateObjective(ValueError):
    """The attacker's optimum is not tied to a single induced profile."""


class Regime(str, Enum):
    NO_ATTACK = "NoAttack"
    SPLIT_ALLIANCE = "SplitAlliance"
    FORCE_ALLIANCE = "ForceAlliance"


@dataclass(frozen=True)
class AttackerParameters:
    sigma: Scalar
    eps_alliance: Scalar
    eps_infight: Scalar

    @classmethod
    def of(cls, sigma: ScalarLike, eps_alliance: ScalarLike, eps_infight: ScalarLike) -> "AttackerParameters":
        ap = cls(to_scalar(sigma), to_scalar(eps_alliance), to_scalar(eps_infight))
        for name in ("sigma", "eps_alliance", "eps_infight"):
            if getattr(ap, name) < 0:
                raise ValueError(f"requires {name} >= 0 (got {getattr(ap, name)})")
        return ap


@dataclass(frozen=True)
class RegionOptimum:
    region: Profile  # the profile played throughout the region
    value: Scalar
    argmax_points: Tuple[AttackLevels, ...]
    attained_in_played_region: bool
    witness: Optional[AttackLevels] = None  # a point attaining ``value``, if any


@dataclass(frozen=True)
class AttackPlan:
    regime: Regime
    supremum_value: Scalar
    attained: bool
    induced_profile: Profile
    backoff_delta: Scalar
    backoff_value: Scalar
    optimum_point: Optional[AttackLevels] = None
    backoff_point: Optional[AttackLevels] = None
    argmax_points: Tuple[AttackLevels, ...] = ()
    region_optima: Tuple[RegionOptimum, ...] = ()


@dataclass(frozen=True)
class EnvelopePiece:
    """``slope * d + intercept`` on ``lo < d < hi`` (None means unbounded)."""

    lo: Optional[Scalar]
    hi: Optional[Scalar]
    slope: Scalar
    intercept: Scalar


@dataclass(frozen=True)
class RegimeAnalysis:
    breakpoints: Tuple[Scalar, ...]
    regimes: Tuple[Regime, ...]
    per_region_value_functions: Dict[Profile, Tuple[EnvelopePiece, ...]]

    def regime_at(self, d: Scalar) -> Optional[Regime]:
        """Regime for ``d`` off the breakpoints; None exactly on one."""
        if d in self.breakpoints:
            return None
        return self.regimes[sum(1 for b in self.breakpoints if b < d)]


def payoff_coefficients(
    profile: Profile, d: Scalar, v: Scalar, eps_alliance: Scalar, eps_infight: Scalar
) -> Tuple[Scalar, Scalar]:
    """(a1, a2) with attacker payoff ``a1*q1 + a2*q2``; ``d = l - sigma``."""
    if profile is Profile.AA:
        k = d - eps_alliance
        return k, k
    if profile is Profile.FF:
        # firms busy fighting each other are cheaper to attack
        k = d + eps_infight
        return k, k
    if profile is Profile.AF:
        return d - v, d + v
    return d + v, d - v


def attacker_payoff(
    ap: AttackerParameters, params: GameParameters, attack: AttackLevels, profile: Profile
) -> Scalar:
    a1, a2 = payoff_coefficients(profile, params.l - ap.sigma, params.v, ap.eps_alliance, ap.eps_infight)
    return a1 * attack.q1 + a2 * attack.q2


class PlayedMap:
    """Which pure profile is played near each vertex of the arrangement.

    Depends on the game parameters except ``l`` (the selection never does).
    """

    def __init__(self, params: GameParameters):
        self.params = params
        self.bounds = region_boundaries(params)
        c, y, x, f = params.c, params.y, params.x, params.f
        # zero sets of AA-vs-FF payoff differences, where Pareto selection can flip
        dom = [
            Line(c / 2 + y, -c / 2, -(x + f), "dom1"),
            Line(-c / 2, c / 2 + y, -(x + f), "dom2"),
        ]
        self.lines: List[Line] = []
        for ln in self.bounds.lines() + dom + geometry.square_edges():
            if not any(ln.same_as(o) for o in self.lines):
                self.lines.append(ln)
        self._cache: Dict[Point, Optional[Profile]] = {}
        self.vertices = geometry.vertices(self.lines)
        self.probes = {v: geometry.probes_around(v, self.lines) for v in self.vertices}
        # profile -> vertices in the closure of the region where it is played
        self.closure: Dict[Profile, List[Point]] = {p: [] for p in Profile}
        for v in self.vertices:
            near = {self.played(q) for q in self.probes[v]} | {self.played(v)}
            for p in Profile:
                if p in near:
                    self.closure[p].append(v)

    def played(self, q: Point) -> Optional[Profile]:
        """Pure profile selected at ``q``; None if refused, mixed or ambiguous."""
        if q not in self._cache:
            try:
                sel, _ = played_equilibrium(self.params, AttackLevels(*q))
            except DegenerateGame:
                sel = None
            self._cache[q] = sel if isinstance(sel, Profile) else None
        return self._cache[q]


def _value(coef: Tuple[Scalar, Scalar], q: Point) -> Scalar:
    return coef[0] * q[0] + coef[1] * q[1]


def region_optima(
    pmap: PlayedMap, d: Scalar, eps_alliance: Scalar, eps_infight: Scalar
) -> List[RegionOptimum]:
    """Supremum of the attacker payoff over each played region."""
    out = []
    for profile in Profile:
        verts = pmap.closure[profile]
        if not verts:
            continue
        coef = payoff_coefficients(profile, d, pmap.params.v, eps_alliance, eps_infight)
        best = max(_value(coef, q) for q in verts)
        arg = [q for q in verts if _value(coef, q) == best]
        # the supremum may still be reached off the vertices when the payoff
        # is flat along an edge or across a face
        witnesses = list(arg)
        witnesses += [geometry.midpoint(a, b) for i, a in enumerate(arg) for b in arg[i + 1:]]
        witnesses += [p for q in arg for p in pmap.probes[q]]
        hit = next(
            (w for w in witnesses if _value(coef, w) == best and pmap.played(w) is profile),
            None,
        )
        out.append(
            RegionOptimum(
                region=profile,
                value=best,
                argmax_points=tuple(AttackLevels(*q) for q in arg),
                attained_in_played_region=hit is not None,
                witness=AttackLevels(*hit) if hit is not None else None,
            )
        )
    return out


def _decide(optima: Sequence[RegionOptimum]) -> Tuple[Regime, Optional[RegionOptimum]]:
    """Regime and winning region; None means stay at (0, 0)."""
    best = max(o.value for o in optima)
    if best <= 0:
        return Regime.NO_ATTACK, None
    top = [o for o in optima if o.value == best]
    attained = [o for o in top if o.attained_in_played_region]
    pool = attained or top
    if len({o.region for o in pool}) > 1:
        raise DegenerateObjective(
            "regions " + ", ".join(o.region.value for o in pool) + f" tie at the optimum {best}"
        )
    winner = pool[0]
    regime = Regime.FORCE_ALLIANCE if winner.region is Profile.AA else Regime.SPLIT_ALLIANCE
    return regime, winner


def _backoff(
    pmap: PlayedMap, profile: Profile, coef: Tuple[Scalar, Scalar], q: Point, delta: Scalar
) -> Tuple[Point, Scalar]:
    """Point within ``delta`` per coordinate of ``q`` where ``profile`` is
    strictly played, as good as possible; halves ``delta`` until one exists."""
    for _ in range(64):
        cands = [
            (q[0] + s1 * delta, q[1] + s2 * delta)
            for s1 in (-1, 0, 1)
            for s2 in (-1, 0, 1)
            if (s1, s2) != (0, 0)
        ]
        for p in geometry.probes_around(q, pmap.lines):
            step = max(abs(p[0] - q[0]), abs(p[1] - q[1]))
            cands.append((q[0] + (p[0] - q[0]) / step * delta, q[1] + (p[1] - q[1]) / step * delta))
        ok = [
            p
            for p in cands
            if geometry.in_square(p)
            and _classify_point(pmap.bounds, p) is not RegionLabel.BOUNDARY
            and pmap.played(p) is profile
        ]
        if ok:
            return max(ok, key=lambda p: (_value(coef, p), -p[0], -p[1])), delta
        delta /= 2
    raise DegenerateObjective("no interior point found near the supremum")  # pragma: no cover


def plan_from_map(
    pmap: PlayedMap, ap: AttackerParameters, l: Scalar, backoff_delta: Scalar = DEFAULT_BACKOFF
) -> AttackPlan:
    if not 0 < backoff_delta < 1:
        raise ValueError("backoff_delta must lie in (0, 1)")
    d = l - ap.sigma
    optima = region_optima(pmap, d, ap.eps_alliance, ap.eps_infight)
    regime, win = _decide(optima)
    origin = AttackLevels(Scalar(0), Scalar(0))
    if win is None:
        return AttackPlan(
            regime=regime,
            supremum_value=Scalar(0),
            attained=True,
            induced_profile=pmap.played((origin.q1, origin.q2)),
            backoff_delta=backoff_delta,
            backoff_value=Scalar(0),
            optimum_point=origin,
            region_optima=tuple(optima),
        )
    if win.attained_in_played_region:
        return AttackPlan(
            regime=regime,
            supremum_value=win.value,
            attained=True,
            induced_profile=win.region,
            backoff_delta=backoff_delta,
            backoff_value=win.value,
            optimum_point=win.witness,
            argmax_points=win.argmax_points,
            region_optima=tuple(optima),
        )
    coef = payoff_coefficients(win.region, d, pmap.params.v, ap.eps_alliance, ap.eps_infight)
    target = min((q.q1, q.q2) for q in win.argmax_points)
    point, used = _backoff(pmap, win.region, coef, target, backoff_delta)
    return AttackPlan(
        regime=regime,
        supremum_value=win.value,
        attained=False,
        induced_profile=win.region,
        backoff_delta=used,
        backoff_value=_value(coef, point),
        backoff_point=AttackLevels(*point),
        argmax_points=win.argmax_points,
        region_optima=tuple(optima),
    )


def optimize_attack(
    params: GameParameters, ap: AttackerParameters, backoff_delta: ScalarLike = DEFAULT_BACKOFF
) -> AttackPlan:
    """Best attack levels for the third player.

    When the best payoff sits on a line where the firms' equilibrium would
    switch, it cannot be attained; the plan then carries a point stepped
    ``backoff_delta`` back into the region, with its payoff.
    """
    return plan_from_map(PlayedMap(params), ap, params.l, to_scalar(backoff_delta))


def _vertex_functions(pmap: PlayedMap, eps_alliance: Scalar, eps_infight: Scalar):
    """Per profile, (slope, intercept) in ``d`` of the payoff at each closure vertex."""
    out = {}
    for profile, verts in pmap.closure.items():
        fns = []
        for q in verts:
            at0 = _value(payoff_coefficients(profile, Scalar(0), pmap.params.v, eps_alliance, eps_infight), q)
            at1 = _value(payoff_coefficients(profile, Scalar(1), pmap.params.v, eps_alliance, eps_infight), q)
            fns.append((at1 - at0, at0))
        out[profile] = sorted(set(fns))
    return out


def regime_analysis(params: GameParameters, eps_alliance: ScalarLike, eps_infight: ScalarLike) -> RegimeAnalysis:
    """Attacker regimes as a function of ``d = l - sigma``.

    Vertex payoffs are affine in ``d``; every regime change happens where two
    of them cross or one crosses zero, so testing one ``d`` per gap between
    those candidates labels the whole line.
    """
    eps_a, eps_i = to_scalar(eps_alliance), to_scalar(eps_infight)
    pmap = PlayedMap(params)
    fns = _vertex_functions(pmap, eps_a, eps_i)
    every = sorted({fn for group in fns.values() for fn in group} | {(Scalar(0), Scalar(0))})
    cands = set()
    for i, (s1, b1) in enumerate(every):
        for s2, b2 in every[i + 1:]:
            if s1 != s2:
                cands.add((b2 - b1) / (s1 - s2))
    cuts = sorted(cands)
    if cuts:
        tests = [cuts[0] - 1] + [(a + b) / 2 for a, b in zip(cuts, cuts[1:])] + [cuts[-1] + 1]
    else:
        tests = [Scalar(0)]
    labels = []
    for d in tests:
        regime, _ = _decide(region_optima(pmap, d, eps_a, eps_i))
        labels.append(regime)

    breakpoints: List[Scalar] = []
    regimes: List[Regime] = [labels[0]]
    for cut, lab in zip(cuts, labels[1:]):
        if lab is not regimes[-1]:
            breakpoints.append(cut)
            regimes.append(lab)

    envelopes: Dict[Profile, Tuple[EnvelopePiece, ...]] = {}
    bounds = [None] + cuts + [None]
    for profile, group in fns.items():
        if not group:
            continue
        pieces: List[EnvelopePiece] = []
        for k, d in enumerate(tests):
            s, b = max(group, key=lambda fn: fn[0] * d + fn[1])
            if pieces and (pieces[-1].slope, pieces[-1].intercept) == (s, b):
                pieces[-1] = EnvelopePiece(pieces[-1].lo, bounds[k + 1], s, b)
            else:
                pieces.append(EnvelopePiece(bounds[k], bounds[k + 1], s, b))
        envelopes[profile] = tuple(pieces)
    return RegimeAnalysis(tuple(breakpoints), tuple(regimes), envelopes)
