"""Pure and mixed equilibria of the pressured game and the region map."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional, Tuple, Union

from . import geometry
from .game import (
    AttackLevels,
    Bimatrix,
    GameParameters,
    Profile,
    pressured_bimatrix,
    validate_attack,
)
from .geometry import Line, Point
from .scalar import Scalar


class DegenerateGame(ValueError):
    """The game has a continuum of equilibria; no selection is made."""


class RegionLabel(str, Enum):
    AA = "AA"
    FF = "FF"
    AF = "AF"
    FA = "FA"
    MULTI = "MULTI"  # AA, FF and a mixed equilibrium
    AF_FA = "AF+FA"  # AF, FA and a mixed equilibrium
    BOUNDARY = "BOUNDARY"


# pure equilibria implied by each strict label
LABEL_PROFILES: Dict[RegionLabel, frozenset] = {
    RegionLabel.AA: frozenset({Profile.AA}),
    RegionLabel.FF: frozenset({Profile.FF}),
    RegionLabel.AF: frozenset({Profile.AF}),
    RegionLabel.FA: frozenset({Profile.FA}),
    RegionLabel.MULTI: frozenset({Profile.AA, Profile.FF}),
    RegionLabel.AF_FA: frozenset({Profile.AF, Profile.FA}),
}


@dataclass(frozen=True)
class MixedEquilibrium:
    p1_ally: Scalar
    p2_ally: Scalar


Equilibrium = Union[Profile, MixedEquilibrium]


@dataclass(frozen=True)
class EquilibriumSet:
    pure: Tuple[Profile, ...]
    mixed: Optional[MixedEquilibrium]
    degenerate: bool

    def __len__(self) -> int:
        return len(self.pure) + (self.mixed is not None)

    @property
    def multiple(self) -> bool:
        return len(self) > 1

    def members(self) -> List[Equilibrium]:
        return list(self.pure) + ([self.mixed] if self.mixed is not None else [])


@dataclass(frozen=True)
class RegionBoundaries:
    """Closed-form equilibrium conditions in the attack plane.

    ``aa_line_i`` is the line where player i is indifferent between Ally and
    Fight against an allying opponent; AA needs ``aa_line_i.value(q) >= 0``
    for both players. ``ff_threshold`` bounds each ``q_i`` for FF.
    """

    aa_line_1: Line
    aa_line_2: Line
    ff_threshold: Scalar

    def aa_bound(self, player: int, q_other: Scalar) -> Scalar:
        """Smallest own pressure at which ``player`` keeps allying."""
        ln = self.aa_line_1 if player == 1 else self.aa_line_2
        own = ln.a if player == 1 else ln.b
        other = ln.b if player == 1 else ln.a
        return (ln.rhs - other * q_other) / own

    def conditions(self, q: Point) -> Dict[Profile, Tuple[Scalar, Scalar]]:
        """Slack of each profile's two conditions; an equilibrium needs both >= 0."""
        g1 = self.aa_line_1.value(q)
        g2 = self.aa_line_2.value(q)
        t = self.ff_threshold
        return {
            Profile.AA: (g1, g2),
            Profile.FF: (t - q[0], t - q[1]),
            Profile.AF: (q[0] - t, -g2),
            Profile.FA: (-g1, q[1] - t),
        }

    def lines(self) -> List[Line]:
        t = self.ff_threshold
        return [
            self.aa_line_1,
            self.aa_line_2,
            Line(Scalar(1), Scalar(0), t, "q1=ff"),
            Line(Scalar(0), Scalar(1), t, "q2=ff"),
        ]


@dataclass(frozen=True)
class BoundaryCurve:
    line: Line
    segments: Tuple[Tuple[Point, Point], ...]


@dataclass(frozen=True)
class RegionDiagram:
    resolution: int
    centers: Tuple[Scalar, ...]
    # cells[j][i] is the label at (centers[i], centers[j]): rows run along q2
    cells: Tuple[Tuple[RegionLabel, ...], ...]
    boundary_curves: Tuple[BoundaryCurve, ...]
    # (i, j) of cells whose center is non-generic and were labelled off-center
    nudged: frozenset = frozenset()

    def label_at(self, i: int, j: int) -> RegionLabel:
        return self.cells[j][i]

    def labels(self) -> set:
        return {lab for row in self.cells for lab in row}


def pure_equilibria(m: Bimatrix) -> List[Profile]:
    """Profiles from which no player gains by deviating alone."""
    out = []
    for p in Profile:
        if all(m.payoff(p, i) >= m.payoff(p.deviate(i), i) for i in (1, 2)):
            out.append(p)
    return out


def _indifference(m: Bimatrix, player: int) -> Tuple[Scalar, Scalar]:
    """(numerator, denominator) of the opponent's Ally probability that
    leaves ``player`` indifferent between Ally and Fight."""
    if player == 1:
        vs_ally = m.payoff(Profile.AA, 1) - m.payoff(Profile.FA, 1)
        vs_fight = m.payoff(Profile.AF, 1) - m.payoff(Profile.FF, 1)
    else:
        vs_ally = m.payoff(Profile.AA, 2) - m.payoff(Profile.AF, 2)
        vs_fight = m.payoff(Profile.FA, 2) - m.payoff(Profile.FF, 2)
    return -vs_fight, vs_ally - vs_fight


def mixed_equilibrium(m: Bimatrix) -> Optional[MixedEquilibrium]:
    """Fully mixed equilibrium, if one exists.

    Raises DegenerateGame when a player is indifferent whatever the opponent
    does, in which case mixed equilibria form a continuum.
    """
    n1, d1 = _indifference(m, 1)  # fixes player 2's mix
    n2, d2 = _indifference(m, 2)  # fixes player 1's mix
    if (d1 == 0 and n1 == 0) or (d2 == 0 and n2 == 0):
        raise DegenerateGame("a player is indifferent against every opponent mix")
    if d1 == 0 or d2 == 0:
        return None
    p1, p2 = n2 / d2, n1 / d1
    if 0 < p1 < 1 and 0 < p2 < 1:
        return MixedEquilibrium(p1, p2)
    return None


def expected_payoffs(m: Bimatrix, eq: Equilibrium) -> Tuple[Scalar, Scalar]:
    if isinstance(eq, Profile):
        return m.pair(eq)
    p, r = eq.p1_ally, eq.p2_ally
    weights = {
        Profile.AA: p * r,
        Profile.AF: p * (1 - r),
        Profile.FA: (1 - p) * r,
        Profile.FF: (1 - p) * (1 - r),
    }
    return (
        sum((w * m.payoff(pr, 1) for pr, w in weights.items()), Scalar(0)),
        sum((w * m.payoff(pr, 2) for pr, w in weights.items()), Scalar(0)),
    )


def equilibrium_set(m: Bimatrix) -> EquilibriumSet:
    pure = pure_equilibria(m)
    degenerate = False
    try:
        mixed = mixed_equilibrium(m)
    except DegenerateGame:
        mixed, degenerate = None, True
    for p in pure:
        # a tied deviation at an equilibrium opens a segment of mixed equilibria
        if any(m.payoff(p, i) == m.payoff(p.deviate(i), i) for i in (1, 2)):
            degenerate = True
    return EquilibriumSet(tuple(pure), mixed, degenerate)


def region_boundaries(params: GameParameters) -> RegionBoundaries:
    v, x, c, y, f = params.v, params.x, params.c, params.y, params.f
    k = 2 * v + 2 * y + c
    offset = 2 * v - 2 * x
    return RegionBoundaries(
        aa_line_1=Line(k, -c, offset, "aa1"),
        aa_line_2=Line(-c, k, offset, "aa2"),
        ff_threshold=1 - f / v,
    )


def _classify_point(bounds: RegionBoundaries, q: Point) -> RegionLabel:
    holding = []
    for profile, slack in bounds.conditions(q).items():
        if all(s >= 0 for s in slack):
            if any(s == 0 for s in slack):
                return RegionLabel.BOUNDARY
            holding.append(profile)
    found = frozenset(holding)
    for label, profiles in LABEL_PROFILES.items():
        if profiles == found:
            return label
    raise AssertionError(f"no label for equilibrium set {sorted(found)}")  # pragma: no cover


def classify_region(params: GameParameters, attack: AttackLevels) -> RegionLabel:
    validate_attack(attack)
    return _classify_point(region_boundaries(params), (attack.q1, attack.q2))


def dominates(a: Tuple[Scalar, Scalar], b: Tuple[Scalar, Scalar]) -> bool:
    return a[0] >= b[0] and a[1] >= b[1] and (a[0] > b[0] or a[1] > b[1])


def select_pareto(m: Bimatrix, eqs: EquilibriumSet) -> Optional[Equilibrium]:
    """Equilibrium that Pareto-dominates every other one, if any.

    Pure equilibria are tried first; the mixed one competes only when no
    pure equilibrium dominates the other pure ones.
    """
    pure = list(eqs.pure)
    if len(pure) == 1 and eqs.mixed is None:
        return pure[0]
    pay = {p: m.pair(p) for p in pure}
    for p in pure:
        if all(dominates(pay[p], pay[o]) for o in pure if o is not p):
            return p
    if eqs.mixed is not None:
        mp = expected_payoffs(m, eqs.mixed)
        if not pure or all(dominates(mp, pay[o]) for o in pure):
            return eqs.mixed
    return None


def played_equilibrium(
    params: GameParameters, attack: AttackLevels
) -> Tuple[Optional[Equilibrium], EquilibriumSet]:
    """Equilibrium the two firms settle on, and the full set it came from.

    The selection is None when no equilibrium dominates the others; the set's
    ``multiple`` flag tells the caller why.
    """
    label = classify_region(params, attack)
    if label is RegionLabel.BOUNDARY:
        raise DegenerateGame(
            f"non-generic game at q=({attack.q1}, {attack.q2}): a continuum of equilibria exists"
        )
    m = pressured_bimatrix(params, attack)
    eqs = equilibrium_set(m)
    return select_pareto(m, eqs), eqs


def grid_centers(resolution: int) -> Tuple[Scalar, ...]:
    if resolution < 2:
        raise ValueError("resolution must be at least 2")
    return tuple(Scalar(2 * k + 1, 2 * resolution) for k in range(resolution))


def boundary_curves(params: GameParameters) -> Tuple[BoundaryCurve, ...]:
    """Parts of each condition line that actually separate regions."""
    bounds = region_boundaries(params)
    lines = bounds.lines()
    curves = []
    for ln in lines:
        seg = geometry.clip_to_square(ln)
        if seg is None:
            continue
        kept: List[Tuple[Point, Point]] = []
        for a, b in geometry.split_at(ln, seg, lines):
            if a == b:
                continue
            if _classify_point(bounds, geometry.midpoint(a, b)) is not RegionLabel.BOUNDARY:
                continue
            if kept and kept[-1][1] == a:
                kept[-1] = (kept[-1][0], b)
            else:
                kept.append((a, b))
        if kept:
            curves.append(BoundaryCurve(ln, tuple(kept)))
    return tuple(curves)


# fixed off-center sample directions, tried in order
_NUDGES = ((1, 3), (3, 1), (-1, 3), (3, -1), (1, -3), (-3, 1), (-1, -3), (-3, -1))


def _cell_label(bounds: RegionBoundaries, q: Point, half: Scalar) -> Tuple[RegionLabel, bool]:
    """Label of the cell centred at ``q``; a center on a boundary line is
    replaced by the first generic point among a few fixed in-cell offsets."""
    label = _classify_point(bounds, q)
    if label is not RegionLabel.BOUNDARY:
        return label, False
    for a, b in _NUDGES:
        p = (q[0] + half * a / 10, q[1] + half * b / 10)
        label = _classify_point(bounds, p)
        if label is not RegionLabel.BOUNDARY:
            return label, True
    return RegionLabel.BOUNDARY, False  # pragma: no cover


def region_diagram(params: GameParameters, resolution: int) -> RegionDiagram:
    centers = grid_centers(resolution)
    bounds = region_boundaries(params)
    half = Scalar(1, 2 * resolution)
    rows, nudged = [], set()
    for j, q2 in enumerate(centers):
        row = []
        for i, q1 in enumerate(centers):
            label, moved = _cell_label(bounds, (q1, q2), half)
            row.append(label)
            if moved:
                nudged.add((i, j))
        rows.append(tuple(row))
    return RegionDiagram(resolution, centers, tuple(rows), boundary_curves(params), frozenset(nudged))
