from fractions import Fraction as F

import pytest
from hypothesis import given, settings

from alliance_pressure import (
    AttackLevels,
    DegenerateGame,
    MixedEquilibrium,
    Profile,
    RegionLabel,
    classify_region,
    mixed_equilibrium,
    played_equilibrium,
    pressured_bimatrix,
    pure_equilibria,
    region_boundaries,
    region_diagram,
)
from alliance_pressure.equilibrium import (
    LABEL_PROFILES,
    equilibrium_set,
    expected_payoffs,
    dominates,
    grid_centers,
)
from alliance_pressure.game import GameParameters

from conftest import attack_levels, game_params


def q(a, b):
    return AttackLevels.of(a, b)


def closed_form_mixed(q1, q2):
    """Closed-form Ally probabilities for the worked example."""
    return (6 - 10 * q2) / (7 * q2 - 3 * q1), (6 - 10 * q1) / (7 * q1 - 3 * q2)


def residuals(m, eq):
    """Each player's payoff(Ally) - payoff(Fight) against the opponent's mix."""
    p, r = eq.p1_ally, eq.p2_ally
    p1 = r * (m.payoff(Profile.AA, 1) - m.payoff(Profile.FA, 1)) + (1 - r) * (
        m.payoff(Profile.AF, 1) - m.payoff(Profile.FF, 1))
    p2 = p * (m.payoff(Profile.AA, 2) - m.payoff(Profile.AF, 2)) + (1 - p) * (
        m.payoff(Profile.FA, 2) - m.payoff(Profile.FF, 2))
    return p1, p2


@pytest.mark.parametrize(
    "point, expected",
    [((0, 0), [Profile.FF]), ((1, 1), [Profile.AA]), (("1/2", "1/2"), [Profile.AA, Profile.FF])],
)
def test_pure_equilibria(example, point, expected):
    assert pure_equilibria(pressured_bimatrix(example, q(*point))) == expected


def test_mixed_examples(example):
    m = pressured_bimatrix(example, q("1/2", "1/2"))
    assert mixed_equilibrium(m) == MixedEquilibrium(F(1, 2), F(1, 2))
    assert closed_form_mixed(F(1, 2), F(1, 2)) == (F(1, 2), F(1, 2))

    m = pressured_bimatrix(example, q("1/2", "11/20"))
    eq = mixed_equilibrium(m)
    assert (eq.p1_ally, eq.p2_ally) == (F(10, 47), F(20, 37)) == closed_form_mixed(F(1, 2), F(11, 20))
    assert residuals(m, eq) == (0, 0)

    assert mixed_equilibrium(pressured_bimatrix(example, q(1, 1))) is None


def test_mixed_degenerate_when_player_always_indifferent():
    # v = f would be needed for the FF/AF tie at q = 0; build the bimatrix directly
    from alliance_pressure.game import Bimatrix
    m = Bimatrix.from_dict({Profile.AA: (1, 1), Profile.AF: (1, 0), Profile.FA: (1, 0), Profile.FF: (1, 1)})
    with pytest.raises(DegenerateGame):
        mixed_equilibrium(m)
    assert equilibrium_set(m).degenerate


def test_region_boundaries_example(example):
    b = region_boundaries(example)
    assert b.ff_threshold == F(3, 5)
    # q1 >= (3 q2 + 6)/17 and q2 >= (3 q1 + 6)/17
    for other in (F(0), F(1, 3), F(7, 10), F(1)):
        assert b.aa_bound(1, other) == (3 * other + 6) / 17
        assert b.aa_bound(2, other) == (3 * other + 6) / 17
    assert b.aa_line_1.a > 0 and b.aa_line_2.b > 0


def test_region_boundaries_limits():
    k = F(1, 1000)
    b = region_boundaries(GameParameters.from_values(l=8, v=5, x=5 - k, f=2, c=3, y=2))
    assert b.aa_bound(1, F(1, 2)) == (2 * k + 3 * F(1, 2)) / (10 + 4 + 3)
    b = region_boundaries(GameParameters.from_values(l=8, v=5, x=2, f=5 - k, c=3, y=2))
    assert b.ff_threshold == k / 5


@pytest.mark.parametrize(
    "point, label",
    [
        (("1/5", "7/10"), RegionLabel.FA),
        (("7/10", "1/5"), RegionLabel.AF),
        (("1/2", "1/2"), RegionLabel.MULTI),
        (("3/5", "39/85"), RegionLabel.BOUNDARY),
        (("39/85", "3/5"), RegionLabel.BOUNDARY),
        ((0, 0), RegionLabel.FF),
        ((1, 1), RegionLabel.AA),
        (("3/5", "1/10"), RegionLabel.BOUNDARY),
        (("3/5", "9/10"), RegionLabel.AA),  # on q1 = 3/5 but no tie at an equilibrium
    ],
)
def test_classify_examples(example, point, label):
    assert classify_region(example, q(*point)) is label


def test_played_examples(example):
    sel, eqs = played_equilibrium(example, q("1/2", "1/2"))
    assert sel is Profile.AA
    assert set(eqs.pure) == {Profile.AA, Profile.FF} and eqs.mixed is not None
    sel, eqs = played_equilibrium(example, q(0, 0))
    assert sel is Profile.FF and not eqs.multiple
    with pytest.raises(DegenerateGame):
        played_equilibrium(example, q("3/5", "39/85"))


def test_alliance_dominates_mixed_in_overlap(example):
    # verified, not assumed: wherever both AA and the mixed point exist, AA is better for both
    for q1 in grid_centers(41):
        for q2 in grid_centers(41):
            a = q(q1, q2)
            if classify_region(example, a) is not RegionLabel.MULTI:
                continue
            m = pressured_bimatrix(example, a)
            mixed = mixed_equilibrium(m)
            assert dominates(m.pair(Profile.AA), expected_payoffs(m, mixed))


def test_diagram_example(example):
    d = region_diagram(example, 2)
    assert d.label_at(0, 0) is RegionLabel.FF
    assert d.label_at(1, 1) is RegionLabel.AA
    assert d.label_at(1, 0) is RegionLabel.AF
    assert d.label_at(0, 1) is RegionLabel.FA
    d = region_diagram(example, 11)
    assert d.centers[-1] == F(21, 22)
    assert d.label_at(10, 10) is RegionLabel.AA
    assert len(d.boundary_curves) == 4
    names = sorted(c.line.name for c in d.boundary_curves)
    assert names == ["aa1", "aa2", "q1=ff", "q2=ff"]
    ends = {c.line.name: c.segments for c in d.boundary_curves}
    assert ends["aa1"] == (((F(3, 7), F(3, 7)), (F(9, 17), 1)),)
    assert ends["q1=ff"] == (((F(3, 5), 0), (F(3, 5), F(3, 5))),)


def test_diagram_resolution_checked(example):
    with pytest.raises(ValueError):
        region_diagram(example, 1)


# -- properties -------------------------------------------------------------

def implied(label, bounds_q, bounds):
    if label is RegionLabel.BOUNDARY:
        return {p for p, s in bounds.conditions(bounds_q).items() if all(x >= 0 for x in s)}
    return set(LABEL_PROFILES[label])


@settings(max_examples=300)
@given(game_params(), attack_levels())
def test_closed_form_matches_best_responses(p, a):
    label = classify_region(p, a)
    pure = set(pure_equilibria(pressured_bimatrix(p, a)))
    assert pure  # existence
    assert implied(label, (a.q1, a.q2), region_boundaries(p)) == pure


@settings(max_examples=200)
@given(game_params(), attack_levels())
def test_boundary_iff_tied_equilibrium(p, a):
    m = pressured_bimatrix(p, a)
    tied = any(
        m.payoff(e, i) == m.payoff(e.deviate(i), i) for e in pure_equilibria(m) for i in (1, 2)
    )
    assert (classify_region(p, a) is RegionLabel.BOUNDARY) == tied


@settings(max_examples=200)
@given(game_params(), attack_levels())
def test_mixed_indifference(p, a):
    m = pressured_bimatrix(p, a)
    try:
        eq = mixed_equilibrium(m)
    except DegenerateGame:
        return
    if eq is not None:
        assert 0 < eq.p1_ally < 1 and 0 < eq.p2_ally < 1
        assert residuals(m, eq) == (0, 0)


@given(game_params(), attack_levels())
def test_diagonal_symmetry(p, a):
    d = AttackLevels(a.q1, a.q1)
    # AF+FA is symmetric and may occur on the diagonal; the one-sided labels may not
    assert classify_region(p, d) not in (RegionLabel.AF, RegionLabel.FA)
    try:
        eq = mixed_equilibrium(pressured_bimatrix(p, d))
    except DegenerateGame:
        return
    if eq is not None:
        assert eq.p1_ally == eq.p2_ally


@settings(max_examples=200)
@given(game_params(), attack_levels())
def test_pareto_selection(p, a):
    if classify_region(p, a) is RegionLabel.BOUNDARY:
        return
    sel, eqs = played_equilibrium(p, a)
    if sel is None:
        assert eqs.multiple
        return
    m = pressured_bimatrix(p, a)
    others = [e for e in eqs.pure if e != sel]
    for e in others:
        assert dominates(expected_payoffs(m, sel), m.pair(e))


def test_asymmetric_overlap_label():
    # cheap alliance-exit costs and heavy attack costs let AF and FA coexist
    p = GameParameters.from_values(l=8, v=5, x=0, f=4, c=20, y=0)
    a = q("1/2", "1/2")
    assert classify_region(p, a) is RegionLabel.AF_FA
    assert set(pure_equilibria(pressured_bimatrix(p, a))) == {Profile.AF, Profile.FA}
    sel, eqs = played_equilibrium(p, a)
    assert sel is None and eqs.multiple


def test_centers_on_boundary_lines_are_nudged(example):
    # at resolution 101 eight centers lie exactly on the AA lines, e.g. 17*87 - 3*89 = 6*202
    d = region_diagram(example, 101)
    assert (44, 43) in d.nudged and len(d.nudged) == 8
    center = AttackLevels(d.centers[44], d.centers[43])
    assert classify_region(example, center) is RegionLabel.BOUNDARY
    assert RegionLabel.BOUNDARY not in d.labels()
    for i, j in d.nudged:
        assert d.label_at(i, j) in (RegionLabel.MULTI, RegionLabel.FF, RegionLabel.AA, RegionLabel.FA,
                                    RegionLabel.AF)
