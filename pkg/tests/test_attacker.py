from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from alliance_pressure import (
    AttackerParameters,
    AttackLevels,
    DegenerateGame,
    Profile,
    Regime,
    RegionLabel,
    attacker_payoff,
    classify_region,
    optimize_attack,
    played_equilibrium,
    regime_analysis,
)
from alliance_pressure.attacker import DegenerateObjective, PlayedMap, region_optima

from conftest import attack_levels, game_params


def pts(*pairs):
    return tuple(AttackLevels.of(a, b) for a, b in pairs)


@pytest.mark.parametrize(
    "l, point, profile, expected",
    [
        (8, (1, 1), Profile.AA, F(8)),
        (8, ("3/5", "39/85"), Profile.FF, F(108, 17)),
        (5, ("3/5", "39/85"), Profile.AF, F(24, 17)),
        (5, ("3/5", "39/85"), Profile.FF, F(54, 17)),
    ],
)
def test_payoff_table_values(example, attacker, l, point, profile, expected):
    assert attacker_payoff(attacker, example.with_l(l), AttackLevels.of(*point), profile) == expected


def test_alliance_surcharge_and_infight_discount(example):
    ap = AttackerParameters.of(3, 1, 2)
    q = AttackLevels.of("1/2", "1/4")
    assert attacker_payoff(ap, example, q, Profile.AA) == (8 - 3 - 1) * F(3, 4)
    assert attacker_payoff(ap, example, q, Profile.FF) == (8 - 3 + 2) * F(3, 4)
    assert attacker_payoff(ap, example, q, Profile.AF) == 5 * F(3, 4) + 5 * (F(1, 4) - F(1, 2))


@given(game_params(), st.sampled_from(list(Profile)))
def test_zero_attack_zero_payoff(p, profile):
    assert attacker_payoff(AttackerParameters.of(1, 1, 1), p, AttackLevels.of(0, 0), profile) == 0


@given(game_params(), st.sampled_from(list(Profile)), attack_levels(), attack_levels())
def test_payoff_affine(p, profile, a, b):
    ap = AttackerParameters.of(2, 1, 1)
    mid = AttackLevels((a.q1 + b.q1) / 2, (a.q2 + b.q2) / 2)
    fa, fb, fm = (attacker_payoff(ap, p, x, profile) for x in (a, b, mid))
    assert fm == (fa + fb) / 2


def test_region_optima_table(example):
    pmap = PlayedMap(example)
    for l, expect in {
        8: {
            Profile.AA: (F(8), pts((1, 1))),
            Profile.FF: (F(108, 17), pts(("39/85", "3/5"), ("3/5", "39/85"))),
            Profile.AF: (F(90, 17), pts((1, "9/17"))),
            Profile.FA: (F(90, 17), pts(("9/17", 1))),
        },
        5: {
            Profile.AA: (F(2), pts((1, 1))),
            Profile.FF: (F(54, 17), pts(("39/85", "3/5"), ("3/5", "39/85"))),
            Profile.AF: (F(24, 17), pts(("3/5", "39/85"))),
            Profile.FA: (F(24, 17), pts(("39/85", "3/5"))),
        },
    }.items():
        got = {o.region: (o.value, o.argmax_points) for o in region_optima(pmap, F(l - 3), F(1), F(1))}
        assert got == expect


def test_plan_high_value(example, attacker):
    plan = optimize_attack(example, attacker)
    assert plan.regime is Regime.FORCE_ALLIANCE
    assert plan.attained and plan.optimum_point == AttackLevels.of(1, 1)
    assert plan.supremum_value == 8 and plan.induced_profile is Profile.AA
    assert plan.backoff_point is None


def test_plan_low_value(example, attacker):
    plan = optimize_attack(example.with_l(5), attacker)
    assert plan.regime is Regime.SPLIT_ALLIANCE
    assert plan.supremum_value == F(54, 17) and not plan.attained
    assert plan.optimum_point is None and plan.induced_profile is Profile.FF
    bp = plan.backoff_point
    assert classify_region(example, bp) is RegionLabel.FF
    assert 0 < plan.supremum_value - plan.backoff_value <= 6 * plan.backoff_delta
    # mirror tie broken towards the lexicographically smaller maximiser
    assert abs(bp.q1 - F(39, 85)) <= plan.backoff_delta and abs(bp.q2 - F(3, 5)) <= plan.backoff_delta


def test_plan_no_attack(example, attacker):
    plan = optimize_attack(example.with_l(1), attacker)
    assert plan.regime is Regime.NO_ATTACK
    assert plan.supremum_value == 0 and plan.optimum_point == AttackLevels.of(0, 0)


def test_backoff_delta_validated(example, attacker):
    for bad in (0, 1, "-1/10"):
        with pytest.raises(ValueError):
            optimize_attack(example, attacker, bad)


def test_backoff_converges_monotonically(example, attacker):
    gaps = []
    for delta in ("1/10", "1/100", "1/1000"):
        plan = optimize_attack(example.with_l(5), attacker, delta)
        assert classify_region(example, plan.backoff_point) is RegionLabel.FF
        gaps.append(plan.supremum_value - plan.backoff_value)
    assert gaps[0] > gaps[1] > gaps[2] > 0


def test_regime_thresholds(example):
    ra = regime_analysis(example, 1, 1)
    assert ra.breakpoints == (F(-1), F(13, 4))
    assert ra.regimes == (Regime.NO_ATTACK, Regime.SPLIT_ALLIANCE, Regime.FORCE_ALLIANCE)
    # force-alliance threshold: AA at (1,1) meets the FF supremum at (3/5, 39/85)
    d = F(13, 4)
    assert 2 * (d - 1) == F(18, 17) * (d + 1)
    ff = ra.per_region_value_functions[Profile.FF][-1]
    assert (ff.slope, ff.intercept) == (F(18, 17), F(18, 17))


def test_regime_matches_sigma_sweep(example, attacker):
    ra = regime_analysis(example, 1, 1)
    pmap = PlayedMap(example)
    from alliance_pressure.attacker import plan_from_map
    seen = set()
    for k in range(50):
        sigma = F(k * 12, 49) + F(1, 97)  # d = 8 - sigma spans all three regimes
        regime = plan_from_map(pmap, AttackerParameters(sigma, F(1), F(1)), example.l).regime
        assert regime is ra.regime_at(example.l - sigma)
        seen.add(regime)
    assert seen == set(Regime)


def brute_supremum(p, ap, n):
    best = F(0)
    for i in range(n + 1):
        for j in range(n + 1):
            a = AttackLevels(F(i, n), F(j, n))
            try:
                sel, _ = played_equilibrium(p, a)
            except DegenerateGame:
                continue
            if isinstance(sel, Profile):
                best = max(best, attacker_payoff(ap, p, a, sel))
    return best


@pytest.mark.parametrize("l", [8, 5, 3, F(9, 2)])
def test_grid_search_never_beats_plan(example, attacker, l):
    p = example.with_l(l)
    plan = optimize_attack(p, attacker)
    found = brute_supremum(p, attacker, 60)
    assert found <= plan.supremum_value
    # a fine grid gets close to the supremum
    assert plan.supremum_value - found <= F(1, 5)


@settings(max_examples=25, deadline=None)
@given(game_params(), st.fractions(0, 10, max_denominator=4), st.fractions(0, 3, max_denominator=4))
def test_plan_dominates_grid_random(p, sigma, eps):
    ap = AttackerParameters.of(sigma, eps, eps)
    try:
        plan = optimize_attack(p, ap)
    except DegenerateObjective:
        return
    assert brute_supremum(p, ap, 12) <= plan.supremum_value
    if plan.attained and plan.optimum_point is not None:
        sel, _ = played_equilibrium(p, plan.optimum_point)
        assert attacker_payoff(ap, p, plan.optimum_point, sel) == plan.supremum_value
    if plan.backoff_point is not None:
        sel, _ = played_equilibrium(p, plan.backoff_point)
        assert sel is plan.induced_profile
        assert plan.backoff_value < plan.supremum_value


def test_mirror_tie_between_asymmetric_profiles_is_reported():
    # AF and FA are mirror images; if they were the best, the plan must refuse
    from alliance_pressure.attacker import RegionOptimum, _decide
    opt = [
        RegionOptimum(Profile.AF, F(3), pts((1, 0)), True),
        RegionOptimum(Profile.FA, F(3), pts((0, 1)), True),
        RegionOptimum(Profile.FF, F(1), pts((0, 0)), True),
    ]
    with pytest.raises(DegenerateObjective):
        _decide(opt)
