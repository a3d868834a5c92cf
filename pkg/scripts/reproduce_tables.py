"""Print the worked-example tables: equilibria on a coarse grid, attack plans over l, regimes."""

import argparse

from alliance_pressure import (
    WORKED_EXAMPLE,
    AttackerParameters,
    AttackLevels,
    classify_region,
    optimize_attack,
    regime_analysis,
)
from alliance_pressure.equilibrium import DegenerateGame, played_equilibrium
from alliance_pressure.scalar import fmt, to_scalar


def equilibrium_table(params, steps):
    qs = [to_scalar(k) / steps for k in range(steps + 1)]
    print(f"{'q1':>6} {'q2':>6}  {'label':<9} played")
    for q2 in qs:
        for q1 in qs:
            q = AttackLevels(q1, q2)
            label = classify_region(params, q)
            try:
                sel, _ = played_equilibrium(params, q)
                played = getattr(sel, "name", str(sel))
            except DegenerateGame:
                played = "-"
            print(f"{fmt(q1):>6} {fmt(q2):>6}  {label.value:<9} {played}")


def plan_table(ap, ls):
    print(f"{'l':>4}  {'regime':<14} {'supremum':>9} attained  profile  optimum / backoff")
    for l in ls:
        plan = optimize_attack(WORKED_EXAMPLE.with_l(to_scalar(l)), ap)
        pt = plan.optimum_point or plan.backoff_point
        where = f"({fmt(pt.q1)}, {fmt(pt.q2)})" if pt else "-"
        print(f"{l:>4}  {plan.regime.value:<14} {fmt(plan.supremum_value):>9} "
              f"{str(plan.attained):<8}  {plan.induced_profile.name:<7}  {where}")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--grid", type=int, default=4, help="grid steps per axis for the equilibrium table")
    ap.add_argument("--sigma", default="3")
    ap.add_argument("--eps-alliance", default="1")
    ap.add_argument("--eps-infight", default="1")
    args = ap.parse_args()
    attacker = AttackerParameters.of(args.sigma, args.eps_alliance, args.eps_infight)

    print("# equilibria of the worked example")
    equilibrium_table(WORKED_EXAMPLE, args.grid)
    print("\n# attack plans as the market value l varies")
    plan_table(attacker, range(0, 11))
    ra = regime_analysis(WORKED_EXAMPLE, attacker.eps_alliance, attacker.eps_infight)
    print("\n# regimes in d = l - sigma")
    print("breakpoints:", ", ".join(fmt(b) for b in ra.breakpoints))
    print("regimes:    ", ", ".join(r.value for r in ra.regimes))


if __name__ == "__main__":
    main()
