"""Command-line entry point: ``alliance-pressure <command> --scenario FILE``."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from . import report
from .advisor import MarginTooLarge, Recommendation, RecommendationKind, advise, thresholds
from .attacker import DegenerateObjective, optimize_attack, regime_analysis
from .equilibrium import DegenerateGame, region_diagram
from .scalar import to_scalar

log = logging.getLogger(__name__)

EXIT_OK, EXIT_IO, EXIT_INVALID, EXIT_DEGENERATE = 0, 1, 2, 3


def _rational(text: str):
    try:
        return to_scalar(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="alliance-pressure",
        description="Two-firm alliance game under third-party pressure.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help: str, fmt: bool = True, out: bool = True) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help)
        p.add_argument("--scenario", type=Path, required=True, help="YAML scenario file")
        if out:
            p.add_argument("--out", type=Path, help="write output here instead of stdout")
        if fmt:
            p.add_argument("--format", choices=("human", "machine"), default="human")
        return p

    add("analyze", "equilibria and payoffs at the scenario's attack levels")
    p = add("attack", "optimal attack levels for the third player")
    p.add_argument("--delta", type=_rational, help="backoff step (default from scenario, else 1/1000)")
    p = add("advise", "commitment advice for one firm")
    p.add_argument("--focal", type=int, choices=(1, 2), default=1)
    p.add_argument("--margin", type=_rational, help="safety margin on the advised interval")
    add("regimes", "attacker regimes as a function of l - sigma")
    p = add("diagram", "SVG map of the equilibrium regions", fmt=False)
    p.add_argument("--resolution", type=int)
    p = add("sweep", "CSV of the played equilibrium over a grid", fmt=False)
    p.add_argument("--resolution", type=int)
    return parser


def _render(record, fmt: str) -> str:
    return report.to_machine(record) if fmt == "machine" else report.to_human(record)


def _resolution(args, sc: report.Scenario) -> int:
    n = args.resolution if args.resolution is not None else sc.options.resolution
    if n < 2:
        raise report.ScenarioError("requires resolution >= 2")
    return n


def _advice(sc: report.Scenario, focal: int, margin) -> tuple:
    try:
        return advise(sc.game, sc.attack, focal, margin), None
    except MarginTooLarge as exc:
        warning = f"{exc}; unshrunk interval {exc.interval}"
        fallback = Recommendation(
            RecommendationKind.FIGHT_NO_COMMITMENT,
            focal_player=focal,
            thresholds=thresholds(sc.game),
            margin=exc.margin,
            target_interval=exc.interval,
        )
        return fallback, warning


def run(args: argparse.Namespace) -> str:
    sc = report.load_scenario(args.scenario)
    cmd = args.command
    if cmd == "analyze":
        return _render(report.analysis_record(sc), args.format)
    if cmd == "attack":
        if sc.attacker is None:
            raise report.ScenarioError("attack needs an 'attacker' section")
        delta = args.delta if args.delta is not None else sc.options.backoff_delta
        if not 0 < delta < 1:
            raise report.ScenarioError("requires 0 < delta < 1")
        plan = optimize_attack(sc.game, sc.attacker, delta)
        return _render(report.plan_record(sc, plan), args.format)
    if cmd == "advise":
        if sc.attack is None:
            raise report.ScenarioError("advise needs an 'attack' section")
        margin = args.margin if args.margin is not None else sc.options.margin
        if margin < 0:
            raise report.ScenarioError("requires margin >= 0")
        rec, warning = _advice(sc, args.focal, margin)
        if warning:
            log.warning(warning)
        return _render(report.advice_record(rec, warning), args.format)
    if cmd == "regimes":
        if sc.attacker is None:
            raise report.ScenarioError("regimes needs an 'attacker' section")
        ra = regime_analysis(sc.game, sc.attacker.eps_alliance, sc.attacker.eps_infight)
        return _render(report.regimes_record(ra), args.format)
    if cmd == "diagram":
        diagram = region_diagram(sc.game, _resolution(args, sc))
        notes = report.region_annotations(sc.game, sc.attacker, diagram) if sc.attacker else None
        return report.render_region_svg(diagram, notes)
    if cmd == "sweep":
        return report.export_sweep_csv(sc.game, sc.attacker, _resolution(args, sc))
    raise AssertionError(cmd)  # pragma: no cover


def main(argv: Optional[List[str]] = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        text = run(args)
    except report.ScenarioError as exc:
        print(f"error: invalid scenario: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (DegenerateGame, DegenerateObjective) as exc:
        print(f"error: degenerate: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    try:
        if getattr(args, "out", None):
            args.out.write_text(text)
        else:
            sys.stdout.write(text)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
