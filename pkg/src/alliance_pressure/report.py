"""Scenario files and the text, JSON, CSV and SVG renderings."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional

import yaml

from .advisor import Recommendation
from .attacker import (
    AttackerParameters,
    AttackPlan,
    DEFAULT_BACKOFF,
    RegimeAnalysis,
    attacker_payoff,
    payoff_coefficients,
)
from .equilibrium import (
    DegenerateGame,
    MixedEquilibrium,
    RegionDiagram,
    RegionLabel,
    classify_region,
    expected_payoffs,
    played_equilibrium,
    region_diagram,
)
from .game import (
    AttackLevels,
    GameError,
    GameParameters,
    Profile,
    pressured_bimatrix,
    validate_attack,
    validate_parameters,
)
from .scalar import Scalar, fmt, to_scalar


class ScenarioError(ValueError):
    """Malformed or invalid scenario document."""


SECTIONS = {
    "game": ("l", "v", "x", "f", "c", "y"),
    "attack": ("q1", "q2"),
    "attacker": ("sigma", "eps_alliance", "eps_infight"),
    "options": ("backoff_delta", "margin", "resolution"),
}


@dataclass(frozen=True)
class Options:
    backoff_delta: Scalar = DEFAULT_BACKOFF
    margin: Scalar = Scalar(0)
    resolution: int = 101


@dataclass(frozen=True)
class Scenario:
    game: GameParameters
    attack: Optional[AttackLevels] = None
    attacker: Optional[AttackerParameters] = None
    options: Options = Options()


def _section(doc: Mapping, name: str, required: bool) -> Optional[Dict[str, Any]]:
    body = doc.get(name)
    if body is None:
        if required:
            raise ScenarioError(f"missing section '{name}'")
        return None
    if not isinstance(body, Mapping):
        raise ScenarioError(f"section '{name}' must be a mapping")
    unknown = set(body) - set(SECTIONS[name])
    if unknown:
        raise ScenarioError(f"unknown key(s) in '{name}': {sorted(map(str, unknown))}")
    if name != "options":
        missing = set(SECTIONS[name]) - set(body)
        if missing:
            raise ScenarioError(f"missing key(s) in '{name}': {sorted(missing)}")
    try:
        return {k: (int(v) if k == "resolution" else to_scalar(v)) for k, v in body.items()}
    except (TypeError, ValueError) as exc:
        raise ScenarioError(f"section '{name}': {exc}") from exc


def parse_scenario(doc: Any) -> Scenario:
    if not isinstance(doc, Mapping):
        raise ScenarioError("scenario must be a mapping of sections")
    unknown = set(doc) - set(SECTIONS)
    if unknown:
        raise ScenarioError(f"unknown section(s): {sorted(map(str, unknown))}")
    try:
        game = validate_parameters(GameParameters(**_section(doc, "game", True)))
        raw_attack = _section(doc, "attack", False)
        attack = validate_attack(AttackLevels(**raw_attack)) if raw_attack else None
        raw_ap = _section(doc, "attacker", False)
        attacker = AttackerParameters.of(**raw_ap) if raw_ap else None
    except GameError as exc:
        raise ScenarioError(str(exc)) from exc
    except ValueError as exc:
        if isinstance(exc, ScenarioError):
            raise
        raise ScenarioError(str(exc)) from exc
    opts = Options(**(_section(doc, "options", False) or {}))
    if not 0 < opts.backoff_delta < 1:
        raise ScenarioError("requires 0 < backoff_delta < 1")
    if opts.margin < 0:
        raise ScenarioError("requires margin >= 0")
    if opts.resolution < 2:
        raise ScenarioError("requires resolution >= 2")
    return Scenario(game, attack, attacker, opts)


def load_scenario(path: Path) -> Scenario:
    """Read a YAML scenario; OSError propagates, content errors become ScenarioError."""
    text = Path(path).read_text()
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ScenarioError(f"cannot parse scenario: {exc}") from exc
    return parse_scenario(doc)


# -- machine-readable records -------------------------------------------------

def _pt(q: AttackLevels) -> List[str]:
    return [fmt(q.q1), fmt(q.q2)]


def _game_dict(p: GameParameters) -> Dict[str, str]:
    return {k: fmt(getattr(p, k)) for k in SECTIONS["game"]}


def _equilibrium_dict(eq) -> Dict[str, Any]:
    if isinstance(eq, MixedEquilibrium):
        return {"kind": "mixed", "p1_ally": fmt(eq.p1_ally), "p2_ally": fmt(eq.p2_ally)}
    return {"kind": "pure", "profile": eq.value}


def analysis_record(sc: Scenario) -> Dict[str, Any]:
    """Everything known about the game at the scenario's attack levels.

    Raises DegenerateGame on a non-generic attack pair.
    """
    if sc.attack is None:
        raise ScenarioError("analyze needs an 'attack' section")
    label = classify_region(sc.game, sc.attack)
    selected, eqs = played_equilibrium(sc.game, sc.attack)
    m = pressured_bimatrix(sc.game, sc.attack)
    rec: Dict[str, Any] = {
        "game": _game_dict(sc.game),
        "attack": _pt(sc.attack),
        "region": label.value,
        "bimatrix": {p.value: [fmt(u) for u in m.pair(p)] for p in Profile},
        "equilibria": [
            dict(_equilibrium_dict(e), payoffs=[fmt(u) for u in expected_payoffs(m, e)])
            for e in eqs.members()
        ],
        "played": _equilibrium_dict(selected) if selected is not None else None,
    }
    if sc.attacker is not None:
        rec["attacker"] = {k: fmt(getattr(sc.attacker, k)) for k in SECTIONS["attacker"]}
        rec["attacker_payoff"] = (
            fmt(attacker_payoff(sc.attacker, sc.game, sc.attack, selected))
            if isinstance(selected, Profile)
            else None
        )
    return rec


def plan_record(sc: Scenario, plan: AttackPlan) -> Dict[str, Any]:
    return {
        "game": _game_dict(sc.game),
        "attacker": {k: fmt(getattr(sc.attacker, k)) for k in SECTIONS["attacker"]},
        "regime": plan.regime.value,
        "supremum_value": fmt(plan.supremum_value),
        "attained": plan.attained,
        "induced_profile": plan.induced_profile.value,
        "optimum_point": _pt(plan.optimum_point) if plan.optimum_point else None,
        "argmax_points": [_pt(q) for q in plan.argmax_points],
        "backoff_point": _pt(plan.backoff_point) if plan.backoff_point else None,
        "backoff_value": fmt(plan.backoff_value),
        "backoff_delta": fmt(plan.backoff_delta),
        "region_optima": [
            {
                "region": o.region.value,
                "value": fmt(o.value),
                "argmax_points": [_pt(q) for q in o.argmax_points],
                "attained": o.attained_in_played_region,
            }
            for o in plan.region_optima
        ],
    }


def regimes_record(ra: RegimeAnalysis) -> Dict[str, Any]:
    return {
        "breakpoints": [fmt(b) for b in ra.breakpoints],
        "regimes": [r.value for r in ra.regimes],
        "region_envelopes": {
            p.value: [
                {
                    "lo": None if pc.lo is None else fmt(pc.lo),
                    "hi": None if pc.hi is None else fmt(pc.hi),
                    "slope": fmt(pc.slope),
                    "intercept": fmt(pc.intercept),
                }
                for pc in pieces
            ]
            for p, pieces in ra.per_region_value_functions.items()
        },
    }


def advice_record(rec: Recommendation, warning: Optional[str] = None) -> Dict[str, Any]:
    out = {
        "kind": rec.kind.value,
        "focal_player": rec.focal_player,
        "thresholds": [fmt(t) for t in rec.thresholds],
        "thresholds_ordered": rec.thresholds_ordered,
        "margin": fmt(rec.margin),
        "target_interval": None
        if rec.target_interval is None
        else [fmt(rec.target_interval.lo), fmt(rec.target_interval.hi)],
    }
    if warning:
        out["warning"] = warning
    return out


def to_machine(record: Mapping[str, Any]) -> str:
    return json.dumps(record, indent=2, sort_keys=True) + "\n"


def to_human(record: Mapping[str, Any], indent: int = 0) -> str:
    lines = []
    pad = "  " * indent
    for key, val in record.items():
        if isinstance(val, Mapping):
            lines.append(f"{pad}{key}:")
            lines.append(to_human(val, indent + 1).rstrip("\n"))
        elif isinstance(val, list) and val and isinstance(val[0], Mapping):
            lines.append(f"{pad}{key}:")
            for item in val:
                lines.append(f"{pad}  - " + ", ".join(f"{k}={_flat(v)}" for k, v in item.items()))
        else:
            lines.append(f"{pad}{key}: {_flat(val)}")
    return "\n".join(lines) + "\n"


def _flat(v: Any) -> str:
    if v is None:
        return "-"
    if isinstance(v, list):
        return "(" + ", ".join(_flat(x) for x in v) + ")"
    return str(v)


# -- sweep --------------------------------------------------------------------

CSV_HEADER = ["q1", "q2", "region", "p1_payoff", "p2_payoff", "attacker_payoff"]


def export_sweep_csv(
    params: GameParameters, attacker_params: Optional[AttackerParameters], resolution: int
) -> str:
    """One row per cell center, rows along q2 outermost like the diagram.

    The region column is the diagram's cell label. Payoffs are those of the
    equilibrium played at the center and are left empty where none is
    selected, including centers that sit exactly on a boundary line.
    """
    diagram = region_diagram(params, resolution)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for j, q2 in enumerate(diagram.centers):
        for i, q1 in enumerate(diagram.centers):
            label = diagram.label_at(i, j)
            row = [fmt(q1), fmt(q2), label.value, "", "", ""]
            attack = AttackLevels(q1, q2)
            try:
                selected, _ = played_equilibrium(params, attack)
            except DegenerateGame:
                # center on a boundary line: the cell keeps its label, payoffs stay empty
                selected = None
            if selected is not None:
                m = pressured_bimatrix(params, attack)
                u1, u2 = expected_payoffs(m, selected)
                row[3], row[4] = fmt(u1), fmt(u2)
                if attacker_params is not None and isinstance(selected, Profile):
                    row[5] = fmt(attacker_payoff(attacker_params, params, attack, selected))
            w.writerow(row)
    return buf.getvalue()


# -- SVG ----------------------------------------------------------------------

COLORS = {
    RegionLabel.AA: "#7fc97f",
    RegionLabel.FF: "#f0027f",
    RegionLabel.AF: "#386cb0",
    RegionLabel.FA: "#fdc086",
    RegionLabel.MULTI: "#beaed4",
    RegionLabel.AF_FA: "#bf5b17",
    RegionLabel.BOUNDARY: "#666666",
}

_X0, _Y0, _SIDE = 100, 900, 800


def _sx(q: Scalar) -> str:
    return f"{_X0 + float(q) * _SIDE:.3f}"


def _sy(q: Scalar) -> str:
    return f"{_Y0 - float(q) * _SIDE:.3f}"


def payoff_expression(a1: Scalar, a2: Scalar) -> str:
    """Linear form like ``4q1+4q2`` or ``7q2-3q1`` (positive terms first)."""
    terms = [(a, n) for a, n in ((a1, "q1"), (a2, "q2")) if a != 0]
    if not terms:
        return "0"
    terms.sort(key=lambda t: t[0] < 0)
    out = ""
    for k, (a, name) in enumerate(terms):
        mag = abs(a)
        coef = "" if mag == 1 else (str(mag) if mag.denominator == 1 else f"({mag})")
        sign = "-" if a < 0 else ("+" if k else "")
        out += f"{sign}{coef}{name}"
    return out


def region_annotations(
    params: GameParameters, ap: AttackerParameters, diagram: RegionDiagram
) -> Dict[RegionLabel, str]:
    """Attacker payoff expression for each label class whose cells pick a pure profile."""
    out: Dict[RegionLabel, str] = {}
    d = params.l - ap.sigma
    for j, q2 in enumerate(diagram.centers):
        for i, q1 in enumerate(diagram.centers):
            label = diagram.label_at(i, j)
            if label in out or label is RegionLabel.BOUNDARY:
                continue
            try:
                selected, _ = played_equilibrium(params, AttackLevels(q1, q2))
            except DegenerateGame:  # center on a boundary line; another cell of the class will do
                continue
            if isinstance(selected, Profile):
                out[label] = payoff_expression(
                    *payoff_coefficients(selected, d, params.v, ap.eps_alliance, ap.eps_infight)
                )
    return out


def render_region_svg(diagram: RegionDiagram, annotations: Optional[Mapping[RegionLabel, str]] = None) -> str:
    n = diagram.resolution
    cell = Scalar(1, n)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 1000 1000" width="1000" height="1000">',
        '<rect x="0" y="0" width="1000" height="1000" fill="white"/>',
        '<g id="cells" stroke="none">',
    ]
    for j in range(n):
        for i in range(n):
            lab = diagram.label_at(i, j)
            out.append(
                f'<rect class="cell" data-label="{lab.value}" x="{_sx(i * cell)}" y="{_sy((j + 1) * cell)}" '
                f'width="{_SIDE / n:.3f}" height="{_SIDE / n:.3f}" fill="{COLORS[lab]}"/>'
            )
    out.append("</g>")
    out.append('<g id="boundaries" stroke="black" stroke-width="3">')
    for curve in diagram.boundary_curves:
        for a, b in curve.segments:
            out.append(
                f'<line class="boundary" data-name="{curve.line.name}" x1="{_sx(a[0])}" y1="{_sy(a[1])}" '
                f'x2="{_sx(b[0])}" y2="{_sy(b[1])}"/>'
            )
    out.append("</g>")
    out.append('<g id="axes" stroke="black" stroke-width="2" font-family="sans-serif" font-size="24">')
    out.append(f'<line x1="{_X0}" y1="{_Y0}" x2="{_X0 + _SIDE}" y2="{_Y0}"/>')
    out.append(f'<line x1="{_X0}" y1="{_Y0}" x2="{_X0}" y2="{_Y0 - _SIDE}"/>')
    for k in range(6):
        t = Scalar(k, 5)
        tick = f"{float(t):.1f}"
        out.append(f'<line x1="{_sx(t)}" y1="{_Y0}" x2="{_sx(t)}" y2="{_Y0 + 10}"/>')
        out.append(f'<text class="tick" x="{_sx(t)}" y="{_Y0 + 40}" text-anchor="middle" stroke="none">{tick}</text>')
        out.append(f'<line x1="{_X0 - 10}" y1="{_sy(t)}" x2="{_X0}" y2="{_sy(t)}"/>')
        out.append(f'<text class="tick" x="{_X0 - 20}" y="{_sy(t)}" text-anchor="end" '
                   f'dominant-baseline="middle" stroke="none">{tick}</text>')
    out.append(f'<text class="axis-label" x="{_X0 + _SIDE // 2}" y="{_Y0 + 80}" text-anchor="middle" stroke="none">q1</text>')
    out.append(f'<text class="axis-label" x="{_X0 - 70}" y="{_Y0 - _SIDE // 2}" text-anchor="middle" stroke="none">q2</text>')
    out.append("</g>")

    out.append('<g id="labels" font-family="sans-serif" font-size="28" text-anchor="middle">')
    for lab in RegionLabel:
        pts = [(diagram.centers[i], diagram.centers[j]) for j in range(n) for i in range(n)
               if diagram.label_at(i, j) is lab]
        if not pts or lab is RegionLabel.BOUNDARY:
            continue
        cx = sum(p[0] for p in pts) / len(pts)
        cy = sum(p[1] for p in pts) / len(pts)
        out.append(f'<text class="region-label" data-label="{lab.value}" x="{_sx(cx)}" y="{_sy(cy)}">{lab.value}</text>')
        if annotations and lab in annotations:
            out.append(
                f'<text class="annotation" data-label="{lab.value}" x="{_sx(cx)}" '
                f'y="{float(_sy(cy)) + 30:.3f}" font-size="22">{annotations[lab]}</text>'
            )
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
