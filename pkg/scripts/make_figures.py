"""Write region diagrams (SVG) and sweep tables (CSV) for the high and low market-value examples."""

import argparse
from pathlib import Path

from alliance_pressure import WORKED_EXAMPLE, AttackerParameters, region_diagram
from alliance_pressure.report import export_sweep_csv, region_annotations, render_region_svg


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=Path("figures"))
    ap.add_argument("--resolution", type=int, default=101)
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    attacker = AttackerParameters.of(3, 1, 1)

    for l in (8, 5):
        params = WORKED_EXAMPLE.with_l(l)
        diagram = region_diagram(params, args.resolution)
        svg = render_region_svg(diagram, region_annotations(params, attacker, diagram))
        (args.out / f"regions_l{l}.svg").write_text(svg)
        (args.out / f"sweep_l{l}.csv").write_text(export_sweep_csv(params, attacker, args.resolution))
        print(f"l={l}: {len(diagram.nudged)} nudged cells, wrote regions_l{l}.svg and sweep_l{l}.csv")


if __name__ == "__main__":
    main()
