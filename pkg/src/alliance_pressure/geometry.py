"""Exact line arithmetic on the unit square."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cmp_to_key
from typing import Iterable, List, Optional, Sequence, Tuple

from .scalar import Scalar

Point = Tuple[Scalar, Scalar]

ZERO = Scalar(0)
ONE = Scalar(1)


@dataclass(frozen=True)
class Line:
    """The set ``a*q1 + b*q2 = rhs``; ``value`` is signed, not normalized."""

    a: Scalar
    b: Scalar
    rhs: Scalar
    name: str = ""

    def value(self, p: Point) -> Scalar:
        return self.a * p[0] + self.b * p[1] - self.rhs

    def contains(self, p: Point) -> bool:
        return self.value(p) == 0

    def direction(self) -> Point:
        return (self.b, -self.a)

    def same_as(self, other: "Line") -> bool:
        # proportional coefficients
        return (
            self.a * other.b == self.b * other.a
            and self.a * other.rhs == self.rhs * other.a
            and self.b * other.rhs == self.rhs * other.b
        )


def square_edges() -> List[Line]:
    return [
        Line(ONE, ZERO, ZERO, "q1=0"),
        Line(ONE, ZERO, ONE, "q1=1"),
        Line(ZERO, ONE, ZERO, "q2=0"),
        Line(ZERO, ONE, ONE, "q2=1"),
    ]


def in_square(p: Point) -> bool:
    return 0 <= p[0] <= 1 and 0 <= p[1] <= 1


def strictly_in_square(p: Point) -> bool:
    return 0 < p[0] < 1 and 0 < p[1] < 1


def intersect(m: Line, n: Line) -> Optional[Point]:
    det = m.a * n.b - m.b * n.a
    if det == 0:
        return None
    return ((m.rhs * n.b - m.b * n.rhs) / det, (m.a * n.rhs - m.rhs * n.a) / det)


def clip_to_square(line: Line) -> Optional[Tuple[Point, Point]]:
    """Segment of ``line`` inside the closed unit square, or None."""
    pts = sorted({p for e in square_edges() if (p := intersect(line, e)) is not None and in_square(p)})
    if len(pts) < 2:
        return None
    return pts[0], pts[-1]


def vertices(lines: Sequence[Line]) -> List[Point]:
    """All pairwise intersections inside the closed square, sorted."""
    found = set()
    for i, m in enumerate(lines):
        for n in lines[i + 1:]:
            p = intersect(m, n)
            if p is not None and in_square(p):
                found.add(p)
    return sorted(found)


def _angle_cmp(u: Point, w: Point) -> int:
    def half(p: Point) -> int:
        return 0 if (p[1] > 0 or (p[1] == 0 and p[0] > 0)) else 1

    hu, hw = half(u), half(w)
    if hu != hw:
        return hu - hw
    cross = u[0] * w[1] - u[1] * w[0]
    return -1 if cross > 0 else (1 if cross < 0 else 0)


def probes_around(p: Point, lines: Sequence[Line]) -> List[Point]:
    """One point inside each open face of the arrangement touching ``p``.

    Faces are found from the angular sectors cut by the lines through
    ``p``; the step is short enough not to cross any other line. Points
    outside the unit square are dropped.
    """
    through = [ln for ln in lines if ln.contains(p)]
    others = [ln for ln in lines if not ln.contains(p)]
    dirs: List[Point] = []
    for ln in through:
        d = ln.direction()
        for s in (d, (-d[0], -d[1])):
            if not any(_angle_cmp(s, t) == 0 for t in dirs):
                dirs.append(s)
    if len(dirs) < 2:
        dirs = [(ONE, ZERO), (ZERO, ONE), (-ONE, ZERO), (ZERO, -ONE)] if not dirs else dirs
    dirs.sort(key=cmp_to_key(_angle_cmp))
    out = []
    for i, d in enumerate(dirs):
        e = dirs[(i + 1) % len(dirs)]
        bis = (d[0] + e[0], d[1] + e[1])
        if bis == (0, 0):
            bis = (-d[1], d[0])
        scale = max(abs(bis[0]), abs(bis[1]))
        bis = (bis[0] / scale, bis[1] / scale)
        rho = ONE
        for ln in others:
            g = ln.value(p)
            rate = ln.a * bis[0] + ln.b * bis[1]
            if rate != 0 and (g > 0) != (rate > 0):
                rho = min(rho, abs(g / rate) / 2)
        q = (p[0] + rho * bis[0], p[1] + rho * bis[1])
        if strictly_in_square(q):
            out.append(q)
    return out


def split_at(line: Line, segment: Tuple[Point, Point], cuts: Iterable[Line]) -> List[Tuple[Point, Point]]:
    """Split a segment of ``line`` at its crossings with ``cuts``."""
    a, b = segment
    pts = {a, b}
    for c in cuts:
        if c.same_as(line):
            continue
        p = intersect(line, c)
        if p is not None and min(a, b) <= p <= max(a, b):
            pts.add(p)
    ordered = sorted(pts)
    return list(zip(ordered, ordered[1:]))


def midpoint(a: Point, b: Point) -> Point:
    return ((a[0] + b[0]) / 2, (a[1] + b[1]) / 2)
