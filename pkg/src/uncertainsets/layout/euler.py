"""Fixed circle templates for one to three sets and their exclusive region paths.

Each region is bounded by circle arcs. Arcs are found by splitting every circle
at its intersection points and classifying each piece by which circles contain
its midpoint; pieces are then chained into closed loops. Coordinates are in
SVG user space (y down), so increasing angle is the positive sweep direction.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

from .scene import num

Point = Tuple[float, float]


class UnsupportedSetCount(ValueError):
    pass


@dataclass(frozen=True)
class Circle:
    cx: float
    cy: float
    r: float

    def point(self, t: float) -> Point:
        return (self.cx + self.r * math.cos(t), self.cy + self.r * math.sin(t))

    def depth(self, p: Point) -> float:
        """Signed distance inside the circle (positive inside)."""
        return self.r - math.hypot(p[0] - self.cx, p[1] - self.cy)


@dataclass(frozen=True)
class Arc:
    circle: int
    t0: float
    t1: float  # t1 > t0 always; ``forward`` gives the traversal direction
    forward: bool

    def start(self, circles: Sequence[Circle]) -> Point:
        return circles[self.circle].point(self.t0 if self.forward else self.t1)

    def end(self, circles: Sequence[Circle]) -> Point:
        return circles[self.circle].point(self.t1 if self.forward else self.t0)


@dataclass(frozen=True)
class RegionShape:
    index_signature: Tuple[int, ...]
    loops: Tuple[Tuple[Arc, ...], ...]
    path: str
    anchor: Point


@dataclass(frozen=True)
class Template:
    width: float
    height: float
    circles: Tuple[Circle, ...]
    regions: Tuple[RegionShape, ...]
    label_points: Tuple[Point, ...]

    def region(self, index_signature: Tuple[int, ...]) -> RegionShape:
        for r in self.regions:
            if r.index_signature == index_signature:
                return r
        raise KeyError(index_signature)

    def contains(self, index_signature: Tuple[int, ...], p: Point, margin: float = 0.0) -> bool:
        for i, c in enumerate(self.circles):
            d = c.depth(p)
            if i in index_signature:
                if d < margin:
                    return False
            elif d > -margin:
                return False
        return True


_CIRCLES = {
    1: ((200.0, 160.0, 110.0),),
    2: ((150.0, 160.0, 100.0), (270.0, 160.0, 100.0)),
    3: ((150.0, 125.0, 95.0), (270.0, 125.0, 95.0), (210.0, 228.923, 95.0)),
}
_LABELS = {
    1: ((200.0, 38.0),),
    2: ((110.0, 50.0), (310.0, 50.0)),
    3: ((90.0, 22.0), (330.0, 22.0), (210.0, 342.0)),
}
_SIZE = {1: (400.0, 290.0), 2: (420.0, 290.0), 3: (420.0, 350.0)}


def _intersections(a: Circle, b: Circle) -> List[float]:
    """Angles on ``a`` where it crosses ``b``."""
    dx, dy = b.cx - a.cx, b.cy - a.cy
    d = math.hypot(dx, dy)
    if d == 0 or d >= a.r + b.r or d <= abs(a.r - b.r):
        return []
    base = math.atan2(dy, dx)
    half = math.acos((a.r * a.r + d * d - b.r * b.r) / (2 * a.r * d))
    return [(base - half) % (2 * math.pi), (base + half) % (2 * math.pi)]


def _arc_path(arcs: Sequence[Arc], circles: Sequence[Circle]) -> str:
    parts = []
    x, y = arcs[0].start(circles)
    parts.append(f"M{num(x)} {num(y)}")
    for arc in arcs:
        c = circles[arc.circle]
        span = arc.t1 - arc.t0
        sweep = 1 if arc.forward else 0
        if span > 2 * math.pi - 1e-9:  # full circle: split in two halves
            tm = arc.t0 + math.pi
            mx, my = c.point(tm)
            parts.append(f"A{num(c.r)} {num(c.r)} 0 0 {sweep} {num(mx)} {num(my)}")
            span = math.pi
        x, y = arc.end(circles)
        large = 1 if span > math.pi else 0
        parts.append(f"A{num(c.r)} {num(c.r)} 0 {large} {sweep} {num(x)} {num(y)}")
    parts.append("Z")
    return " ".join(parts)


def _chain(arcs: List[Arc], circles: Sequence[Circle]) -> List[Tuple[Arc, ...]]:
    loops, pool = [], list(arcs)
    while pool:
        loop = [pool.pop(0)]
        while True:
            ex, ey = loop[-1].end(circles)
            sx, sy = loop[0].start(circles)
            if math.hypot(ex - sx, ey - sy) < 1e-6:
                break
            for i, cand in enumerate(pool):
                cx, cy = cand.start(circles)
                if math.hypot(ex - cx, ey - cy) < 1e-6:
                    loop.append(pool.pop(i))
                    break
            else:
                raise RuntimeError("region boundary does not close")
        loops.append(tuple(loop))
    return loops


def _anchor(circles: Sequence[Circle], sig: Tuple[int, ...], width: float, height: float) -> Point:
    """Inside grid point closest to the centroid of the region's deep interior."""
    step = 4.0
    pts = []
    for gy in range(int(height / step)):
        for gx in range(int(width / step)):
            p = (gx * step, gy * step)
            if all((c.depth(p) >= 12) == (i in sig) and abs(c.depth(p)) >= 12
                   for i, c in enumerate(circles)):
                pts.append(p)
    if not pts:
        raise RuntimeError(f"region {sig} has no interior")
    mx = sum(p[0] for p in pts) / len(pts)
    my = sum(p[1] for p in pts) / len(pts)
    return min(pts, key=lambda p: ((p[0] - mx) ** 2 + (p[1] - my) ** 2, p[1], p[0]))


@lru_cache(maxsize=None)
def template(k: int) -> Template:
    if k not in _CIRCLES:
        raise UnsupportedSetCount(
            f"Euler templates cover 1 to 3 sets, got {k}; use a matrix view instead")
    circles = tuple(Circle(*c) for c in _CIRCLES[k])
    width, height = _SIZE[k]
    by_region: Dict[Tuple[int, ...], List[Arc]] = {}
    for i, c in enumerate(circles):
        cuts = sorted({round(t, 12) for j, o in enumerate(circles) if j != i
                       for t in _intersections(c, o)})
        if cuts:
            spans = [(cuts[n], cuts[n + 1] if n + 1 < len(cuts) else cuts[0] + 2 * math.pi)
                     for n in range(len(cuts))]
        else:
            spans = [(0.0, 2 * math.pi)]
        for t0, t1 in spans:
            mid = c.point((t0 + t1) / 2)
            inside = tuple(j for j, o in enumerate(circles) if j != i and o.depth(mid) > 0)
            with_i = tuple(sorted(inside + (i,)))
            by_region.setdefault(with_i, []).append(Arc(i, t0, t1, True))
            if inside:
                by_region.setdefault(inside, []).append(Arc(i, t0, t1, False))

    regions = []
    for size in range(1, k + 1):
        for sig in itertools.combinations(range(k), size):
            loops = _chain(by_region[sig], circles)
            path = " ".join(_arc_path(loop, circles) for loop in loops)
            regions.append(RegionShape(sig, tuple(loops), path, _anchor(circles, sig, width, height)))
    regions.sort(key=lambda r: r.index_signature)
    return Template(width, height, circles, tuple(regions), _LABELS[k])


def place_points(tmpl: Template, sig: Tuple[int, ...], n: int, margin: float,
                 spacing: float = 18.0) -> List[Point]:
    """``n`` deterministic grid points inside a region, nearest to its anchor first."""
    if n == 0:
        return []
    ax, ay = tmpl.region(sig).anchor
    while True:
        pts = []
        steps_x, steps_y = int(tmpl.width / spacing), int(tmpl.height / spacing)
        for gy in range(steps_y + 1):
            for gx in range(steps_x + 1):
                p = (gx * spacing + spacing / 2, gy * spacing + spacing / 2)
                if tmpl.contains(sig, p, margin):
                    pts.append(p)
        if len(pts) >= n or spacing <= 2.0:
            break
        spacing /= 1.5
    if not pts:
        pts = [tmpl.region(sig).anchor]
    pts.sort(key=lambda p: (round((p[0] - ax) ** 2 + (p[1] - ay) ** 2, 6), p[1], p[0]))
    return [pts[i % len(pts)] for i in range(n)]
