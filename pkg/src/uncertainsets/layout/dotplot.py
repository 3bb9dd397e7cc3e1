from __future__ import annotations

import hashlib

from ..encode import DEFAULT_THEME, GrayscaleClass, Theme, element_value_class
from ..model import Flagged, Known, Range, SetFamily, certain_members, require_certain_membership
from .scene import Scene, SceneBuilder

LEFT = 60.0
TOP = 30.0
PLOT_H = 240.0
COL_W = 130.0
JITTER = 70.0
LANE_GAP = 36.0
DOT_R = 4.0


def jitter(element_id: str) -> float:
    """Deterministic offset in [-0.5, 0.5) derived from the element id."""
    h = int.from_bytes(hashlib.sha1(element_id.encode("utf-8")).digest()[:4], "big")
    return h / 2 ** 32 - 0.5


def layout_dotplot(family: SetFamily, attribute: str, theme: Theme = DEFAULT_THEME) -> Scene:
    schema = family.schema(attribute)
    if not schema.is_numeric:
        raise TypeError(f"dot plot needs a numeric attribute, {attribute!r} is categorical")
    require_certain_membership(family)
    lo, hi = schema.domain
    members = certain_members(family)
    elements = {e.id: e for e in family.elements}
    bottom = TOP + PLOT_H
    lane_y = bottom + LANE_GAP

    def y_of(v: float) -> float:
        return bottom - (min(max(v, lo), hi) - lo) / (hi - lo) * PLOT_H

    b = SceneBuilder()
    b.add("line", "axis", (), x1=LEFT, y1=TOP, x2=LEFT, y2=bottom, stroke=0.0, stroke_width=1.0)
    for t in range(5):
        v = lo + (hi - lo) * t / 4
        b.add("line", "tick", (), x1=LEFT - 4, y1=y_of(v), x2=LEFT, y2=y_of(v), stroke=0.0,
              stroke_width=1.0)
        b.text("tick-label", LEFT - 7, y_of(v) + 4, f"{v:g}", (), size=10, anchor="end")
    unit = f" ({schema.unit})" if schema.unit else ""
    b.text("axis-label", 8, TOP - 12, f"{attribute}{unit}", (), size=11)
    b.text("lane-label", LEFT - 7, lane_y + 4, "unknown", (), size=10, anchor="end")

    right = LEFT + max(len(family.sets), 1) * COL_W
    b.add("line", "lane-separator", (), x1=LEFT, y1=bottom + LANE_GAP / 2, x2=right,
          y2=bottom + LANE_GAP / 2, stroke=70.0, stroke_width=0.5)

    for j, s in enumerate(family.sets):
        x_mid = LEFT + (j + 0.5) * COL_W
        b.text("set-label", x_mid, lane_y + 30, s.label, (s.id,), size=12, anchor="middle")
        for e_id in sorted(members[s.id]):
            v = elements[e_id].value(attribute)
            cls = element_value_class(v, schema)
            gray = cls.lightness(theme)
            x = x_mid + jitter(e_id) * JITTER
            refs = (e_id, s.id)
            role = "dot-" + cls.value
            if cls is GrayscaleClass.UNKNOWN:
                b.add("circle", role, refs, cx=x, cy=lane_y, r=DOT_R, fill=gray)
            elif isinstance(v, Range):
                bar = gray + (100.0 - gray) / 2
                b.add("line", "range-bar", refs, x1=x, y1=y_of(v.low), x2=x, y2=y_of(v.high),
                      stroke=bar, stroke_width=3.0)
                b.add("circle", role, refs, cx=x, cy=y_of(v.midpoint), r=DOT_R, fill=gray)
            else:
                assert isinstance(v, (Known, Flagged))
                b.add("circle", role, refs, cx=x, cy=y_of(v.value), r=DOT_R, fill=gray)
            b.use("dot-" + cls.value, _CLASS_LABELS[cls], lightness=gray)
    return b.build(right + 20, lane_y + 50, "dotplot")


_CLASS_LABELS = {
    GrayscaleClass.KNOWN: "value known",
    GrayscaleClass.RANGE_KNOWN: "value within a range / doubted",
    GrayscaleClass.THRESHOLD_KNOWN: "value beyond a threshold",
    GrayscaleClass.UNKNOWN: "value unknown",
}
