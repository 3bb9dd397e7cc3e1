from __future__ import annotations

from typing import Dict, Optional

from ..aggregate import AggregateSpec, summary_table
from ..encode import DEFAULT_THEME, Theme, certainty_to_dash, value_to_lightness
from ..model import SetFamily, expand_memberships
from .euler import UnsupportedSetCount, place_points, template
from .matrix import _value_domain, _value_legend, format_value
from .scene import Scene, SceneBuilder

MODES = ("membership", "aggregate", "aggregate_textured")
DOT_R = 4.0
DISCLAIMER = "Note: all data values may be incorrect (uncertainty throughout the data)."


def _region_role(signature) -> str:
    return "region:{" + ",".join(signature) + "}"


def layout_euler(family: SetFamily, mode: str = "membership", spec: Optional[AggregateSpec] = None,
                 theme: Theme = DEFAULT_THEME) -> Scene:
    """Fixed-template Euler diagram for one to three sets.

    Region geometry depends only on the number of sets, never on data values
    or certainties; those only change fills, dashes and overlays.
    """
    if mode not in MODES:
        raise ValueError(f"unknown Euler mode {mode!r}")
    k = len(family.sets)
    if not 1 <= k <= 3:
        raise UnsupportedSetCount(
            f"Euler view supports 1 to 3 sets, got {k}; use the matrix views instead")
    if mode != "membership" and spec is None:
        raise ValueError(f"mode {mode!r} needs an aggregate spec")

    tmpl = template(k)
    ids = family.set_ids
    b = SceneBuilder()
    cells = {}
    if mode != "membership":
        cells = {c.scope: c for c in summary_table(family, spec, scope="regions")}
        lo, hi = _value_domain(family, spec)

    for shape in tmpl.regions:
        sig = tuple(ids[i] for i in shape.index_signature)
        role = _region_role(sig)
        if mode == "membership":
            b.add("path", role, sig, d=shape.path, fill=97.0)
            continue
        cell = cells.get(sig)
        dash = None
        if cell is not None and mode == "aggregate":
            dash = certainty_to_dash(cell.certainty, theme).dasharray(theme.dash_min_on)
        if cell is None or cell.value is None:
            b.add("path", role, sig, d=shape.path, no_data=True,
                  stroke=theme.lightness_dark, stroke_width=1.5, dash=dash)
            b.use("no-data", "no data")
        else:
            b.add("path", role, sig, d=shape.path,
                  fill=value_to_lightness(cell.value, lo, hi, theme),
                  stroke=theme.lightness_dark, stroke_width=1.5, dash=dash)

    if mode == "membership":
        _place_elements(b, family, tmpl, theme)
        for j, c in enumerate(tmpl.circles):
            b.add("circle", "set-outline", (ids[j],), cx=c.cx, cy=c.cy, r=c.r,
                  stroke=theme.lightness_dark, stroke_width=1.5)
    else:
        if mode == "aggregate_textured":
            for shape in tmpl.regions:
                sig = tuple(ids[i] for i in shape.index_signature)
                b.add("hatch", "texture:{" + ",".join(sig) + "}", sig, d=shape.path,
                      stroke=theme.hatch_lightness)
            b.use("texture", "texture: all data uncertain", angle=theme.hatch_angle,
                  spacing=theme.hatch_spacing, lightness=theme.hatch_lightness)
        for shape in tmpl.regions:
            sig = tuple(ids[i] for i in shape.index_signature)
            cell = cells.get(sig)
            if cell is not None:
                ax, ay = shape.anchor
                b.text("region-label", ax, ay + 4, format_value(cell.value, spec.kind), sig,
                       size=10, anchor="middle")
        b.use("value-lightness", _value_legend(spec), lo=lo, hi=hi)
        if mode == "aggregate":
            b.use("certainty-dash", f"certainty ({spec.certainty_rule.value})")

    for j, (x, y) in enumerate(tmpl.label_points):
        b.text("set-label", x, y, family.sets[j].label, (ids[j],), size=13, anchor="middle")

    height = tmpl.height
    if mode == "membership" and _outside_count(family):
        height += 40
    if mode == "aggregate_textured":
        b.text("disclaimer", 10, height + 14, DISCLAIMER, (), size=11)
        height += 24
    return b.build(tmpl.width, height, "euler")


def _outside_count(family: SetFamily) -> int:
    members = {m.element for m in family.memberships if m.status.is_member}
    return sum(1 for e in family.elements if e.id not in members)


def _place_elements(b: SceneBuilder, family: SetFamily, tmpl, theme: Theme) -> None:
    ids = family.set_ids
    index = {s: i for i, s in enumerate(ids)}
    signature: Dict[str, list] = {e: [] for e in family.element_ids}
    vague = set()
    for e_id, s_id, st in expand_memberships(family):
        if st.is_member:
            signature[e_id].append(s_id)
        elif st.is_uncertain:
            vague.add(e_id)
    groups: Dict[tuple, list] = {}
    for e_id in family.element_ids:
        groups.setdefault(tuple(signature[e_id]), []).append(e_id)

    for sig, members in sorted(groups.items()):
        if sig:
            idx = tuple(sorted(index[s] for s in sig))
            points = place_points(tmpl, idx, len(members), margin=DOT_R + 2)
        else:
            y = tmpl.height + 20
            points = [(20 + 16 * i, y) for i in range(len(members))]
        region = "{" + ",".join(sig) + "}"
        for e_id, (x, y) in zip(members, points):
            role = "uncertain-element-dot" if e_id in vague else "element-dot"
            b.add("circle", role, (e_id, region), cx=x, cy=y, r=DOT_R,
                  fill=theme.lightness_light if e_id in vague else theme.lightness_dark)
    if any(e in vague for e in family.element_ids):
        b.use("uncertain-element-dot", "element with uncertain memberships",
              lightness=theme.lightness_light)
