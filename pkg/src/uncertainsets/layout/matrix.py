"""Membership matrix (elements x sets) and aggregate matrix (regions and sets x value)."""
from __future__ import annotations

from typing import List

from ..aggregate import AggregateCell, AggregateSpec, summary_table
from ..encode import (
    CELL_VARIANTS,
    DEFAULT_THEME,
    Theme,
    certainty_to_dash,
    membership_cell_style,
    value_to_lightness,
)
from ..model import SetFamily, Status, expand_memberships
from .scene import Scene, SceneBuilder

CELL = 20.0
LEFT = 110.0
TOP = 50.0


def layout_membership_matrix(family: SetFamily, variant: str = "plain",
                             theme: Theme = DEFAULT_THEME) -> Scene:
    if variant not in CELL_VARIANTS:
        raise ValueError(f"unknown matrix variant {variant!r}")
    b = SceneBuilder()
    n_rows, n_cols = len(family.elements), len(family.sets)
    row = {e.id: i for i, e in enumerate(family.elements)}
    col = {s.id: j for j, s in enumerate(family.sets)}
    right, bottom = LEFT + n_cols * CELL, TOP + n_rows * CELL

    for i in range(n_rows + 1):
        y = TOP + i * CELL
        b.add("line", "grid", (), x1=LEFT, y1=y, x2=right, y2=y, stroke=85.0, stroke_width=0.5)
    for j in range(n_cols + 1):
        x = LEFT + j * CELL
        b.add("line", "grid", (), x1=x, y1=TOP, x2=x, y2=bottom, stroke=85.0, stroke_width=0.5)

    inner = CELL - 4.0
    for e_id, s_id, st in expand_memberships(family):
        if st.kind is Status.NON_MEMBER:
            continue
        style = membership_cell_style(st, variant, theme)
        if st.kind is Status.CERTAIN:
            role = "certain-cell"
        elif st.kind is Status.PROBABILITY and variant == "size-color":
            role = "probability-cell"
        else:
            role = "uncertain-cell"
        side = inner * style.size_fraction
        cx = LEFT + (col[s_id] + 0.5) * CELL
        cy = TOP + (row[e_id] + 0.5) * CELL
        b.add("rect", role, (e_id, s_id), x=cx - side / 2, y=cy - side / 2, w=side, h=side,
              fill=style.lightness)
        if role == "probability-cell":
            b.use(role, "membership probability", kind="cell")
        else:
            b.use(role, role.replace("-cell", " membership"),
                  size=style.size_fraction, lightness=style.lightness)

    for e in family.elements:
        b.text("element-label", LEFT - 6, TOP + (row[e.id] + 0.5) * CELL + 4, e.label, (e.id,),
               anchor="end")
    for s in family.sets:
        b.text("set-label", LEFT + (col[s.id] + 0.5) * CELL, TOP - 8, s.id, (s.id,), anchor="middle")
    return b.build(right + 30, bottom + 20, "membership-matrix")


def _value_domain(family: SetFamily, spec: AggregateSpec):
    if spec.kind == "mean":
        return family.schema(spec.attribute).domain
    return (0.0, 1.0)


def format_value(value, kind: str) -> str:
    if value is None:
        return "n/a"
    return f"{value * 100:.0f}%" if kind == "proportion" else f"{value:.1f}"


def layout_aggregate_matrix(family: SetFamily, spec: AggregateSpec,
                            theme: Theme = DEFAULT_THEME) -> Scene:
    """Rows for every exclusive region, then one row per whole set."""
    regions = summary_table(family, spec, scope="regions")
    sets = summary_table(family, spec, scope="sets")
    lo, hi = _value_domain(family, spec)
    set_ids = family.set_ids
    b = SceneBuilder()
    value_x = LEFT + len(set_ids) * CELL + 10
    value_w = 3 * CELL

    rows: List[AggregateCell] = regions + sets
    for i, cell in enumerate(rows):
        cy = TOP + (i + 0.5) * CELL
        if i == len(regions):
            y = TOP + i * CELL
            b.add("line", "separator", (), x1=LEFT - 100, y1=y, x2=value_x + value_w + 120, y2=y,
                  stroke=40.0, stroke_width=1.0)
        for j, s_id in enumerate(set_ids):
            hit = s_id in cell.scope
            b.add("circle", "signature-member" if hit else "signature-nonmember", (s_id,),
                  cx=LEFT + (j + 0.5) * CELL, cy=cy, r=4.0,
                  fill=theme.lightness_dark if hit else 90.0)
        role = "aggregate-cell" if cell.scope_kind == "region" else "set-aggregate-cell"
        dash = certainty_to_dash(cell.certainty, theme).dasharray(theme.dash_min_on)
        if cell.value is None:
            b.add("rect", role, cell.scope, x=value_x, y=cy - CELL / 2 + 2, w=value_w, h=CELL - 4,
                  no_data=True, stroke=theme.lightness_dark, stroke_width=1.5, dash=dash)
            b.use("no-data", "no data")
        else:
            b.add("rect", role, cell.scope, x=value_x, y=cy - CELL / 2 + 2, w=value_w, h=CELL - 4,
                  fill=value_to_lightness(cell.value, lo, hi, theme),
                  stroke=theme.lightness_dark, stroke_width=1.5, dash=dash)
        b.text("value-label", value_x + value_w + 8, cy + 4,
               f"{format_value(cell.value, spec.kind)}  c={cell.certainty:.2f}", cell.scope)
        label = cell.label if cell.scope_kind == "region" else f"{cell.label} (all)"
        b.text("row-label", LEFT - 6, cy + 4, label, cell.scope, anchor="end")

    for j, s_id in enumerate(set_ids):
        b.text("set-label", LEFT + (j + 0.5) * CELL, TOP - 8, s_id, (s_id,), anchor="middle")
    if rows:
        b.use("value-lightness", _value_legend(spec), lo=lo, hi=hi)
        b.use("certainty-dash", f"certainty ({spec.certainty_rule.value})")
    return b.build(value_x + value_w + 130, TOP + len(rows) * CELL + 20, "aggregate-matrix")


def _value_legend(spec: AggregateSpec) -> str:
    if spec.kind == "proportion":
        return f"share of {spec.attribute}={spec.target} ({spec.value_rule.value})"
    return f"mean {spec.attribute} ({spec.value_rule.value})"
