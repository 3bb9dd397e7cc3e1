"""Two-column node-link layout: elements on the left, sets on the right."""
from __future__ import annotations

import math
import warnings
from typing import Dict, List, Optional, Tuple

from ..aggregate import AggregateSpec, summary_table
from ..encode import DEFAULT_THEME, EncodingWarning, Theme, membership_line_style
from ..model import CERTAIN_MEMBER, UNCERTAIN, SetFamily, Status, expand_memberships
from .scene import Scene, SceneBuilder

VARIANTS = ("full-links", "fans", "probability")

ROW = 28.0
TOP = 40.0
ELEMENT_X = 150.0
SET_X = 370.0
NODE_R = 5.0
PIE_R = 9.0


def _stub_angles(k: int, spread: float) -> List[float]:
    if k == 1:
        return [0.0]
    return [math.radians(-spread + 2 * spread * i / (k - 1)) for i in range(k)]


def layout_bipartite(family: SetFamily, variant: str = "full-links",
                     with_aggregate_pies: bool = False, spec: Optional[AggregateSpec] = None,
                     theme: Theme = DEFAULT_THEME) -> Scene:
    if variant not in VARIANTS:
        raise ValueError(f"unknown bipartite variant {variant!r}")
    expanded = expand_memberships(family)
    if variant == "probability" and not any(st.kind is Status.PROBABILITY for _, _, st in expanded):
        warnings.warn("no membership probabilities; drawing full links instead",
                      EncodingWarning, stacklevel=2)
        variant = "full-links"

    b = SceneBuilder()
    n_el, n_set = len(family.elements), len(family.sets)
    rows = max(n_el, n_set, 1)
    span = rows * ROW
    ey = {e.id: TOP + (i + 0.5) * ROW for i, e in enumerate(family.elements)}
    sy = {s.id: TOP + (j + 0.5) * span / n_set for j, s in enumerate(family.sets)} if n_set else {}
    uncertain_elements = {e.id for e in family.elements if e.membership_uncertain}
    uncertain_sets = {s.id for s in family.sets if s.membership_uncertain}

    certain_style = membership_line_style(CERTAIN_MEMBER, theme)
    vague_style = membership_line_style(UNCERTAIN, theme)
    stubs: Dict[Tuple[str, str], List[Tuple[str, str]]] = {}

    for e_id, s_id, st in expanded:
        refs = (e_id, s_id)
        if st.kind is Status.NON_MEMBER:
            continue
        if st.kind is Status.CERTAIN:
            b.add("line", "certain-link", refs, x1=ELEMENT_X, y1=ey[e_id], x2=SET_X, y2=sy[s_id],
                  stroke=certain_style.lightness, stroke_width=certain_style.width)
            b.use("certain-link", "certain membership", width=certain_style.width,
                  lightness=certain_style.lightness)
        elif variant == "fans":
            owners = []
            if theme.fan_ends == "both":
                owners = [("element", e_id), ("set", s_id)]
            elif e_id in uncertain_elements or s_id not in uncertain_sets:
                owners = [("element", e_id)]
            else:
                owners = [("set", s_id)]
            for owner in owners:
                stubs.setdefault(owner, []).append(refs)
        elif variant == "probability" and st.kind is Status.PROBABILITY:
            style = membership_line_style(st, theme)
            b.add("line", "probability-link", refs, x1=ELEMENT_X, y1=ey[e_id], x2=SET_X, y2=sy[s_id],
                  stroke=style.lightness, stroke_width=style.width)
            b.use("probability-link", "membership probability", kind="line")
        else:
            b.add("line", "uncertain-link", refs, x1=ELEMENT_X, y1=ey[e_id], x2=SET_X, y2=sy[s_id],
                  stroke=vague_style.lightness, stroke_width=vague_style.width)
            b.use("uncertain-link", "uncertain membership", width=vague_style.width,
                  lightness=vague_style.lightness)

    for (side, node), pairs in sorted(stubs.items()):
        if side == "element":
            x0, y0, direction = ELEMENT_X + NODE_R, ey[node], 1.0
            pairs = sorted(pairs, key=lambda r: (sy[r[1]], r[1]))
        else:
            x0, y0, direction = SET_X - NODE_R, sy[node], -1.0
            pairs = sorted(pairs, key=lambda r: (ey[r[0]], r[0]))
        for refs, a in zip(pairs, _stub_angles(len(pairs), theme.fan_spread)):
            b.add("line", "fan-stub", refs, x1=x0, y1=y0,
                  x2=x0 + direction * theme.fan_length * math.cos(a),
                  y2=y0 + theme.fan_length * math.sin(a),
                  stroke=vague_style.lightness, stroke_width=vague_style.width)
        b.use("fan-stub", "possible membership (link fan)", width=vague_style.width,
              lightness=vague_style.lightness)

    for e in family.elements:
        b.add("circle", "element-node", (e.id,), cx=ELEMENT_X, cy=ey[e.id], r=NODE_R,
              fill=theme.lightness_dark)
        b.text("element-label", ELEMENT_X - 12, ey[e.id] + 4, e.label, (e.id,), anchor="end")
    for s in family.sets:
        b.add("circle", "set-node", (s.id,), cx=SET_X, cy=sy[s.id], r=NODE_R + 2,
              fill=theme.lightness_dark)
        b.text("set-label", SET_X + 14, sy[s.id] + 4, s.label, (s.id,))

    if with_aggregate_pies and family.sets:
        if spec is None:
            raise ValueError("aggregate pies need an aggregate spec")
        _add_pies(b, family, spec, sy, theme)

    width = SET_X + 200 if with_aggregate_pies else SET_X + 120
    return b.build(width, TOP + span + 20, "bipartite")


def _add_pies(b: SceneBuilder, family: SetFamily, spec: AggregateSpec,
              sy: Dict[str, float], theme: Theme) -> None:
    schema = family.schema(spec.attribute)
    cells = {c.scope[0]: c for c in summary_table(family, spec, scope="sets")}
    for s in family.sets:
        cell = cells[s.id]
        share = cell.value
        if share is not None and spec.kind == "mean":
            lo, hi = schema.domain
            share = (min(max(share, lo), hi) - lo) / (hi - lo)
        for offset, role, fraction in ((70.0, "pie-value", share), (96.0, "pie-certainty", cell.certainty)):
            cx, cy = SET_X + offset, sy[s.id]
            b.add("circle", "pie-base", (s.id,), cx=cx, cy=cy, r=PIE_R, fill=100.0,
                  stroke=theme.lightness_dark, stroke_width=0.8, no_data=fraction is None)
            if fraction is not None:
                b.add("wedge", role, (s.id,), cx=cx, cy=cy, r=PIE_R, fraction=fraction,
                      fill=theme.lightness_dark)
    b.use("pie", "set pies: value share | certainty share",
          attribute=spec.attribute, kind=spec.kind, target=spec.target or "")
