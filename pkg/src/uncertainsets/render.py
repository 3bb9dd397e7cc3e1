"""Serialize scenes to standalone SVG 1.1 documents.

Every scene primitive becomes exactly one element carrying ``data-role`` and
``data-ref``; legend elements use ``data-role="legend"``. Output is
byte-deterministic and numbers carry at most three decimals.
"""
from __future__ import annotations

import math
from typing import List, Optional, Tuple
from xml.sax.saxutils import escape, quoteattr

from .encode import (
    DEFAULT_THEME,
    Theme,
    certainty_to_dash,
    membership_cell_style,
    membership_line_style,
    value_to_lightness,
)
from .model import probability
from .layout.scene import LegendEntry, Primitive, Scene, num

LEGEND_ROW = 18.0
LEGEND_PAD = 12.0


def gray(lightness: float) -> str:
    """Lightness percent to an sRGB gray; 0 is black, 100 is white."""
    v = round(255 * min(max(lightness, 0.0), 100.0) / 100.0)
    return f"#{v:02x}{v:02x}{v:02x}"


def _paint(p: Primitive) -> List[Tuple[str, str]]:
    attrs = []
    if p.kind == "hatch":
        attrs.append(("fill", "url(#hatch)"))
    elif p.no_data:
        attrs.append(("fill", "url(#no-data)"))
    elif p.fill is not None:
        attrs.append(("fill", gray(p.fill)))
    else:
        attrs.append(("fill", "none"))
    if p.stroke is not None and p.kind != "hatch":
        attrs.append(("stroke", gray(p.stroke)))
        attrs.append(("stroke-width", num(p.stroke_width)))
        if p.dash is not None:
            attrs.append(("stroke-dasharray", f"{num(p.dash[0])} {num(p.dash[1])}"))
            attrs.append(("stroke-linecap", "round"))
    return attrs


def wedge_path(cx: float, cy: float, r: float, fraction: float) -> str:
    """Pie wedge starting at twelve o'clock, running clockwise."""
    fraction = min(max(fraction, 0.0), 1.0)
    top = f"{num(cx)} {num(cy - r)}"
    if fraction <= 0.0:
        return f"M{num(cx)} {num(cy)} Z"
    if fraction >= 1.0:
        return (f"M{top} A{num(r)} {num(r)} 0 1 1 {num(cx)} {num(cy + r)} "
                f"A{num(r)} {num(r)} 0 1 1 {top} Z")
    a = 2 * math.pi * fraction
    x, y = cx + r * math.sin(a), cy - r * math.cos(a)
    large = 1 if fraction > 0.5 else 0
    return f"M{num(cx)} {num(cy)} L{top} A{num(r)} {num(r)} 0 {large} 1 {num(x)} {num(y)} Z"


def _element(p: Primitive, role: str, ref: str) -> str:
    g = p.geom
    head = [("data-role", role), ("data-ref", ref)]
    text_body = None
    if p.kind == "line":
        tag = "line"
        geo = [("x1", num(g["x1"])), ("y1", num(g["y1"])), ("x2", num(g["x2"])), ("y2", num(g["y2"]))]
    elif p.kind == "circle":
        tag = "circle"
        geo = [("cx", num(g["cx"])), ("cy", num(g["cy"])), ("r", num(g["r"]))]
    elif p.kind in ("path", "hatch"):
        tag = "path"
        geo = [("d", g["d"])]
    elif p.kind == "rect":
        tag = "rect"
        geo = [("x", num(g["x"])), ("y", num(g["y"])), ("width", num(g["w"])), ("height", num(g["h"]))]
    elif p.kind == "wedge":
        tag = "path"
        geo = [("d", wedge_path(g["cx"], g["cy"], g["r"], g["fraction"]))]
    else:
        tag = "text"
        geo = [("x", num(g["x"])), ("y", num(g["y"])), ("font-size", num(g.get("size", 11))),
               ("text-anchor", g.get("anchor", "start"))]
        text_body = escape(p.text or "")
    attrs = " ".join(f"{k}={quoteattr(v)}" for k, v in head + geo + _paint(p))
    if text_body is None:
        return f"<{tag} {attrs}/>"
    return f"<{tag} {attrs}>{text_body}</{tag}>"


def _primitive(p: Primitive) -> str:
    return _element(p, p.role, " ".join(p.refs))


# -- legend ---------------------------------------------------------------------------


def _legend_items(entry: LegendEntry, x: float, y: float, theme: Theme) -> List[Primitive]:
    """Sample glyph(s) plus a caption for one encoder mapping."""
    out: List[Primitive] = []
    key = entry.key
    mid = y - 4

    def line(x0, width, lightness, dash=None):
        out.append(Primitive("line", "legend", (key,), {"x1": x0, "y1": mid, "x2": x0 + 26, "y2": mid},
                             stroke=lightness, stroke_width=width, dash=dash))

    def rect(x0, size, lightness, **kw):
        side = 12 * size
        out.append(Primitive("rect", "legend", (key,),
                             {"x": x0 + (12 - side) / 2, "y": mid - side / 2, "w": side, "h": side},
                             fill=lightness, **kw))

    def dot(x0, lightness):
        out.append(Primitive("circle", "legend", (key,), {"cx": x0 + 6, "cy": mid, "r": 4}, fill=lightness))

    text_x = x + 100
    if key in ("certain-link", "uncertain-link", "fan-stub"):
        line(x, entry.param("width"), entry.param("lightness"))
    elif key == "probability-link":
        for i, p in enumerate((0.25, 0.5, 0.75)):
            s = membership_line_style(probability(p), theme)
            line(x + i * 30, s.width, s.lightness)
    elif key in ("certain-cell", "uncertain-cell"):
        rect(x, entry.param("size"), entry.param("lightness"))
    elif key == "probability-cell":
        for i, p in enumerate((0.25, 0.5, 0.75)):
            s = membership_cell_style(probability(p), "size-color", theme)
            rect(x + i * 16, s.size_fraction, s.lightness)
    elif key == "value-lightness":
        lo, hi = entry.param("lo"), entry.param("hi")
        for i in range(5):
            v = lo + (hi - lo) * i / 4
            rect(x + i * 14, 1.0, value_to_lightness(v, lo, hi, theme))
        text = f"{entry.label}: {num(lo)} (light) to {num(hi)} (dark)"
        out.append(Primitive("text", "legend", (key,), {"x": text_x, "y": y, "size": 10, "anchor": "start"},
                             fill=0.0, text=text))
        return out
    elif key == "certainty-dash":
        for i, c in enumerate((1.0, 0.5, 0.0)):
            line(x + i * 32, 1.5, theme.lightness_dark,
                 certainty_to_dash(c, theme).dasharray(theme.dash_min_on))
        text = f"{entry.label}: solid 1.0, dashed 0.5, dotted 0.0"
        out.append(Primitive("text", "legend", (key,), {"x": text_x, "y": y, "size": 10, "anchor": "start"},
                             fill=0.0, text=text))
        return out
    elif key == "texture":
        out.append(Primitive("rect", "legend", (key,), {"x": x, "y": mid - 6, "w": 12, "h": 12}, fill=100.0,
                             stroke=theme.lightness_dark, stroke_width=0.5))
        out.append(Primitive("hatch", "legend", (key,),
                             {"d": f"M{num(x)} {num(mid - 6)} h12 v12 h-12 Z"}, stroke=theme.hatch_lightness))
    elif key == "no-data":
        rect(x, 1.0, None, no_data=True, stroke=theme.lightness_dark, stroke_width=0.5)
    elif key.startswith("dot-") or key == "uncertain-element-dot":
        dot(x, entry.param("lightness"))
    elif key == "pie":
        for i, f in enumerate((0.5, 0.8)):
            out.append(Primitive("wedge", "legend", (key,), {"cx": x + 6 + i * 22, "cy": mid, "r": 6, "fraction": f},
                                 fill=theme.lightness_dark))
    out.append(Primitive("text", "legend", (key,), {"x": text_x, "y": y, "size": 10, "anchor": "start"},
                         fill=0.0, text=entry.label))
    return out


def legend_primitives(scene: Scene, theme: Theme = DEFAULT_THEME) -> List[Primitive]:
    out: List[Primitive] = []
    y = scene.height + LEGEND_PAD + 10
    for entry in scene.legend:
        out.extend(_legend_items(entry, 10.0, y, theme))
        y += LEGEND_ROW
    return out


# -- document -------------------------------------------------------------------------


def _defs(prims: List[Primitive], theme: Theme) -> str:
    parts = []
    if any(p.kind == "hatch" for p in prims):
        s = num(theme.hatch_spacing)
        parts.append(
            f'<pattern id="hatch" patternUnits="userSpaceOnUse" width="{s}" height="{s}" '
            f'patternTransform="rotate({num(theme.hatch_angle)})">'
            f'<line x1="0" y1="0" x2="0" y2="{s}" stroke="{gray(theme.hatch_lightness)}" stroke-width="1"/>'
            f"</pattern>")
    if any(p.no_data for p in prims):
        parts.append(
            '<pattern id="no-data" patternUnits="userSpaceOnUse" width="6" height="6">'
            '<rect x="0" y="0" width="6" height="6" fill="#ffffff"/>'
            '<path d="M0 6 L6 0 M0 0 L6 6" stroke="#bfbfbf" stroke-width="0.6"/>'
            "</pattern>")
    return "<defs>" + "".join(parts) + "</defs>" if parts else ""


def render_svg(scene: Scene, legend: bool = True, theme: Theme = DEFAULT_THEME) -> bytes:
    legend_prims = legend_primitives(scene, theme) if legend else []
    height = scene.height
    if legend_prims:
        height += LEGEND_PAD + LEGEND_ROW * len(scene.legend) + 6
    w, h = num(scene.width), num(height)
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" '
        f'viewBox="0 0 {w} {h}" font-family="sans-serif">',
    ]
    defs = _defs(list(scene.primitives) + legend_prims, theme)
    if defs:
        lines.append(defs)
    lines.extend(_primitive(p) for p in scene.primitives)
    lines.extend(_primitive(p) for p in legend_prims)
    lines.append("</svg>")
    return ("\n".join(lines) + "\n").encode("utf-8")


def write_svg(scene: Scene, path: Optional[str], legend: bool = True, theme: Theme = DEFAULT_THEME) -> bytes:
    doc = render_svg(scene, legend, theme)
    if path is not None:
        with open(path, "wb") as fh:
            fh.write(doc)
    return doc
