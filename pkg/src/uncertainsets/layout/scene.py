from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

KINDS = ("line", "circle", "path", "rect", "wedge", "text", "hatch")


def num(x: float) -> str:
    """Format a coordinate with at most three decimals and no trailing zeros."""
    s = f"{x:.3f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


@dataclass(frozen=True)
class Primitive:
    """One tagged drawing primitive.

    ``fill`` and ``stroke`` are lightness percents (None means none).
    ``geom`` keys by kind: line ``x1 y1 x2 y2``; circle ``cx cy r``;
    path/hatch ``d``; rect ``x y w h``; wedge ``cx cy r fraction``;
    text ``x y size anchor``.
    """

    kind: str
    role: str
    refs: Tuple[str, ...] = ()
    geom: Mapping[str, Any] = field(default_factory=dict)
    fill: Optional[float] = None
    stroke: Optional[float] = None
    stroke_width: float = 0.0
    dash: Optional[Tuple[float, float]] = None
    text: Optional[str] = None
    no_data: bool = False

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown primitive kind {self.kind!r}")
        if not self.role:
            raise ValueError("every primitive needs a role tag")


@dataclass(frozen=True)
class LegendEntry:
    key: str
    label: str
    params: Tuple[Tuple[str, Any], ...] = ()

    def param(self, name: str, default: Any = None) -> Any:
        return dict(self.params).get(name, default)


@dataclass(frozen=True)
class Scene:
    width: float
    height: float
    primitives: Tuple[Primitive, ...] = ()
    legend: Tuple[LegendEntry, ...] = ()
    view: str = ""

    def with_role(self, role: str) -> List[Primitive]:
        return [p for p in self.primitives if p.role == role]

    def count(self, role: str) -> int:
        return sum(1 for p in self.primitives if p.role == role)

    def roles(self) -> Dict[str, int]:
        out: Dict[str, int] = {}
        for p in self.primitives:
            out[p.role] = out.get(p.role, 0) + 1
        return out


class SceneBuilder:
    def __init__(self) -> None:
        self.primitives: List[Primitive] = []
        self.legend: Dict[str, LegendEntry] = {}

    def add(self, kind: str, role: str, refs: Sequence[str] = (), **kw: Any) -> Primitive:
        geom = {k: kw.pop(k) for k in list(kw) if k in _GEOM_KEYS}
        prim = Primitive(kind, role, tuple(refs), geom, **kw)
        self.primitives.append(prim)
        return prim

    def text(self, role: str, x: float, y: float, text: str, refs: Sequence[str] = (),
             size: float = 11, anchor: str = "start") -> Primitive:
        return self.add("text", role, refs, x=x, y=y, size=size, anchor=anchor, text=text, fill=0.0)

    def use(self, key: str, label: str, **params: Any) -> None:
        if key not in self.legend:
            self.legend[key] = LegendEntry(key, label, tuple(sorted(params.items())))

    def build(self, width: float, height: float, view: str) -> Scene:
        return Scene(width, height, tuple(self.primitives), tuple(self.legend.values()), view)


_GEOM_KEYS = {"x1", "y1", "x2", "y2", "cx", "cy", "r", "d", "x", "y", "w", "h",
              "fraction", "size", "anchor"}
