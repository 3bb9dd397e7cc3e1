"""Renderer-independent scenes for the supported views."""
from .bipartite import layout_bipartite
from .dotplot import layout_dotplot
from .euler import UnsupportedSetCount, template
from .euler_view import layout_euler
from .matrix import layout_aggregate_matrix, layout_membership_matrix
from .scene import LegendEntry, Primitive, Scene

__all__ = [
    "LegendEntry",
    "Primitive",
    "Scene",
    "UnsupportedSetCount",
    "layout_aggregate_matrix",
    "layout_bipartite",
    "layout_dotplot",
    "layout_euler",
    "layout_membership_matrix",
    "template",
]
