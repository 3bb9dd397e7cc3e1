"""Visual-variable encoders.

Lightness is given in percent (0 is black, 100 is white) and is the primary
channel for uncertainty. Every constant lives in :class:`Theme`.
"""
from __future__ import annotations

import dataclasses
import enum
import json
import math
import warnings
from dataclasses import dataclass
from typing import Optional, Tuple

from .model import (
    AttributeSchema,
    AttributeValue,
    Flagged,
    Known,
    MembershipStatus,
    Missing,
    Range,
    Status,
)


class EncodingWarning(UserWarning):
    pass


@dataclass(frozen=True)
class Theme:
    width_min: float = 0.6
    width_max: float = 2.5
    lightness_dark: float = 10.0
    lightness_light: float = 75.0
    size_min: float = 0.35
    dash_period: float = 8.0
    dash_min_on: float = 0.5
    gray_known: float = 0.0
    gray_range: float = 30.0
    gray_threshold: float = 55.0
    gray_unknown: float = 80.0
    hatch_angle: float = 45.0
    hatch_spacing: float = 6.0
    hatch_lightness: float = 35.0
    fan_length: float = 14.0
    fan_spread: float = 40.0
    fan_ends: str = "source"  # "source" | "both"
    line_channels: Tuple[str, ...] = ("width", "lightness")
    cell_channels: Tuple[str, ...] = ("size", "lightness")

    def __post_init__(self) -> None:
        if not 0 < self.width_min <= self.width_max:
            raise ValueError("need 0 < width_min <= width_max")
        if not 0 <= self.lightness_dark < self.lightness_light <= 100:
            raise ValueError("need 0 <= lightness_dark < lightness_light <= 100")
        if not 0 < self.size_min <= 1:
            raise ValueError("size_min must lie in (0, 1]")
        if self.dash_period <= 0:
            raise ValueError("dash_period must be positive")
        if not (self.gray_known < self.gray_range < self.gray_threshold < self.gray_unknown):
            raise ValueError("grayscale levels must increase from known to unknown")
        if self.fan_ends not in ("source", "both"):
            raise ValueError("fan_ends must be 'source' or 'both'")
        for ch in self.line_channels:
            if ch not in ("width", "lightness"):
                raise ValueError(f"unknown line channel {ch!r}")
        for ch in self.cell_channels:
            if ch not in ("size", "lightness"):
                raise ValueError(f"unknown cell channel {ch!r}")


DEFAULT_THEME = Theme()


def load_theme(text: str) -> Theme:
    """Build a theme from a JSON object; every key is optional, unknown keys are rejected."""
    raw = json.loads(text)
    if not isinstance(raw, dict):
        raise ValueError("theme must be a JSON object")
    names = {f.name: f for f in dataclasses.fields(Theme)}
    unknown = sorted(set(raw) - set(names))
    if unknown:
        raise ValueError(f"unknown theme keys: {', '.join(unknown)}")
    kwargs = {}
    for key, value in raw.items():
        if key in ("line_channels", "cell_channels"):
            kwargs[key] = tuple(value)
        elif key == "fan_ends":
            kwargs[key] = str(value)
        else:
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise ValueError(f"theme key {key!r} needs a number")
            kwargs[key] = float(value)
    return Theme(**kwargs)


# -- styles ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LineStyle:
    width: float
    lightness: float


@dataclass(frozen=True)
class CellStyle:
    size_fraction: float
    lightness: float


@dataclass(frozen=True)
class DashPattern:
    period: float
    solid_fraction: float

    @property
    def is_solid(self) -> bool:
        return self.solid_fraction >= 1.0

    def dasharray(self, min_on: float = 0.5) -> Optional[Tuple[float, float]]:
        """``(on, off)`` lengths, or None for a solid stroke; never fully invisible."""
        if self.is_solid:
            return None
        on = max(self.solid_fraction * self.period, min_on)
        return (on, self.period - on)


class GrayscaleClass(enum.Enum):
    KNOWN = "known"
    RANGE_KNOWN = "range-known"
    THRESHOLD_KNOWN = "threshold-known"
    UNKNOWN = "unknown"

    def lightness(self, theme: Theme = DEFAULT_THEME) -> float:
        return {
            GrayscaleClass.KNOWN: theme.gray_known,
            GrayscaleClass.RANGE_KNOWN: theme.gray_range,
            GrayscaleClass.THRESHOLD_KNOWN: theme.gray_threshold,
            GrayscaleClass.UNKNOWN: theme.gray_unknown,
        }[self]


@dataclass(frozen=True)
class TextureSpec:
    angle: float
    spacing: float
    lightness: float


def texture(theme: Theme = DEFAULT_THEME) -> TextureSpec:
    return TextureSpec(theme.hatch_angle, theme.hatch_spacing, theme.hatch_lightness)


# -- encoders -------------------------------------------------------------------------


def _lerp_lightness(t: float, theme: Theme) -> float:
    return theme.lightness_light - t * (theme.lightness_light - theme.lightness_dark)


def membership_line_style(status: MembershipStatus, theme: Theme = DEFAULT_THEME) -> LineStyle:
    """Stroke for a membership link; lower probability gives a thinner, lighter line."""
    if status.kind is Status.CERTAIN:
        return LineStyle(theme.width_max, theme.lightness_dark)
    if status.kind is Status.UNCERTAIN:
        return LineStyle(theme.width_min, theme.lightness_light)
    if status.kind is Status.PROBABILITY:
        p = status.p
        width = theme.width_min + p * (theme.width_max - theme.width_min)
        lightness = _lerp_lightness(p, theme)
        if "width" not in theme.line_channels:
            width = theme.width_max
        if "lightness" not in theme.line_channels:
            lightness = theme.lightness_dark
        return LineStyle(width, lightness)
    raise ValueError("a certain non-member has no membership line")


CELL_VARIANTS = ("plain", "small-marks", "size-color")


def membership_cell_style(status: MembershipStatus, variant: str = "plain",
                          theme: Theme = DEFAULT_THEME) -> CellStyle:
    if variant not in CELL_VARIANTS:
        raise ValueError(f"unknown cell variant {variant!r}")
    if status.kind is Status.CERTAIN:
        return CellStyle(1.0, theme.lightness_dark)
    if status.kind is Status.NON_MEMBER:
        raise ValueError("a certain non-member has no matrix cell")
    if variant == "size-color":
        if status.kind is Status.PROBABILITY:
            p = status.p
            size = theme.size_min + math.sqrt(p) * (1.0 - theme.size_min)
            lightness = _lerp_lightness(p, theme)
            if "size" not in theme.cell_channels:
                size = 1.0
            if "lightness" not in theme.cell_channels:
                lightness = theme.lightness_dark
            return CellStyle(size, lightness)
        warnings.warn("size-color needs a probability; falling back to small marks",
                      EncodingWarning, stacklevel=2)
        variant = "small-marks"
    if variant == "small-marks":
        return CellStyle(theme.size_min, theme.lightness_light)
    return CellStyle(1.0, theme.lightness_light)


def value_to_lightness(value: float, lo: float, hi: float, theme: Theme = DEFAULT_THEME) -> float:
    """Linear map of ``value`` on ``[lo, hi]`` to lightness; larger values are darker."""
    if lo > hi:
        raise ValueError(f"empty value domain [{lo}, {hi}]")
    if lo == hi:
        warnings.warn(f"degenerate value domain [{lo}, {hi}]", EncodingWarning, stacklevel=2)
        return (theme.lightness_dark + theme.lightness_light) / 2.0
    t = (min(max(value, lo), hi) - lo) / (hi - lo)
    return _lerp_lightness(t, theme)


def certainty_to_dash(c: float, theme: Theme = DEFAULT_THEME) -> DashPattern:
    if not 0.0 <= c <= 1.0:
        raise ValueError(f"certainty {c} outside [0, 1]")
    return DashPattern(theme.dash_period, c)


def element_value_class(value: AttributeValue, schema: Optional[AttributeSchema] = None) -> GrayscaleClass:
    if isinstance(value, Known):
        return GrayscaleClass.KNOWN
    if isinstance(value, Missing):
        return GrayscaleClass.UNKNOWN
    if isinstance(value, Flagged):
        return GrayscaleClass.RANGE_KNOWN
    if isinstance(value, Range):
        if schema is None or schema.domain is None:
            return GrayscaleClass.RANGE_KNOWN
        lo, hi = schema.domain
        at_lo, at_hi = value.low <= lo, value.high >= hi
        if at_lo and at_hi:
            return GrayscaleClass.UNKNOWN
        if at_lo or at_hi:
            return GrayscaleClass.THRESHOLD_KNOWN
        return GrayscaleClass.RANGE_KNOWN
    raise TypeError(f"not an attribute value: {value!r}")
