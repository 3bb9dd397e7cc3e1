import warnings

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from uncertainsets.encode import (
    DEFAULT_THEME,
    EncodingWarning,
    GrayscaleClass,
    Theme,
    certainty_to_dash,
    element_value_class,
    load_theme,
    membership_cell_style,
    membership_line_style,
    texture,
    value_to_lightness,
)
from uncertainsets.model import (
    CERTAIN_MEMBER,
    CERTAIN_NON_MEMBER,
    UNCERTAIN,
    AttributeSchema,
    Flagged,
    Known,
    Missing,
    Range,
    probability,
)

AGE = AttributeSchema.numeric("age", 15, 65)
open_p = st.floats(min_value=0.0, max_value=1.0, exclude_min=True, exclude_max=True)


def test_line_style_endpoints_and_midpoint():
    assert membership_line_style(CERTAIN_MEMBER) == membership_line_style(probability(1.0))
    s = membership_line_style(CERTAIN_MEMBER)
    assert (s.width, s.lightness) == (2.5, 10)
    u = membership_line_style(UNCERTAIN)
    assert (u.width, u.lightness) == (0.6, 75)
    half = membership_line_style(probability(0.5))
    assert half.width == pytest.approx(1.55)
    assert half.lightness == pytest.approx(42.5)


def test_non_member_has_no_mark():
    with pytest.raises(ValueError):
        membership_line_style(CERTAIN_NON_MEMBER)
    with pytest.raises(ValueError):
        membership_cell_style(CERTAIN_NON_MEMBER)


@pytest.mark.parametrize("variant", ["plain", "small-marks", "size-color"])
def test_certain_cell_any_variant(variant):
    c = membership_cell_style(CERTAIN_MEMBER, variant)
    assert (c.size_fraction, c.lightness) == (1.0, 10)


def test_cell_variants():
    assert membership_cell_style(UNCERTAIN, "plain").lightness == 75
    small = membership_cell_style(UNCERTAIN, "small-marks")
    assert (small.size_fraction, small.lightness) == (0.35, 75)
    quarter = membership_cell_style(probability(0.25), "size-color")
    assert quarter.size_fraction == pytest.approx(0.675)
    assert quarter.lightness == pytest.approx(58.75)
    with pytest.raises(ValueError):
        membership_cell_style(UNCERTAIN, "huge")


def test_size_color_falls_back_for_undefined_uncertainty():
    with pytest.warns(EncodingWarning):
        c = membership_cell_style(UNCERTAIN, "size-color")
    assert c == membership_cell_style(UNCERTAIN, "small-marks")


@given(open_p, open_p)
def test_probability_encoders_are_monotone(p1, p2):
    lo, hi = sorted((p1, p2))
    # below float resolution the interpolation cannot separate the two
    assume(hi - lo > 1e-9)
    a, b = membership_line_style(probability(lo)), membership_line_style(probability(hi))
    assert a.width < b.width and a.lightness > b.lightness
    ca = membership_cell_style(probability(lo), "size-color")
    cb = membership_cell_style(probability(hi), "size-color")
    assert ca.size_fraction < cb.size_fraction and ca.lightness > cb.lightness


def test_channels_can_be_decoupled():
    theme = Theme(line_channels=("lightness",), cell_channels=("size",))
    s = membership_line_style(probability(0.3), theme)
    assert s.width == theme.width_max and s.lightness < theme.lightness_light
    c = membership_cell_style(probability(0.3), "size-color", theme)
    assert c.lightness == theme.lightness_dark and c.size_fraction < 1.0


def test_value_to_lightness():
    assert value_to_lightness(65, 15, 65) == 10
    assert value_to_lightness(15, 15, 65) == 75
    assert value_to_lightness(0.5, 0, 1) == 42.5
    assert value_to_lightness(200, 15, 65) == 10
    with pytest.warns(EncodingWarning):
        assert value_to_lightness(3, 3, 3) == 42.5
    with pytest.raises(ValueError):
        value_to_lightness(1, 2, 1)


def test_certainty_to_dash():
    assert certainty_to_dash(1.0).dasharray() is None
    on, off = certainty_to_dash(0.4).dasharray()
    assert (on, off) == pytest.approx((3.2, 4.8))
    on, off = certainty_to_dash(0.0).dasharray(DEFAULT_THEME.dash_min_on)
    assert on > 0 and off < DEFAULT_THEME.dash_period
    with pytest.raises(ValueError):
        certainty_to_dash(1.5)


@given(st.floats(0.0, 1.0), st.floats(0.0, 1.0))
def test_dash_solid_fraction_tracks_certainty(c1, c2):
    d1, d2 = certainty_to_dash(c1), certainty_to_dash(c2)
    assert d1.period == d2.period == DEFAULT_THEME.dash_period
    assert (c1 < c2) == (d1.solid_fraction < d2.solid_fraction)


def test_element_value_classes():
    assert element_value_class(Known(25), AGE) is GrayscaleClass.KNOWN
    assert element_value_class(Range(20, 30), AGE) is GrayscaleClass.RANGE_KNOWN
    assert element_value_class(AGE.threshold(low=30), AGE) is GrayscaleClass.THRESHOLD_KNOWN
    assert element_value_class(Range(15, 65), AGE) is GrayscaleClass.UNKNOWN
    assert element_value_class(Missing(), AGE) is GrayscaleClass.UNKNOWN
    assert element_value_class(Flagged(25), AGE) is GrayscaleClass.RANGE_KNOWN


def test_grayscale_order():
    levels = [c.lightness() for c in (GrayscaleClass.KNOWN, GrayscaleClass.RANGE_KNOWN,
                                      GrayscaleClass.THRESHOLD_KNOWN, GrayscaleClass.UNKNOWN)]
    assert levels == [0, 30, 55, 80]


def test_theme_loading():
    theme = load_theme('{"width_max": 3, "fan_ends": "both", "line_channels": ["width"]}')
    assert theme.width_max == 3.0 and theme.fan_ends == "both"
    assert texture(theme).angle == DEFAULT_THEME.hatch_angle
    for bad in ('{"colour": 1}', '[]', '{"width_max": "wide"}', '{"width_min": 5}',
                '{"fan_ends": "middle"}', '{"line_channels": ["hue"]}'):
        with pytest.raises(ValueError):
            load_theme(bad)


def test_no_warnings_for_regular_inputs():
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        membership_cell_style(probability(0.5), "size-color")
        value_to_lightness(1, 0, 2)
