import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import certain_family, mixed_family, region_family
from uncertainsets.aggregate import AggregateSpec
from uncertainsets.encode import EncodingWarning, Theme, membership_cell_style
from uncertainsets.layout import (
    UnsupportedSetCount,
    layout_aggregate_matrix,
    layout_bipartite,
    layout_dotplot,
    layout_euler,
    layout_membership_matrix,
    template,
)
from uncertainsets.layout.dotplot import jitter
from uncertainsets.layout.euler import place_points
from uncertainsets.model import (
    AttributeSchema,
    Element,
    Known,
    Membership,
    Missing,
    SetDef,
    SetFamily,
    Status,
    expand_memberships,
    probability,
)
from uncertainsets.samples import age_classes, courses, toy_enrollment, toy_enrollment_probabilities


def status_counts(family):
    out = {k: 0 for k in Status}
    for _, _, st_ in expand_memberships(family):
        out[st_.kind] += 1
    return out


# -- bipartite ---------------------------------------------------------------


def test_full_links_and_fans_on_toy():
    full = layout_bipartite(toy_enrollment(), "full-links")
    assert (full.count("certain-link"), full.count("uncertain-link")) == (5, 10)
    fans = layout_bipartite(toy_enrollment(), "fans")
    assert (fans.count("uncertain-link"), fans.count("fan-stub")) == (0, 10)
    both = layout_bipartite(toy_enrollment(), "fans", theme=Theme(fan_ends="both"))
    assert both.count("fan-stub") == 20


def test_fan_stub_geometry():
    theme = Theme()
    for stub in layout_bipartite(toy_enrollment(), "fans").with_role("fan-stub"):
        g = stub.geom
        dx, dy = g["x2"] - g["x1"], g["y2"] - g["y1"]
        assert math.hypot(dx, dy) == pytest.approx(theme.fan_length)
        assert abs(math.degrees(math.atan2(dy, abs(dx)))) <= theme.fan_spread + 1e-9


def test_set_side_fans_for_uncertain_sets():
    fans = layout_bipartite(toy_enrollment(), "fans")
    math_stubs = [p for p in fans.with_role("fan-stub") if p.refs[1] == "M" and p.refs[0] in "abcd"]
    assert len(math_stubs) == 4
    assert all(p.geom["x2"] < p.geom["x1"] for p in math_stubs)


def test_probability_variant():
    scene = layout_bipartite(toy_enrollment_probabilities(), "probability")
    assert scene.count("probability-link") == 4
    assert scene.count("certain-link") == 5
    widths = {p.refs: p.stroke_width for p in scene.with_role("probability-link")}
    assert widths[("e", "H")] > widths[("f", "F")] > widths[("f", "H")]


def test_certain_family_same_scene_for_all_variants():
    f = courses("certain")
    full = layout_bipartite(f, "full-links")
    assert layout_bipartite(f, "fans") == full
    with pytest.warns(EncodingWarning):
        assert layout_bipartite(f, "probability") == full


def test_empty_family_bipartite():
    scene = layout_bipartite(SetFamily())
    assert scene.primitives == () and scene.legend == ()


def test_aggregate_pies():
    spec = AggregateSpec("residency", "proportion", "international")
    scene = layout_bipartite(courses("defined"), with_aggregate_pies=True, spec=spec)
    assert scene.count("pie-base") == 6
    assert scene.count("pie-value") == scene.count("pie-certainty") == 3
    with pytest.raises(ValueError):
        layout_bipartite(courses("defined"), with_aggregate_pies=True)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10_000))
def test_membership_conservation(seed):
    family = mixed_family(random.Random(seed), n_elements=7, n_sets=3)
    counts = status_counts(family)
    vague = counts[Status.UNCERTAIN] + counts[Status.PROBABILITY]
    full = layout_bipartite(family, "full-links")
    assert full.count("certain-link") == counts[Status.CERTAIN]
    assert full.count("uncertain-link") == vague
    fans = layout_bipartite(family, "fans")
    assert fans.count("fan-stub") == vague and fans.count("uncertain-link") == 0
    matrix = layout_membership_matrix(family, "plain")
    assert matrix.count("certain-cell") == counts[Status.CERTAIN]
    assert matrix.count("uncertain-cell") == vague


# -- matrices -------------------------------------------------------------------


def test_membership_matrix_variants():
    plain = layout_membership_matrix(toy_enrollment(), "plain")
    assert plain.count("uncertain-cell") == 10
    assert {p.fill for p in plain.with_role("uncertain-cell")} == {75.0}
    small = layout_membership_matrix(toy_enrollment(), "small-marks")
    full_side = plain.with_role("certain-cell")[0].geom["w"]
    assert {round(p.geom["w"] / full_side, 6) for p in small.with_role("uncertain-cell")} == {0.35}


def test_size_color_probability_cell():
    f = SetFamily((SetDef("S"),), (Element("x"),), (Membership("x", "S", probability(0.5)),))
    scene = layout_membership_matrix(f, "size-color")
    (cell,) = scene.with_role("probability-cell")
    style = membership_cell_style(probability(0.5), "size-color")
    assert cell.fill == style.lightness
    assert cell.geom["w"] == pytest.approx(16 * style.size_fraction)


def test_aggregate_matrix_rows_and_borders():
    f = courses("certain")
    scene = layout_aggregate_matrix(f, AggregateSpec("age", "mean"))
    regions = scene.with_role("aggregate-cell")
    assert [p.refs for p in regions] == sorted(p.refs for p in regions)
    assert len(regions) == 5 and scene.count("set-aggregate-cell") == 3
    assert all(p.dash is None for p in regions + scene.with_role("set-aggregate-cell"))
    dashed = layout_aggregate_matrix(courses("defined"), AggregateSpec("age", "mean"))
    assert any(p.dash is not None for p in dashed.with_role("aggregate-cell"))


def test_aggregate_matrix_no_data_cell():
    f = region_family([("A",), ("B",)], 2, [Missing(), Missing()])
    f = SetFamily(f.sets, tuple(Element(e.id, attribute_values={"score": Known(5)}) if e.id.startswith("r1")
                                else e for e in f.elements), f.memberships, f.attributes)
    scene = layout_aggregate_matrix(f, AggregateSpec("score", "mean"))
    cells = {p.refs: p for p in scene.with_role("aggregate-cell")}
    assert cells[("A",)].no_data and not cells[("B",)].no_data


# -- Euler ------------------------------------------------------------------------


@pytest.mark.parametrize("k,regions", [(1, 1), (2, 3), (3, 7)])
def test_template_region_counts(k, regions):
    assert len(template(k).regions) == regions


def test_template_rejects_other_counts():
    with pytest.raises(UnsupportedSetCount):
        template(4)
    four = SetFamily(tuple(SetDef(s) for s in "ABCD"))
    with pytest.raises(UnsupportedSetCount):
        layout_euler(four)


def test_euler_proportion_endpoints():
    f = region_family([("A",), ("B",)], 1, [Known(1)])
    attrs = (AttributeSchema.categorical("kind", ("x", "y")),)
    els = (Element("r0e00", attribute_values={"kind": Known("x")}),
           Element("r1e00", attribute_values={"kind": Known("y")}))
    f = SetFamily(f.sets, els, f.memberships, attrs)
    scene = layout_euler(f, "aggregate", AggregateSpec("kind", "proportion", "x"))
    fills = {p.role: p.fill for p in scene.primitives if p.role.startswith("region:")}
    assert fills["region:{A}"] == 10 and fills["region:{B}"] == 75
    assert scene.with_role("region:{A,B}")[0].no_data


def test_euler_textured_mode():
    spec = AggregateSpec("age", "mean")
    scene = layout_euler(courses("undefined"), "aggregate_textured", spec)
    hatches = [p for p in scene.primitives if p.kind == "hatch"]
    assert len(hatches) == 7
    assert scene.count("disclaimer") == 1
    assert all(p.dash is None for p in scene.primitives if p.role.startswith("region:"))


def test_euler_mode_errors():
    with pytest.raises(ValueError):
        layout_euler(courses("certain"), "aggregate")
    with pytest.raises(ValueError):
        layout_euler(courses("certain"), "sideways")


def test_euler_membership_dots():
    scene = layout_euler(courses("certain"))
    assert scene.count("element-dot") == 16
    assert scene.count("set-outline") == 3


@settings(max_examples=30, deadline=None)
@given(k=st.integers(1, 3), n=st.integers(1, 25), seed=st.integers(0, 1000))
def test_placed_points_stay_in_region(k, n, seed):
    tmpl = template(k)
    sig = random.Random(seed).choice([r.index_signature for r in tmpl.regions])
    for p in place_points(tmpl, sig, n, margin=6.0):
        assert tmpl.contains(sig, p)


@settings(max_examples=20, deadline=None)
@given(seed=st.integers(0, 10_000))
def test_euler_geometry_independent_of_data(seed):
    rng = random.Random(seed)
    a = layout_euler(certain_family(rng, 20, 3), "membership")
    b = layout_euler(certain_family(rng, 5, 3), "membership")
    paths = lambda s: [p.geom["d"] for p in s.primitives if p.role.startswith("region:")]
    assert paths(a) == paths(b)


# -- dot plot -----------------------------------------------------------------------


def test_dotplot_age_classes():
    scene = layout_dotplot(age_classes(), "age")
    c1 = [p for p in scene.primitives if p.role.startswith("dot-") and p.refs[1] == "C1"]
    assert len(c1) == 20 and {p.role for p in c1} == {"dot-known"}
    assert {p.fill for p in c1} == {0.0}
    c2 = [p for p in scene.primitives if p.role.startswith("dot-") and p.refs[1] == "C2"]
    roles = sorted(p.role for p in c2)
    assert roles.count("dot-known") == 15
    assert roles.count("dot-range-known") == 3
    assert roles.count("dot-threshold-known") == 1
    assert roles.count("dot-unknown") == 1
    (unknown,) = scene.with_role("dot-unknown")
    lane_y = unknown.geom["cy"]
    assert all(p.geom["cy"] < lane_y for p in c1)


def test_dotplot_range_bar():
    scene = layout_dotplot(age_classes(), "age")
    y = lambda v: 30 + 240 - (v - 15) / 50 * 240
    ranged = scene.with_role("dot-range-known")[0]
    assert ranged.geom["cy"] == pytest.approx(y(25))
    bars = [p for p in scene.with_role("range-bar") if p.refs == ranged.refs]
    assert bars[0].geom["y1"] == pytest.approx(y(20)) and bars[0].geom["y2"] == pytest.approx(y(30))


def test_dotplot_errors():
    with pytest.raises(TypeError):
        layout_dotplot(courses("certain"), "residency")
    with pytest.raises(KeyError):
        layout_dotplot(courses("certain"), "height")


def test_jitter_is_stable():
    assert jitter("p01") == jitter("p01")
    assert -0.5 <= jitter("anything") < 0.5


def test_layouts_are_deterministic():
    f = toy_enrollment()
    assert layout_bipartite(f, "fans") == layout_bipartite(f, "fans")
    assert layout_membership_matrix(f, "small-marks") == layout_membership_matrix(f, "small-marks")
