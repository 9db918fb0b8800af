from fractions import Fraction

import pytest

from blowup.charts import (
    ChartError,
    Locus,
    PermissibilityError,
    Restriction,
    atlas_to_dot,
    atlas_to_json,
    blow_up,
    chart_map,
    dot_from_json,
    is_permissible,
    lift_point,
    ncd_check,
    pair_ncd_problems,
    push_point,
    root_pair,
)
from blowup.poly import parse, substitute

XY = ("x", "y")
XYZ = ("x", "y", "z")


def P(t, vars=XY):
    return parse(t, vars)


def origin_blowup(exceptional=None):
    pair = root_pair(XY, exceptional)
    return pair, blow_up(pair, {"0": [Locus.at_point(XY, (0, 0))]}, pair.next_label())


def test_origin_blowup_charts():
    _, p1 = origin_blowup()
    a, b = p1.chart("0.1"), p1.chart("0.2")
    assert {v: str(q) for v, q in a.subs.items()} == {"x": "x", "y": "x*y"}
    assert {v: str(q) for v, q in b.subs.items()} == {"x": "x*y", "y": "y"}
    assert [(c.label, str(c.poly)) for c in a.components] == [(1, "x")]
    assert [(c.label, str(c.poly)) for c in b.components] == [(1, "y")]
    assert p1.leaf_ids() == ["0.1", "0.2"]


def test_cusp_total_transform():
    _, p1 = origin_blowup()
    f = P("x^2 - y^3")
    assert substitute(f, p1.chart("0.2").to_root) == P("x^2*y^2 - y^3")


def test_codim_two_in_three_space_leaves_z_alone():
    pair = root_pair(XYZ)
    p1 = blow_up(pair, {"0": [Locus(coords=("x", "y"))]}, 1)
    assert len(p1.charts) == 2
    for ch in p1.charts:
        assert str(ch.subs["z"]) == "z"


def test_hypersurface_center_is_one_identity_chart():
    pair = root_pair(XY)
    p1 = blow_up(pair, {"0": [Locus(coords=("x",))]}, 1)
    (ch,) = p1.charts
    assert all(str(ch.subs[v]) == v for v in XY)
    assert [(c.label, str(c.poly)) for c in ch.components] == [(1, "x")]


def test_translated_point_center():
    pair = root_pair(XY)
    p1 = blow_up(pair, {"0": [Locus.at_point(XY, (1, 2))]}, 1)
    ch = p1.chart("0.1")
    assert str(ch.subs["x"]) == "x + 1" and str(ch.subs["y"]) == "x*y + 2"


def test_push_and_lift_points():
    pair, p1 = origin_blowup()
    assert lift_point(pair, p1, (1, 1), "0") == [("0.1", (1, 1)), ("0.2", (1, 1))]
    assert lift_point(pair, p1, (0, 1), "0") == [("0.2", (0, 1))]
    assert push_point(p1, "0.2", (Fraction(1, 2), 3)) == (Fraction(3, 2), 3)
    with pytest.raises(ChartError):
        lift_point(pair, p1, (0, 0), "0")


def test_chart_map_composes_from_ancestor():
    _, p1 = origin_blowup()
    p2 = blow_up(p1, {"0.2": [Locus.at_point(XY, (0, 0))]}, 2)
    m = chart_map(p2, "0", "0.2.1")
    assert str(m["x"]) == "x^2*y" and str(m["y"]) == "x*y"


def test_ncd_check():
    pair = root_pair(XY, {1: P("x"), 2: P("y")})
    assert ncd_check(pair, "0", (0, 0))
    single = root_pair(XY, {1: P("x")})
    assert not ncd_check(single, "0", (0, 0), [P("x - y^2")])
    assert ncd_check(single, "0", (0, 0), [P("y")])


def test_pair_stays_ncd_after_blowups():
    _, p1 = origin_blowup({1: P("x"), 2: P("y")})
    assert pair_ncd_problems(p1) == []


def test_permissibility():
    assert is_permissible(root_pair(XY), {"0": [Locus.at_point(XY, (0, 0))]})
    assert is_permissible(root_pair(XY, {1: P("x")}), {"0": [Locus.at_point(XY, (0, 0))]})
    tangent = root_pair(XY, {1: P("y - x^2")})
    assert not is_permissible(tangent, {"0": [Locus(hypersurface=P("y"))]})
    singular = root_pair(XY)
    assert not is_permissible(singular, {"0": [Locus(hypersurface=P("x^2 - y^3"))]})
    with pytest.raises(PermissibilityError):
        blow_up(singular, {"0": [Locus(hypersurface=P("x^2 - y^3"))]}, 1)


def test_center_through_a_crossing_of_curved_components():
    pair = root_pair(XY, {1: P("y - x^2"), 2: P("x")})
    # the line y = 0 passes through E1 ∩ E2 = origin: three components meet
    assert not is_permissible(pair, {"0": [Locus(hypersurface=P("y + x"))]})


def test_restriction_view():
    pair, p1 = origin_blowup()
    r = Restriction((("0", (P("x"), P("y"))),))
    assert r.excludes(pair, "0", (0, 0))
    assert not r.excludes(pair, "0", (0, 1))
    # in the blow-up the avoided origin pulls back to the exceptional line
    assert r.excludes(p1, "0.1", (0, 5))
    assert r.restrict_locus(p1, "0.1", Locus(coords=("x",))) is None
    assert r.restrict_locus(p1, "0.1", Locus(coords=("y",))) is not None
    assert not Restriction()


def test_restrict_hypersurface_drops_avoided_factors():
    pair = root_pair(XY)
    r = Restriction((("0", (P("x"),)),))
    loc = r.restrict_locus(pair, "0", Locus(hypersurface=P("x*(y - 1)")))
    assert str(loc.hypersurface) == "y - 1"


def test_json_and_dot_export():
    _, p1 = origin_blowup()
    data = atlas_to_json(p1)
    assert data["leaves"] == ["0.1", "0.2"]
    dot = dot_from_json(data)
    assert dot.startswith("digraph charts {") and '"0" -> "0.1";' in dot
    assert atlas_to_dot(p1) == dot


def test_locus_json_roundtrip():
    loc = Locus(coords=("x",), point=(Fraction(1, 2), Fraction(0)))
    back = Locus.from_json(loc.to_json(XY), XY)
    assert back.same_as(loc, XY)
    hyp = Locus(hypersurface=P("x*y - 1"))
    assert str(Locus.from_json(hyp.to_json(XY), XY).hypersurface) == "x*y - 1"
