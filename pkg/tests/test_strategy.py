from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from blowup.basic_object import basic_object, recompose_check
from blowup.charts import Locus
from blowup.invariants import Monomial, Positive, best_monomial_witness, value_from_json
from blowup.poly import parse
from blowup.strategy import (
    CurveStrategy,
    Marking,
    MonomialStrategy,
    StrategyError,
    get_strategy,
    locality_check,
    run_resolution,
)

XY = ("x", "y")
XYZ = ("x", "y", "z")


def P(t, vars=XY):
    return parse(t, vars)


def curve(text, b=1):
    return basic_object(XY, [P(text)], b)


# -- the value set ------------------------------------------------------------

values = st.one_of(
    st.builds(Positive, st.integers(1, 3), st.integers(0, 2), st.fractions(0, 4, max_denominator=3)),
    st.builds(
        Monomial,
        st.integers(-3, -1),
        st.fractions(1, 4, max_denominator=3),
        st.lists(st.integers(1, 4), max_size=3).map(lambda l: tuple(sorted(l, reverse=True))),
    ),
)


@given(values, values, values)
@settings(max_examples=200, deadline=None)
def test_total_order(a, b, c):
    assert (a < b) + (b < a) + (a == b) == 1
    if a <= b and b <= c:
        assert a <= c
    assert value_from_json(a.to_json()) == a


def test_positive_beats_monomial():
    assert Positive(1, 0, 0) > Monomial(-1, 100, (99,))
    assert str(Positive(2, 0, Fraction(3, 2))) == "P(2,0,3/2)"
    assert str(Monomial(-2, 1, (2, 1))) == "M(-2,1,[2,1])"
    with pytest.raises(ValueError):
        Positive(0)


@pytest.mark.parametrize(
    "exps, b, expected",
    [
        ({1: 1, 2: 1}, 2, Monomial(-2, 1, (2, 1))),
        ({1: 3}, 2, Monomial(-1, Fraction(3, 2), (1,))),
        ({1: 3, 2: 1}, 2, Monomial(-1, Fraction(3, 2), (1,))),
        ({1: 1}, 2, None),
    ],
)
def test_monomial_witness(exps, b, expected):
    assert best_monomial_witness(exps, b) == expected


# -- monomial strategy ----------------------------------------------------------


def mono(exps, b, vars=XY):
    names = vars[: len(exps)]
    gen = P("*".join(f"{v}^{a}" for v, a in zip(names, exps)) or "1", vars)
    return basic_object(vars, [gen], b, {i + 1: P(v, vars) for i, v in enumerate(names)})


def test_monomial_example_run():
    tr = run_resolution(mono((3, 1), 2), MonomialStrategy())
    assert [str(v) for v in tr.max_values] == ["M(-1,3/2,[1])", "M(-2,1,[3,2])"]
    assert tr.records[0].dimension == 1 and tr.records[1].dimension == 0
    assert tr.terminal and recompose_check(tr.final)


def test_monomial_center_is_the_intersection():
    bo = mono((1, 1), 2)
    prop = MonomialStrategy().propose(bo, None)
    assert prop.value == Monomial(-2, 1, (2, 1))
    assert prop.center["0"][0].same_as(Locus.at_point(XY, (0, 0)), XY)


def test_unit_free_monomial_single_step():
    tr = run_resolution(mono((2,), 2), MonomialStrategy())
    assert len(tr.records) == 1


def test_monomial_three_dimensional():
    tr = run_resolution(mono((2, 1, 1), 2, XYZ), MonomialStrategy())
    assert tr.terminal and recompose_check(tr.final)
    vals = tr.max_values
    assert all(a > b for a, b in zip(vals, vals[1:]))


def test_monomial_strategy_rejects_residual():
    with pytest.raises(StrategyError):
        MonomialStrategy().check(curve("x^2 - y^3"))


# -- curve strategy -------------------------------------------------------------


def test_cusp_values_and_centers():
    tr = run_resolution(curve("x^2 - y^3"), CurveStrategy())
    assert [str(v) for v in tr.max_values[:4]] == ["P(2,0,3/2)", "P(1,1,2)", "P(1,1,1)", "P(1,0,0)"]
    assert [r.dimension for r in tr.records[:4]] == [0, 0, 0, 1]
    # step 1: the tangency point of x^2 - y with the first exceptional line y = 0
    assert tr.states[1].residual("0.2")[0] == (P("x^2 - y"),)
    assert list(tr.records[1].center) == ["0.2"]
    assert tr.records[1].center["0.2"][0].as_point(XY) == (0, 0)
    assert all(isinstance(v, Monomial) for v in tr.max_values[4:])
    assert tr.terminal and recompose_check(tr.final)


def test_curve_value_at_points():
    s = CurveStrategy()
    bo = curve("x^2 - y^3")
    assert s.curve_value(bo, Marking(), "0", (0, 0)) == Positive(2, 0, Fraction(3, 2))
    assert s.curve_value(bo, Marking(), "0", (1, 1)) == Positive(1, 0, 0)
    assert s.curve_value(bo, Marking(), "0", (1, 0)) is None


def test_smooth_curve_single_divisorial_step():
    tr = run_resolution(curve("y - x^2"), CurveStrategy())
    assert [str(v) for v in tr.max_values] == ["P(1,0,0)"]
    assert tr.records[0].center["0"][0].is_hypersurface


@pytest.mark.parametrize(
    "text, b, expected",
    [
        ("x^2 - y^2", 1, ["P(2,0,1)", "P(1,1,1)", "P(1,0,0)", "M(-1,1,[2])", "M(-1,1,[1])"]),
        ("x^2 - y^4", 1, ["P(2,0,2)", "P(2,0,1)", "P(1,1,1)", "P(1,0,0)"]),
        ("x*y", 2, ["P(2,0,1)"]),
        ("x^2 - y^3", 3, []),
    ],
)
def test_curve_runs(text, b, expected):
    tr = run_resolution(curve(text, b), CurveStrategy())
    got = [str(v) for v in tr.max_values]
    assert got[: len(expected)] == expected
    assert all(a > b for a, b in zip(tr.max_values, tr.max_values[1:]))
    assert tr.terminal and recompose_check(tr.final)


def test_marking_freezes_labels_when_w_drops():
    m = Marking().update(2, {})
    assert m.eminus == frozenset()
    assert m.update(2, {1}) is m
    m2 = m.update(1, {1, 2})
    assert m2.eminus == {1, 2} and m2.frozen_w == 1
    with pytest.raises(StrategyError):
        m2.update(3, set())


def test_curve_strategy_applicability():
    with pytest.raises(StrategyError):
        CurveStrategy().check(basic_object(XYZ, [P("x*y", XYZ)], 1))
    with pytest.raises(StrategyError):
        CurveStrategy().check(basic_object(XY, [P("x"), P("y")], 1))
    with pytest.raises(StrategyError):
        get_strategy("nope")


def test_max_steps_guard():
    with pytest.raises(StrategyError, match="steps"):
        run_resolution(curve("x^2 - y^3"), CurveStrategy(), max_steps=2)


def test_upper_semicontinuity_on_samples():
    """{f >= alpha} contains every specialization: values never rise away from a point."""
    s = CurveStrategy()
    tr = run_resolution(curve("x^2 - y^3"), s)
    for i, state in enumerate(tr.states[:-1]):
        marking = tr.strategy_states[i]
        for chart in state.pair.charts:
            for v, pt in _nearby_sing_values(s, state, marking, chart.id):
                assert v <= tr.records[i].max_value


def _nearby_sing_values(s, state, marking, cid):
    from blowup import plane

    zs = plane.common_zeros(state.sing_ideal(cid))
    pts = list(zs.points)
    if zs.curve is not None:
        pts += plane.sample_curve_points(zs.curve, limit=4)
    for pt in pts:
        v = s.value(state, marking, cid, pt)
        if v is not None:
            yield v, pt


# -- locality -------------------------------------------------------------------


def test_locality_cusp_away_from_origin():
    rep = locality_check(curve("x^2 - y^3"), [("0", (P("x"), P("y")))], CurveStrategy())
    assert rep.ok, rep.mismatches
    assert rep.restricted_steps == 1
    assert rep.neglected_steps[:3] == [0, 1, 2]


def test_locality_trivial_restriction():
    rep = locality_check(curve("x^2 - y^3"), [("0", (P("1"),))], CurveStrategy())
    assert rep.ok and rep.neglected_steps == []


def test_locality_monomial_away_from_first_component():
    bo = mono((3, 1), 2)
    rep = locality_check(bo, [("0", (P("x"),))], MonomialStrategy())
    assert rep.ok
    assert 0 in rep.neglected_steps
