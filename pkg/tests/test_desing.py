import pytest

from blowup.desing import (
    DesingError,
    desingularize,
    find_witness,
    result_at,
    smooth_value,
    strict_transform_at,
    verify_embedded,
)
from blowup.invariants import Positive
from blowup.poly import parse

XY = ("x", "y")


def P(t):
    return parse(t, XY)


def test_smooth_value_of_a_curve():
    assert smooth_value([P("x^2 - y^3")], (1, 1)) == Positive(1, 0, 0)
    assert smooth_value([P("x^2 - y^3")]) == Positive(1, 0, 0)
    assert find_witness([P("y - x^2")]) is not None


def test_smooth_value_errors():
    with pytest.raises(DesingError, match="not on X"):
        smooth_value([P("x^2 - y^3")], (1, 0))
    with pytest.raises(DesingError, match="singular"):
        smooth_value([P("x^2 - y^3")], (0, 0))


@pytest.mark.parametrize("text, k", [("x^2 - y^3", 3), ("x^2 - y^2", 2), ("y - x^2", 0), ("x^2 - y^4", 3)])
def test_stage_and_ledger(text, k):
    res = desingularize([P(text)])
    assert res.k == k
    assert res.a_d == Positive(1, 0, 0)
    assert res.ok, [e.to_json() for e in res.ledger]
    assert {e.check for e in res.ledger} >= {"smooth", "ncd", "centers over Sing(X)"}


def test_cusp_strict_transform_is_transversal_line():
    res = desingularize([P("x^2 - y^3")])
    strict = strict_transform_at(res.trace, res.k)
    assert any(not p.is_constant() and p.total_degree() == 1 for p in strict.values())
    assert res.labels == [1, 2, 3]


def test_one_stage_early_fails_normal_crossings():
    gens = [P("x^2 - y^3")]
    res = desingularize(gens, continue_full=True)
    early = result_at(res.full_trace, res.k - 1, res.a_d)
    ledger = {e.check: e for e in verify_embedded(early, gens)}
    assert ledger["smooth"].status == "pass"
    assert ledger["ncd"].status == "fail"
    assert any("E1 ∩ E2" in w for w in ledger["ncd"].witnesses)


def test_full_run_continues_to_principalization():
    res = desingularize([P("x^2 - y^3")], continue_full=True)
    assert res.full_trace.terminal
    assert len(res.full_trace.records) > res.k


def test_non_reduced_input_is_rejected():
    with pytest.raises(DesingError, match="reduced"):
        desingularize([P("(x - y)^2")])
    with pytest.raises(DesingError):
        desingularize([P("x"), P("y")])


def test_json_shape():
    data = desingularize([P("x^2 - y^2")]).to_json()
    assert data["k"] == 2 and data["a_d"] == Positive(1, 0, 0).to_json()
    assert all(e["status"] == "pass" for e in data["ledger"])
