import json
import subprocess
import sys

import pytest

from blowup.cli import main

CUSP = {"variables": ["x", "y"], "generators": ["x^2 - y^3"], "b": 1, "strategy": "curve"}
MONO = {
    "variables": ["x", "y"],
    "generators": ["x^2*y"],
    "b": 1,
    "exceptional": [{"label": 1, "equation": "x"}, {"label": 2, "equation": "y"}],
    "strategy": "monomial",
}


@pytest.fixture
def job(tmp_path):
    def write(data, name="job.json"):
        path = tmp_path / name
        path.write_text(json.dumps(data) if not isinstance(data, str) else data)
        return str(path)

    return write


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_resolve_and_verify(job, tmp_path, capsys):
    code, out, _ = run(["resolve", job(CUSP)], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["format"] == "blowup-trace/1" and doc["terminal"] and doc["recompose_check"]
    assert doc["steps"][0]["max_f_text"] == "P(2,0,3/2)"
    trace = tmp_path / "trace.json"
    trace.write_text(out)
    code, out, _ = run(["verify", str(trace)], capsys)
    assert code == 0 and json.loads(out)["ok"]


def test_tampered_multiplicity_is_caught(job, tmp_path, capsys):
    _, out, _ = run(["resolve", job(CUSP)], capsys)
    doc = json.loads(out)
    doc["steps"][0]["c"][0]["c"] += 1
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    code, out, _ = run(["verify", str(bad)], capsys)
    assert code == 2
    failed = [c for c in json.loads(out)["checks"] if c["status"] == "fail"]
    assert failed


def test_principalize_certificate(job, capsys):
    code, out, _ = run(["principalize", job(MONO)], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["recompose_check"] and doc["steps"] == 3
    assert all(c["residual_unit"] for c in doc["charts"].values())


def test_principalize_needs_b_one(job, capsys):
    code, _, err = run(["principalize", job(dict(CUSP, b=2))], capsys)
    assert code == 3 and "b = 1" in err


def test_desing_and_verify(job, tmp_path, capsys):
    code, out, _ = run(["desing", job(CUSP)], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["k"] == 3
    path = tmp_path / "desing.json"
    path.write_text(out)
    code, out, _ = run(["verify", str(path)], capsys)
    assert code == 0
    assert {e["check"] for e in json.loads(out)["ledger"]} >= {"smooth", "ncd"}


def test_desing_bad_witness_is_engine_error(job, capsys):
    code, _, err = run(["desing", job(CUSP), "--witness", "0,0"], capsys)
    assert code == 2 and "singular" in err


@pytest.mark.parametrize(
    "data, needle",
    [
        ('{"variables": ["x","y"], "generators": ["x^^2"]}', "input error"),
        ('{"variables": ["x","y"]}', "generators"),
        ('{"variables": ["x","y"], "generators": ["x"], "b": 0}', "b must"),
        ('{"variables": ["x","y"], "generators": ["x"], "colour": 1}', "unknown"),
        ("not json", "input error"),
    ],
)
def test_input_errors_exit_3(job, capsys, data, needle):
    code, _, err = run(["resolve", job(data)], capsys)
    assert code == 3 and needle in err


def test_wrong_strategy_is_engine_error(job, capsys):
    code, _, err = run(["resolve", job(CUSP), "--strategy", "monomial"], capsys)
    assert code == 2 and "engine error" in err


def test_restrict_flag(job, capsys):
    code, out, _ = run(["resolve", job(CUSP), "--restrict", "0:x,y"], capsys)
    assert code == 0
    assert len(json.loads(out)["steps"]) == 1


def test_dot_and_out_dir(job, tmp_path, capsys):
    code, out, _ = run(["resolve", job(CUSP), "--format", "dot"], capsys)
    assert code == 0 and out.startswith("digraph")
    outdir = tmp_path / "o"
    code, _, _ = run(["resolve", job(CUSP), "--format", "both", "--out", str(outdir)], capsys)
    assert code == 0
    assert sorted(p.name for p in outdir.iterdir()) == ["trace.dot", "trace.json"]


def test_trace_rendering(job, tmp_path, capsys):
    _, out, _ = run(["resolve", job(CUSP)], capsys)
    path = tmp_path / "t.json"
    path.write_text(out)
    code, text, _ = run(["trace", str(path)], capsys)
    assert code == 0 and "P(2,0,3/2)" in text
    code, again, _ = run(["trace", str(path), "--format", "json"], capsys)
    assert json.loads(again) == json.loads(out)


def test_workers_do_not_change_output(job, capsys):
    path = job(CUSP)
    _, one, _ = run(["resolve", path, "--workers", "1"], capsys)
    _, four, _ = run(["resolve", path, "--workers", "4"], capsys)
    assert one == four


def test_group_runs_harness(job, capsys):
    data = {"variables": ["x", "y"], "generators": ["x*y"], "b": 2, "group": [{"x": "y", "y": "x"}]}
    code, out, _ = run(["resolve", job(data)], capsys)
    assert code == 0 and json.loads(out)["equivariance"]["ok"]


def test_module_entry_point(job):
    proc = subprocess.run([sys.executable, "-m", "blowup", "resolve", job(CUSP)], capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["terminal"]
