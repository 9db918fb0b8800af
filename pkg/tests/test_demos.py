import json
import pathlib
import subprocess
import sys

import pytest

from blowup import corpus

DEMOS = pathlib.Path(__file__).resolve().parent.parent / "demos"


@pytest.mark.parametrize("script", sorted(p.name for p in DEMOS.glob("*.py")))
def test_demo_runs(script):
    proc = subprocess.run([sys.executable, str(DEMOS / script)], capture_output=True, text=True, timeout=300)
    assert proc.returncode == 0, proc.stderr[-2000:]


def test_job_files_match_corpus():
    files = {p.stem: json.loads(p.read_text()) for p in (DEMOS / "jobs").glob("*.json")}
    assert files == corpus.JOBS
