"""Example corpus: small job documents with known behaviour.

Each entry is a plain JobSpec JSON object; ``load(name)`` validates it.
"""

from __future__ import annotations

from .jobs import JobSpec

_XY = ["x", "y"]
_E12 = [{"label": 1, "equation": "x"}, {"label": 2, "equation": "y"}]

JOBS: dict[str, dict] = {
    "cusp": {"variables": _XY, "generators": ["x^2 - y^3"], "b": 1, "strategy": "curve"},
    "cusp_b2": {"variables": _XY, "generators": ["x^2 - y^3"], "b": 2, "strategy": "curve"},
    "cusp_b3": {"variables": _XY, "generators": ["x^2 - y^3"], "b": 3, "strategy": "curve"},
    "node": {"variables": _XY, "generators": ["x^2 - y^2"], "b": 1, "strategy": "curve"},
    "tacnode": {"variables": _XY, "generators": ["x^2 - y^4"], "b": 1, "strategy": "curve", "group": [{"x": "-x"}]},
    "parabola": {"variables": _XY, "generators": ["y - x^2"], "b": 1, "strategy": "curve"},
    "cross_b2": {"variables": _XY, "generators": ["x*y"], "b": 2, "strategy": "curve", "group": [{"x": "y", "y": "x"}]},
    "mono_x3y_b2": {"variables": _XY, "generators": ["x^3*y"], "b": 2, "exceptional": _E12, "strategy": "monomial"},
    "mono_x2_b2": {
        "variables": _XY,
        "generators": ["x^2"],
        "b": 2,
        "exceptional": [{"label": 1, "equation": "x"}],
        "strategy": "monomial",
    },
    "mono_x2y": {"variables": _XY, "generators": ["x^2*y"], "b": 1, "exceptional": _E12, "strategy": "monomial"},
}

# runs that should end with J = O everywhere (b = 1 principalizations)
PRINCIPALIZED = ("cusp", "node", "tacnode", "parabola", "mono_x2y")


def load(name: str) -> JobSpec:
    return JobSpec.from_json(JOBS[name])


def names() -> list[str]:
    return list(JOBS)
