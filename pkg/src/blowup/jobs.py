"""Job specifications, trace serialization and replay verification.

A job is one JSON document; every number is exact (an integer or an
"a/b" string). Traces are JSON with one record per step; the DOT chart
tree is always rendered from the JSON, never from live objects.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Mapping

from .basic_object import BasicObject, ResolutionError, ResolutionTrace, basic_object, recompose_problems, transform
from .charts import Locus, Restriction, atlas_to_json, dot_from_json
from .invariants import value_from_json
from .poly import Poly, PolyError, parse
from .strategy import get_strategy, run_resolution

TRACE_FORMAT = "blowup-trace/1"


class JobError(ValueError):
    """Malformed job or trace document (an input error, not an engine failure)."""


def _exact(value, what: str) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise JobError(f"{what}: numbers must be integers or 'a/b' strings, got {value!r}")
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise JobError(f"{what}: {value!r} is not an exact rational") from exc


@dataclass
class JobSpec:
    variables: tuple[str, ...]
    generators: tuple[str, ...]
    b: int = 1
    exceptional: tuple[tuple[int, str], ...] = ()
    strategy: str = "curve"
    max_steps: int = 500
    witness: tuple[Fraction, ...] | None = None
    group: tuple[dict, ...] = ()
    restrict: tuple[tuple[str, tuple[str, ...]], ...] = ()
    format: str = "json"

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> "JobSpec":
        if not isinstance(data, Mapping):
            raise JobError("job must be a JSON object")
        known = {"variables", "generators", "b", "exceptional", "strategy", "max_steps", "witness", "group", "restrict", "format"}
        extra = set(data) - known
        if extra:
            raise JobError(f"unknown job keys {sorted(extra)}")
        for key in ("variables", "generators"):
            if key not in data:
                raise JobError(f"job needs {key!r}")
        variables = data["variables"]
        if not isinstance(variables, list) or not variables or not all(isinstance(v, str) for v in variables):
            raise JobError("variables must be a nonempty list of names")
        if len(set(variables)) != len(variables):
            raise JobError("variables must be distinct")
        gens = data["generators"]
        if not isinstance(gens, list) or not gens or not all(isinstance(g, str) for g in gens):
            raise JobError("generators must be a nonempty list of strings")
        b = data.get("b", 1)
        if isinstance(b, bool) or not isinstance(b, int) or b < 1:
            raise JobError("b must be a positive integer")
        exc = []
        for item in data.get("exceptional", []):
            if not isinstance(item, Mapping) or "label" not in item or "equation" not in item:
                raise JobError("exceptional entries need 'label' and 'equation'")
            exc.append((int(item["label"]), str(item["equation"])))
        witness = data.get("witness")
        if witness is not None:
            if not isinstance(witness, list) or len(witness) != len(variables):
                raise JobError("witness must list one coordinate per variable")
            witness = tuple(_exact(a, "witness") for a in witness)
        max_steps = data.get("max_steps", 500)
        if isinstance(max_steps, bool) or not isinstance(max_steps, int) or max_steps < 0:
            raise JobError("max_steps must be a non-negative integer")
        restrict = []
        for item in data.get("restrict", []):
            if not isinstance(item, Mapping) or "ideal" not in item:
                raise JobError("restrict entries need 'ideal' (and optionally 'chart')")
            restrict.append((str(item.get("chart", "0")), tuple(str(g) for g in item["ideal"])))
        group = data.get("group", [])
        if not isinstance(group, list) or not all(isinstance(g, Mapping) for g in group):
            raise JobError("group must be a list of substitution maps")
        job = cls(
            variables=tuple(variables),
            generators=tuple(gens),
            b=b,
            exceptional=tuple(exc),
            strategy=str(data.get("strategy", "curve")),
            max_steps=max_steps,
            witness=witness,
            group=tuple(dict(g) for g in group),
            restrict=tuple(restrict),
            format=str(data.get("format", "json")),
        )
        job.validate()
        return job

    def validate(self) -> None:
        """Parse every expression once so grammar and ring errors surface before any computation."""
        self.polys()
        self.exceptional_polys()
        self.restriction()
        if self.strategy not in ("curve", "monomial"):
            raise JobError(f"unknown strategy {self.strategy!r}")
        if self.format not in ("json", "dot", "both"):
            raise JobError(f"unknown format {self.format!r}")

    def _parse(self, text: str, what: str) -> Poly:
        try:
            return parse(text, self.variables)
        except PolyError as exc:
            raise JobError(f"{what} {text!r}: {exc}") from exc

    def polys(self) -> tuple[Poly, ...]:
        return tuple(self._parse(g, "generator") for g in self.generators)

    def exceptional_polys(self) -> dict[int, Poly]:
        return {lab: self._parse(eq, f"E{lab}") for lab, eq in self.exceptional}

    def restriction(self) -> Restriction | None:
        if not self.restrict:
            return None
        return Restriction(tuple((cid, tuple(self._parse(g, "restrict ideal") for g in gens)) for cid, gens in self.restrict))

    def basic_object(self) -> BasicObject:
        try:
            return basic_object(self.variables, self.polys(), self.b, self.exceptional_polys() or None)
        except (ValueError, PolyError) as exc:
            if isinstance(exc, JobError):
                raise
            raise JobError(str(exc)) from exc

    def to_json(self) -> dict:
        out: dict[str, Any] = {
            "variables": list(self.variables),
            "generators": list(self.generators),
            "b": self.b,
            "strategy": self.strategy,
            "max_steps": self.max_steps,
        }
        if self.exceptional:
            out["exceptional"] = [{"label": lab, "equation": eq} for lab, eq in self.exceptional]
        if self.witness is not None:
            out["witness"] = [str(a) for a in self.witness]
        if self.group:
            out["group"] = [dict(g) for g in self.group]
        if self.restrict:
            out["restrict"] = [{"chart": cid, "ideal": list(g)} for cid, g in self.restrict]
        return out


def load_job(path: str) -> JobSpec:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise JobError(f"cannot read job {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise JobError(f"job {path} is not valid JSON: {exc}") from exc
    return JobSpec.from_json(data)


def parse_restrict_flag(text: str) -> tuple[str, tuple[str, ...]]:
    """'chart:g1,g2' (chart defaults to the root)."""
    chart, sep, ideal = text.partition(":")
    if not sep:
        chart, ideal = "0", text
    gens = tuple(g.strip() for g in ideal.split(",") if g.strip())
    if not gens:
        raise JobError(f"--restrict {text!r} names no generators")
    return chart.strip() or "0", gens


def parse_witness_flag(text: str) -> tuple[Fraction, ...]:
    return tuple(_exact(a.strip(), "--witness") for a in text.split(","))


# -- traces ------------------------------------------------------------------------


def _m_map(bo: BasicObject) -> dict:
    return {
        chart.id: [[comp.label, m] for comp, m in zip(chart.components, bo.cert[chart.id])]
        for chart in bo.pair.charts
    }


def trace_to_json(job: JobSpec, trace: ResolutionTrace) -> dict:
    vars = job.variables
    steps = []
    for i, rec in enumerate(trace.records):
        after = trace.states[i + 1]
        steps.append(
            {
                "step": rec.step,
                "label": rec.label,
                "max_f": rec.max_value.to_json(),
                "max_f_text": str(rec.max_value),
                "dimension": rec.dimension,
                "center": {cid: [l.to_json(vars) for l in loci] for cid, loci in rec.center.items()},
                "c": [{"chart": e["chart"], "child": e["child"], "c": e["c"]} for e in rec.c_values],
                "m": _m_map(after),
            }
        )
    final = trace.final
    return {
        "format": TRACE_FORMAT,
        "job": job.to_json(),
        "strategy": trace.strategy,
        "terminal": trace.terminal,
        "steps": steps,
        "final": {
            "ideals": {c.id: [str(g) for g in final.ideals[c.id]] for c in final.pair.charts},
            "m": _m_map(final),
        },
        "recompose_check": not recompose_problems(final),
        "charts": atlas_to_json(final.pair),
    }


def dumps(doc: Mapping) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def trace_dot(doc: Mapping) -> str:
    return dot_from_json(doc["charts"])


def trace_summary(doc: Mapping) -> str:
    lines = [f"strategy {doc['strategy']}, {len(doc['steps'])} steps, terminal {doc['terminal']}"]
    for s in doc["steps"]:
        centers = "; ".join(
            f"{cid}: " + ", ".join(_locus_text(l) for l in loci) for cid, loci in s["center"].items()
        )
        cs = sorted({e["c"] for e in s["c"]})
        lines.append(f"{s['step']:>3}  E{s['label']:<3} {s['max_f_text']:<16} dim {s['dimension']}  c={cs}  {centers}")
    lines.append(f"recompose_check {'pass' if doc.get('recompose_check') else 'fail'}")
    return "\n".join(lines) + "\n"


def _locus_text(data: Mapping) -> str:
    if "hypersurface" in data:
        return f"V({data['hypersurface']})"
    t = data.get("translation")
    return "{" + ", ".join(data["coords"]) + ("} + (" + ", ".join(t) + ")" if t else "}")


# -- replay ------------------------------------------------------------------------


@dataclass
class ReplayReport:
    checks: list[dict] = field(default_factory=list)

    def add(self, check: str, ok: bool, detail: str = "", step: int | None = None) -> None:
        self.checks.append({"step": step, "check": check, "status": "pass" if ok else "fail", "detail": detail})

    @property
    def ok(self) -> bool:
        return all(c["status"] == "pass" for c in self.checks)

    def to_json(self) -> dict:
        return {"ok": self.ok, "checks": self.checks}


def replay_trace(doc: Mapping, recompute: bool = True) -> tuple[ReplayReport, ResolutionTrace | None]:
    """Re-run a serialized trace from its job and recorded centers.

    Every recorded c is fed back and compared with the exceptional
    multiplicity of the pulled-back ideal; recorded certificates, final
    ideals and (with ``recompute``) the strategy's max f and centers are
    compared with fresh computations.
    """
    if doc.get("format") != TRACE_FORMAT:
        raise JobError(f"not a trace document (format {doc.get('format')!r})")
    job = JobSpec.from_json(doc["job"])
    bo = job.basic_object()
    vars = job.variables
    strategy = get_strategy(doc.get("strategy", job.strategy))
    state = strategy.initial_state(bo)
    restriction = job.restriction()
    report = ReplayReport()
    states, records = [bo], []
    if recompute:
        strategy.check(bo)
    for s in doc["steps"]:
        i = s["step"]
        try:
            center = {cid: [Locus.from_json(l, vars) for l in loci] for cid, loci in s["center"].items()}
        except (PolyError, KeyError, ValueError) as exc:
            raise JobError(f"step {i}: bad center: {exc}") from exc
        if recompute:
            prop = strategy.propose(bo, state, restriction)
            if prop is None:
                report.add("max f recomputed", False, "strategy finds Sing empty", i)
                return report, None
            recorded = value_from_json(s["max_f"])
            report.add("max f recomputed", prop.value == recorded, f"recorded {recorded}, recomputed {prop.value}", i)
            same = set(prop.center) == set(center) and all(
                len(prop.center[c]) == len(center[c])
                and all(any(a.same_as(b, vars) for b in center[c]) for a in prop.center[c])
                for c in center
            )
            report.add("center recomputed", same, "", i)
            state = prop.state
        overrides = {(e["chart"], e["child"]): int(e["c"]) for e in s["c"]}
        try:
            bo, rec = transform(bo, center, label=s["label"], step=i, c_override=overrides, restriction=restriction)
        except ResolutionError as exc:
            report.add("controlled transform", False, str(exc), i)
            return report, None
        drift = [e for e in rec.c_values if "c_computed" in e]
        report.add(
            "c equals exceptional multiplicity",
            not drift,
            "; ".join(f"{e['chart']}->{e['child']}: recorded {e['c']}, computed {e['c_computed']}" for e in drift),
            i,
        )
        missing = set(overrides) - {(e["chart"], e["child"]) for e in rec.c_values}
        report.add("c entries match charts", not missing, f"unused entries {sorted(missing)}" if missing else "", i)
        report.add("certificate m", _m_map(bo) == s["m"], "", i)
        rec.max_value = value_from_json(s["max_f"])
        rec.dimension = s["dimension"]
        records.append(rec)
        states.append(bo)
    final = doc["final"]
    ideals_now = {c.id: [str(g) for g in bo.ideals[c.id]] for c in bo.pair.charts}
    report.add("final ideals", ideals_now == final["ideals"])
    report.add("final certificate", _m_map(bo) == final["m"])
    problems = recompose_problems(bo)
    stored = _stored_state(bo, final, vars)
    if stored is not None:
        problems = problems + recompose_problems(stored)
    report.add("recompose_check", not problems, "; ".join(problems))
    if doc.get("terminal") and recompute and restriction is None:
        report.add("terminal", strategy.propose(bo, state, None) is None)
    trace = ResolutionTrace(strategy.name, states, records, terminal=bool(doc.get("terminal")))
    return report, trace


def _stored_state(bo: BasicObject, final: Mapping, vars) -> BasicObject | None:
    """The replayed atlas carrying the recorded final ideals and certificate, if they parse."""
    try:
        ideals = {cid: tuple(parse(g, vars) for g in gens) for cid, gens in final["ideals"].items()}
        cert = {cid: tuple(int(m) for _, m in pairs) for cid, pairs in final["m"].items()}
    except (PolyError, ValueError, TypeError):
        return None
    if set(ideals) != {c.id for c in bo.pair.charts} or set(cert) != set(ideals):
        return None
    return BasicObject(bo.pair, bo.b, ideals, cert, bo.original)


def run_job(job: JobSpec, workers: int = 1) -> ResolutionTrace:
    return run_resolution(job.basic_object(), get_strategy(job.strategy), job.max_steps, job.restriction(), workers)
