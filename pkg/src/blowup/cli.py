"""Command line: resolve, principalize, desing, verify, trace.

Exit codes: 0 success, 2 engine error, 3 input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import replace

from .basic_object import ResolutionError, recompose_problems
from .charts import ChartError
from .desing import desingularize, result_at, verify_embedded
from .equivariance import ChartAutomorphism, EquivarianceError, equivariance_harness
from .jobs import (
    JobError,
    JobSpec,
    dumps,
    load_job,
    parse_restrict_flag,
    parse_witness_flag,
    replay_trace,
    run_job,
    trace_dot,
    trace_summary,
    trace_to_json,
)
from .plane import IrrationalPointError
from .poly import PolyError

EXIT_OK, EXIT_ENGINE, EXIT_INPUT = 0, 2, 3
ENGINE_ERRORS = (ResolutionError, ChartError, IrrationalPointError, EquivarianceError)


def _job(args) -> JobSpec:
    job = load_job(args.job)
    changes = {}
    if args.strategy:
        changes["strategy"] = args.strategy
    if args.max_steps is not None:
        changes["max_steps"] = args.max_steps
    if args.restrict:
        changes["restrict"] = tuple(parse_restrict_flag(r) for r in args.restrict)
    if getattr(args, "witness", None):
        changes["witness"] = parse_witness_flag(args.witness)
    if args.format:
        changes["format"] = args.format
    if changes:
        job = replace(job, **changes)
        job.validate()
    return job


def _emit(args, name: str, doc: dict, dot: str | None = None) -> None:
    fmt = args.format or "json"
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        if fmt in ("json", "both"):
            with open(os.path.join(args.out, f"{name}.json"), "w", encoding="utf-8") as fh:
                fh.write(dumps(doc))
        if dot is not None and fmt in ("dot", "both"):
            with open(os.path.join(args.out, f"{name}.dot"), "w", encoding="utf-8") as fh:
                fh.write(dot)
        return
    if fmt == "dot" and dot is not None:
        sys.stdout.write(dot)
    else:
        sys.stdout.write(dumps(doc))


def cmd_resolve(args) -> int:
    job = _job(args)
    trace = run_job(job, args.workers)
    doc = trace_to_json(job, trace)
    if job.group:
        gens = [ChartAutomorphism.from_strings(job.variables, g) for g in job.group]
        doc["equivariance"] = equivariance_harness(job.basic_object(), gens, job.strategy, max_steps=job.max_steps).to_json()
    _emit(args, "trace", doc, trace_dot(doc))
    return EXIT_OK if trace.terminal else EXIT_ENGINE


def cmd_principalize(args) -> int:
    job = _job(args)
    if job.b != 1:
        raise JobError("principalization certificates are defined for b = 1")
    trace = run_job(job, args.workers)
    final = trace.final
    problems = recompose_problems(final)
    charts = {}
    for chart in final.pair.charts:
        gens = final.ideals[chart.id]
        charts[chart.id] = {
            "monomial": [[c.label, str(c.poly), m] for c, m in zip(chart.components, final.cert[chart.id]) if m],
            "residual": [str(g) for g in gens],
            "residual_unit": all(g.is_constant() and not g.is_zero() for g in gens),
        }
    unit = all(c["residual_unit"] for c in charts.values())
    doc = {
        "statement": "pullback of J0 = product of E-components to the powers m, times a unit ideal",
        "job": job.to_json(),
        "steps": len(trace.records),
        "terminal": trace.terminal,
        "recompose_check": not problems,
        "problems": problems,
        "charts": charts,
        "trace": trace_to_json(job, trace),
    }
    _emit(args, "certificate", doc, trace_dot(doc["trace"]))
    return EXIT_OK if trace.terminal and unit and not problems else EXIT_ENGINE


def cmd_desing(args) -> int:
    job = _job(args)
    if job.b != 1:
        raise JobError("embedded desingularization runs with b = 1")
    res = desingularize(job.polys(), job.strategy, job.witness, continue_full=args.full, max_steps=job.max_steps, workers=args.workers)
    doc = res.to_json()
    doc["job"] = job.to_json()
    doc["trace"] = trace_to_json(job, _prefix(res.trace, res.k))
    _emit(args, "desing", doc, trace_dot(doc["trace"]))
    return EXIT_OK if res.ok else EXIT_ENGINE


def _prefix(trace, k):
    from .basic_object import ResolutionTrace

    return ResolutionTrace(trace.strategy, trace.states[: k + 1], trace.records[:k], terminal=False)


def cmd_verify(args) -> int:
    try:
        with open(args.file, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise JobError(f"cannot read {args.file}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise JobError(f"{args.file} is not valid JSON: {exc}") from exc
    if "ledger" in doc and "trace" in doc:
        report, trace = replay_trace(doc["trace"])
        out = report.to_json()
        if trace is not None:
            from .invariants import value_from_json

            job = JobSpec.from_json(doc["job"])
            res = result_at(trace, int(doc["k"]), value_from_json(doc["a_d"]))
            ledger = verify_embedded(res, job.polys())
            out["ledger"] = [e.to_json() for e in ledger]
            out["ok"] = out["ok"] and all(e.status != "fail" for e in ledger)
    else:
        trace_doc = doc.get("trace", doc)
        report, _ = replay_trace(trace_doc)
        out = report.to_json()
    sys.stdout.write(dumps(out))
    return EXIT_OK if out["ok"] else EXIT_ENGINE


def cmd_trace(args) -> int:
    try:
        with open(args.file, encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise JobError(f"cannot read trace {args.file}: {exc}") from exc
    doc = doc.get("trace", doc)
    if "steps" not in doc or "charts" not in doc:
        raise JobError(f"{args.file} holds no trace")
    if args.format == "dot":
        sys.stdout.write(trace_dot(doc))
    elif args.format == "json":
        sys.stdout.write(dumps(doc))
    else:
        sys.stdout.write(trace_summary(doc))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="blowup", description="Resolution of basic objects by blow-ups, in exact arithmetic.")
    sub = p.add_subparsers(dest="command", required=True)

    def job_command(name, func, help):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("job", help="job JSON file")
        sp.add_argument("--strategy", choices=["curve", "monomial"])
        sp.add_argument("--max-steps", type=int)
        sp.add_argument("--format", choices=["json", "dot", "both"])
        sp.add_argument("--out", help="directory for output files (default: standard output)")
        sp.add_argument("--restrict", action="append", help="avoid V(ideal), as 'chart:g1,g2'")
        sp.add_argument("--workers", type=int, default=1)
        sp.set_defaults(func=func)
        return sp

    job_command("resolve", cmd_resolve, "run the resolution and write the trace")
    job_command("principalize", cmd_principalize, "b = 1 run with a monomialization certificate")
    sp = job_command("desing", cmd_desing, "embedded desingularization of V(J)")
    sp.add_argument("--witness", help="regular point of X, as 'a,b'")
    sp.add_argument("--full", action="store_true", help="also continue to the full principalization")

    sp = sub.add_parser("verify", help="replay a trace, certificate or desing result")
    sp.add_argument("file")
    sp.set_defaults(func=cmd_verify)
    sp = sub.add_parser("trace", help="render a stored trace")
    sp.add_argument("file")
    sp.add_argument("--format", choices=["text", "json", "dot"], default="text")
    sp.set_defaults(func=cmd_trace)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (JobError, PolyError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ENGINE_ERRORS as exc:
        print(f"engine error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ENGINE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
