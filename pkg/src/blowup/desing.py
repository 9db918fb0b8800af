"""Embedded desingularization of a plane curve read off a principalization run.

The run for (W, (I(X), 1), {}) is watched until max f first equals the
value a(d) that f takes at regular points of X. At that stage the strict
transform X_k is the residual curve; it is smooth and crosses E_k normally.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import plane
from .basic_object import BasicObject, ResolutionError, ResolutionTrace, basic_object, order_along_locus
from .charts import _jacobian_det, atlas_to_json, pair_ncd_problems
from .invariants import InvariantValue
from .poly import Poly, substitute
from .strategy import CurveStrategy, get_strategy, run_resolution


class DesingError(ResolutionError):
    pass


def _jacobian_rank_ok(gens: Sequence[Poly], point) -> bool:
    grads = [[g.diff(v).evaluate(point) for v in g.vars] for g in gens]
    return any(any(row) for row in grads)


def find_witness(gens: Sequence[Poly]) -> tuple[Fraction, ...]:
    """A rational point of X where the Jacobian is nonzero (plane curves only)."""
    if len(gens) != 1 or len(gens[0].vars) != 2:
        raise DesingError("witness search needs a principal ideal in two variables; pass a witness")
    for pt in plane.sample_curve_points(gens[0], limit=40):
        if _jacobian_rank_ok(gens, pt):
            return pt
    raise DesingError("no regular rational point of X found on the search grid; pass a witness")


def smooth_value(gens: Sequence[Poly], witness=None, strategy="curve") -> InvariantValue:
    """a(d): the value of f at a regular point of X for b = 1 and E empty."""
    if isinstance(strategy, str):
        strategy = get_strategy(strategy)
    if witness is None:
        witness = find_witness(gens)
    witness = tuple(Fraction(a) for a in witness)
    if any(g.evaluate(witness) != 0 for g in gens):
        raise DesingError(f"witness {tuple(map(str, witness))} is not on X")
    if not _jacobian_rank_ok(gens, witness):
        raise DesingError(f"witness {tuple(map(str, witness))} is a singular point of X")
    bo = basic_object(gens[0].vars, gens, 1)
    return strategy.value(bo, strategy.initial_state(bo), bo.pair.charts[0].id, witness)


@dataclass
class LedgerEntry:
    check: str
    status: str  # pass, fail, unverified
    detail: str = ""
    witnesses: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "check": self.check,
            "status": self.status,
            "detail": self.detail,
            "witnesses": [[str(a) for a in w] if isinstance(w, tuple) else w for w in self.witnesses],
        }


@dataclass
class DesingResult:
    k: int
    a_d: InvariantValue
    trace: ResolutionTrace
    x_k: dict[str, Poly]
    full_trace: ResolutionTrace | None = None
    ledger: list[LedgerEntry] = field(default_factory=list)

    @property
    def stage(self) -> BasicObject:
        return self.trace.states[self.k]

    @property
    def labels(self) -> list[int]:
        return sorted(self.stage.pair.label_set())

    @property
    def ok(self) -> bool:
        return all(e.status != "fail" for e in self.ledger)

    def to_json(self) -> dict:
        out = {
            "k": self.k,
            "a_d": self.a_d.to_json(),
            "max_f": [str(v) for v in self.trace.max_values[: self.k]],
            "X_k": {cid: str(p) for cid, p in self.x_k.items()},
            "E_k": self.labels,
            "charts": atlas_to_json(self.stage.pair),
            "ledger": [e.to_json() for e in self.ledger],
        }
        if self.full_trace is not None:
            out["full_run"] = {
                "steps": len(self.full_trace.records),
                "max_f": [str(v) for v in self.full_trace.max_values],
                "terminal": self.full_trace.terminal,
            }
        return out


def strict_transform_at(trace: ResolutionTrace, k: int) -> dict[str, Poly]:
    """Residual curve of stage k, per chart where it is nonempty."""
    state = trace.states[k]
    out = {}
    for chart in state.pair.charts:
        bar, _ = state.residual(chart.id)
        if len(bar) != 1:
            raise DesingError(f"chart {chart.id}: residual is not principal")
        if not bar[0].is_constant():
            out[chart.id] = bar[0]
    return out


def desingularize(
    gens: Sequence[Poly],
    strategy="curve",
    witness=None,
    continue_full: bool = False,
    max_steps: int = 500,
    workers: int = 1,
    verify: bool = True,
) -> DesingResult:
    if isinstance(strategy, str):
        strategy = get_strategy(strategy)
    if not isinstance(strategy, CurveStrategy):
        raise DesingError("embedded desingularization is implemented for the curve strategy")
    gens = tuple(gens)
    if len(gens) != 1:
        raise DesingError("X must be given by one equation")
    if not plane.squarefree(gens[0]):
        raise DesingError(f"X = V({gens[0]}) is not reduced")
    a_d = smooth_value(gens, witness, strategy)

    def stop(prop, index):
        if prop.value < a_d:
            raise DesingError(f"max f fell below a(d) = {a_d} at stage {index} without meeting it")
        return prop.value == a_d

    bo = basic_object(gens[0].vars, gens, 1)
    trace = run_resolution(bo, strategy, max_steps, workers=workers, stop=stop)
    if trace.terminal:
        raise DesingError(f"Sing emptied before max f reached a(d) = {a_d}")
    k = len(trace.records)
    result = DesingResult(k, a_d, trace, strict_transform_at(trace, k))
    if continue_full:
        result.full_trace = run_resolution(bo, strategy, max_steps, workers=workers)
    if verify:
        result.ledger = verify_embedded(result, gens)
    return result


def result_at(trace: ResolutionTrace, k: int, a_d: InvariantValue) -> DesingResult:
    """A result object for an arbitrary stage, e.g. to check that earlier stages fail verification."""
    return DesingResult(k, a_d, trace, strict_transform_at(trace, k))


def _singular_ideal(gens: Sequence[Poly]) -> list[Poly]:
    f = gens[0]
    return [f] + [f.diff(v) for v in f.vars]


def _zeros(system) -> list:
    zs = plane.common_zeros(system)
    pts = ["(" + ", ".join(str(a) for a in p) + ")" for p in zs.points]
    return pts + [f"irrational: {r}" for r in zs.irrational]


def verify_embedded(result: DesingResult, gens: Sequence[Poly]) -> list[LedgerEntry]:
    """Check smoothness of X_k, normal crossings of X_k with E_k, and that
    every earlier center lies over Sing(X)."""
    state = result.stage
    pair = state.pair
    ledger = []
    if pair.dim != 2:
        return [LedgerEntry(name, "unverified", "ambient dimension is not 2") for name in ("smooth", "ncd", "centers over Sing(X)")]

    bad = []
    for cid, g in result.x_k.items():
        x, y = g.vars
        pts = _zeros([g, g.diff(x), g.diff(y)])
        bad.extend(f"chart {cid}: {p}" for p in pts)
    ledger.append(LedgerEntry("smooth", "fail" if bad else "pass", "singular points of X_k" if bad else "", bad))

    bad = list(pair_ncd_problems(pair))
    for cid, g in result.x_k.items():
        comps = pair.chart(cid).components
        for c in comps:
            for p in _zeros([g, c.poly, _jacobian_det(g, c.poly)]):
                bad.append(f"chart {cid}: X_k tangent to E{c.label} at {p}")
        for i in range(len(comps)):
            for j in range(i + 1, len(comps)):
                for p in _zeros([g, comps[i].poly, comps[j].poly]):
                    bad.append(f"chart {cid}: X_k through E{comps[i].label} ∩ E{comps[j].label} at {p}")
    ledger.append(LedgerEntry("ncd", "fail" if bad else "pass", "normal-crossing violations" if bad else "", bad))

    sing_x = _singular_ideal(gens)
    bad = []
    for i, rec in enumerate(result.trace.records[: result.k]):
        before = result.trace.states[i]
        for cid, loci in rec.center.items():
            chart = before.chart(cid)
            pulled = [substitute(s, chart.to_root, before.vars) for s in sing_x]
            for locus in loci:
                nonzero = [p for p in pulled if not p.is_zero()]
                if nonzero and order_along_locus(nonzero, locus, before.vars) < 1:
                    bad.append(f"step {i} chart {cid}: center {locus.describe(before.vars)} leaves Sing(X)")
    ledger.append(
        LedgerEntry("centers over Sing(X)", "fail" if bad else "pass", f"{result.k} earlier steps checked", bad)
    )
    return ledger
