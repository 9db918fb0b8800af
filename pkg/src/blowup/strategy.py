"""Resolution strategies: invariant functions, their maxima and the centers they propose.

Two strategies implement the same small interface:

``MonomialStrategy``
    for ideals that are already a monomial in the exceptional components,
    in any dimension with coordinate components.
``CurveStrategy``
    for principal ideals in the plane. Points where the residual curve
    survives get ``Positive(w, n, contact)`` values; once it is gone the
    monomial values take over.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from . import plane
from .basic_object import (
    BasicObject,
    ResolutionError,
    ResolutionTrace,
    TransformRecord,
    residual_order_check,
    transform,
)
from .charts import (
    Chart,
    ChartError,
    Locus,
    Restriction,
    coordinate_form,
    lift_point,
)
from .invariants import InvariantValue, Monomial, Positive, best_monomial_witness
from .poly import is_unit_ideal, order_at_point
from .series import coefficient_slope, intersection_multiplicity


class StrategyError(ResolutionError):
    pass


@dataclass
class Proposal:
    value: InvariantValue
    center: dict[str, list[Locus]]
    dimension: int
    state: object = None


def _map(fn, items, workers: int):
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


def _labels_at(bo: BasicObject, chart: Chart, point) -> dict[int, int]:
    exps = bo.exponents(chart.id)
    out: dict[int, int] = {}
    for comp, a in zip(chart.components, exps):
        if comp.poly.evaluate(point) == 0:
            out[comp.label] = out.get(comp.label, 0) + a
    return out


# -- monomial strategy ------------------------------------------------------------


class MonomialStrategy:
    """Largest (-|S|, sum a_S / b, labels) over sets S of components with sum a_S >= b."""

    name = "monomial"

    def initial_state(self, bo: BasicObject):
        return None

    def check(self, bo: BasicObject) -> None:
        for chart in bo.pair.charts:
            bar, _ = bo.residual(chart.id)
            if not is_unit_ideal(bar):
                raise StrategyError(f"chart {chart.id}: ideal is not a monomial in E (residual {bar[0]})")
            if bo.pair.dim != 2 and not all(coordinate_form(c.poly) for c in chart.components):
                raise StrategyError(f"chart {chart.id}: exceptional components must be coordinates")

    def monomial_value(self, bo: BasicObject, chart_id: str, point) -> Monomial | None:
        chart = bo.chart(chart_id)
        return best_monomial_witness(_labels_at(bo, chart, point), bo.b)

    def value(self, bo: BasicObject, state, chart_id: str, point) -> InvariantValue | None:
        if not bo.in_sing(chart_id, point):
            return None
        bar, _ = bo.residual(chart_id)
        if not is_unit_ideal(bar) and min(order_at_point(g, point) for g in bar) > 0:
            raise StrategyError("monomial value requested where the residual ideal vanishes")
        return self.monomial_value(bo, chart_id, point)

    def _strata(self, bo: BasicObject, chart: Chart, restriction: Restriction | None):
        """(value, locus) for every set of components (distinct labels) that meet."""
        exps = bo.exponents(chart.id)
        comps = [(c, a) for c, a in zip(chart.components, exps) if a > 0]
        vars = chart.vars
        out = []
        for size in range(1, min(len(comps), len(vars)) + 1):
            for subset in combinations(comps, size):
                labels = [c.label for c, _ in subset]
                if len(set(labels)) != size:
                    continue
                total = sum(a for _, a in subset)
                if total < bo.b:
                    continue
                value = Monomial(-size, Fraction(total, bo.b), tuple(sorted(labels, reverse=True)))
                for locus in _intersection_loci(chart, [c.poly for c, _ in subset]):
                    if restriction:
                        locus = restriction.restrict_locus(bo.pair, chart.id, locus)
                        if locus is None:
                            continue
                    out.append((value, locus))
        return out

    def propose(self, bo, state, restriction=None, workers: int = 1) -> Proposal | None:
        strata = _map(lambda ch: self._strata(bo, ch, restriction), bo.pair.charts, workers)
        values = [v for per in strata for v, _ in per]
        if not values:
            return None
        best = max(values)
        center: dict[str, list[Locus]] = {}
        dims = set()
        for chart, per in zip(bo.pair.charts, strata):
            loci = []
            for v, locus in per:
                if v == best and not any(l.same_as(locus, chart.vars) for l in loci):
                    loci.append(locus)
                    dims.add(locus.dimension(chart.vars))
            if loci:
                center[chart.id] = loci
        if len(dims) != 1:
            raise StrategyError(f"Max of {best} is not equidimensional: {sorted(dims)}")
        return Proposal(best, center, dims.pop(), state)


def _intersection_loci(chart: Chart, polys) -> list[Locus]:
    vars = chart.vars
    forms = [coordinate_form(p) for p in polys]
    if all(forms):
        names = [f[0] for f in forms]
        if len(set(names)) != len(names):
            return []
        values = {f[0]: f[1] for f in forms}
        point = tuple(Fraction(values.get(v, 0)) for v in vars)
        return [Locus(coords=tuple(v for v in vars if v in values), point=point if any(point) else None)]
    if len(vars) != 2:
        raise StrategyError(f"chart {chart.id}: non-coordinate components need dimension 2")
    if len(polys) == 1:
        return [] if polys[0].is_constant() else [Locus(hypersurface=polys[0])]
    if len(polys) == 2:
        pts = plane.rational_zeros(polys, what=f"component intersection in chart {chart.id}")
        return [Locus.at_point(vars, p) for p in pts]
    return []


# -- plane curve strategy ------------------------------------------------------------


@dataclass(frozen=True)
class Marking:
    """Labels counted by n, frozen the last time the maximal residual order dropped."""

    frozen_w: int | None = None
    eminus: frozenset = field(default_factory=frozenset)

    def update(self, max_w: int, labels) -> "Marking":
        if self.frozen_w is None or max_w < self.frozen_w:
            return Marking(max_w, frozenset(labels))
        if max_w > self.frozen_w:
            raise StrategyError(f"maximal residual order rose from {self.frozen_w} to {max_w}")
        return self


@dataclass
class _ChartScan:
    candidates: list[tuple]
    generic: Locus | None


class CurveStrategy:
    """Plane curve strategy.

    At a point of the residual curve V(f) of order w, n counts the frozen
    labels through the point. The third entry is the largest intersection
    multiplicity with those labels, or for n = 0 and w >= 2 the normalized
    order of the coefficient ideal on a maximal-contact curve.
    """

    name = "curve"

    def __init__(self):
        self._monomial = MonomialStrategy()

    def initial_state(self, bo: BasicObject) -> Marking:
        return Marking()

    def check(self, bo: BasicObject) -> None:
        if bo.pair.dim != 2:
            raise StrategyError("the curve strategy needs ambient dimension 2")
        if len(bo.original) != 1:
            raise StrategyError("the curve strategy needs a principal ideal")
        for chart in bo.pair.charts:
            if len(bo.ideals[chart.id]) != 1:
                raise StrategyError(f"chart {chart.id}: ideal is not principal")

    def residual_poly(self, bo: BasicObject, chart_id: str):
        return bo.residual(chart_id)[0][0]

    def _scan(self, bo: BasicObject, chart: Chart, restriction: Restriction | None) -> _ChartScan:
        fbar = self.residual_poly(bo, chart.id)
        if fbar.is_constant():
            return _ChartScan([], None)
        x, y = chart.vars
        systems = [("singular points of the residual curve", [fbar, fbar.diff(x), fbar.diff(y)])]
        for comp in chart.components:
            systems.append((f"residual curve meeting E{comp.label}", [fbar, comp.poly]))
        if bo.b > 1:
            systems.append(("residual curve inside Sing(J,b)", [fbar, *bo.sing_ideal(chart.id)]))
        points = set()
        for what, system in systems:
            zs = plane.common_zeros(system)
            if zs.curve is not None:
                raise StrategyError(f"chart {chart.id}: {what} is a curve; non-reduced residual unsupported")
            if zs.irrational:
                raise plane.IrrationalPointError(
                    f"chart {chart.id}: {what} has irrational points ({'; '.join(zs.irrational)})"
                )
            points.update(zs.points)
        cands = []
        for pt in sorted(points):
            if restriction and restriction.excludes(bo.pair, chart.id, pt):
                continue
            if not bo.in_sing(chart.id, pt):
                continue
            cands.append(pt)
        generic = None
        if bo.b == 1:
            generic = Locus(hypersurface=fbar)
            if restriction:
                generic = restriction.restrict_locus(bo.pair, chart.id, generic)
        return _ChartScan(cands, generic)

    def curve_value(self, bo: BasicObject, marking: Marking, chart_id: str, point) -> InvariantValue | None:
        if not bo.in_sing(chart_id, point):
            return None
        chart = bo.chart(chart_id)
        fbar = self.residual_poly(bo, chart_id)
        w = order_at_point(fbar, point)
        if w == 0:
            return self._monomial.monomial_value(bo, chart_id, point)
        w = int(w)
        through = [c for c in chart.components_through(point) if c.label in marking.eminus]
        if through:
            contact = max(intersection_multiplicity(fbar, c.poly, point) for c in through)
            return Positive(w, len(through), contact)
        if w >= 2:
            return Positive(w, 0, coefficient_slope([fbar], point, w))
        return Positive(1, 0, 0)

    value = curve_value

    def propose(self, bo: BasicObject, marking: Marking, restriction=None, workers: int = 1) -> Proposal | None:
        charts = list(bo.pair.charts)
        scans = _map(lambda ch: self._scan(bo, ch, restriction), charts, workers)
        ws = []
        for chart, scan in zip(charts, scans):
            fbar = self.residual_poly(bo, chart.id)
            ws.extend(int(order_at_point(fbar, pt)) for pt in scan.candidates)
            if scan.generic is not None:
                ws.append(1)
        if not ws:
            prop = self._monomial.propose(bo, None, restriction, workers)
            if prop is not None:
                prop.state = marking
            return prop
        marking = marking.update(max(ws), bo.pair.label_set())
        scored = []
        for chart, scan in zip(charts, scans):
            for pt in scan.candidates:
                scored.append((self.curve_value(bo, marking, chart.id, pt), chart.id, pt))
        generic_value = Positive(1, 0, 0)
        best = max([v for v, _, _ in scored] + ([generic_value] if any(s.generic for s in scans) else []))
        center: dict[str, list[Locus]] = {}
        if best == generic_value and any(s.generic for s in scans):
            for chart, scan in zip(charts, scans):
                if scan.generic is not None:
                    center[chart.id] = [scan.generic]
            return Proposal(best, center, 1, marking)
        for v, cid, pt in scored:
            if v == best:
                center.setdefault(cid, []).append(Locus.at_point(bo.vars, pt))
        return Proposal(best, center, 0, marking)


STRATEGIES = {"curve": CurveStrategy, "monomial": MonomialStrategy}


def get_strategy(name: str):
    try:
        return STRATEGIES[name]()
    except KeyError:
        raise StrategyError(f"unknown strategy {name!r}; choose from {sorted(STRATEGIES)}") from None


# -- driver -----------------------------------------------------------------------


def run_resolution(
    bo: BasicObject,
    strategy,
    max_steps: int = 500,
    restriction: Restriction | None = None,
    workers: int = 1,
    stop=None,
) -> ResolutionTrace:
    """Blow up Max f repeatedly until Sing(J, b) is empty.

    The strict decrease of max f and the equidimensionality of each Max
    are asserted at every step. ``stop(proposal, index)`` may end the run
    early; the trace is then not terminal.
    """
    if isinstance(strategy, str):
        strategy = get_strategy(strategy)
    strategy.check(bo)
    state = strategy.initial_state(bo)
    states = [bo]
    records: list[TransformRecord] = []
    dims_by_value: dict = {}
    states_by_step = []
    while True:
        prop = strategy.propose(bo, state, restriction, workers)
        if prop is None:
            break
        if stop is not None and stop(prop, len(records)):
            trace = ResolutionTrace(strategy.name, states, records, terminal=False)
            trace.pending = prop
            trace.strategy_states = states_by_step + [prop.state]
            return trace
        if records and not prop.value < records[-1].max_value:
            raise StrategyError(
                f"max f did not decrease at step {len(records)}: {records[-1].max_value} -> {prop.value}"
            )
        known = dims_by_value.setdefault(prop.value, prop.dimension)
        if known != prop.dimension:
            raise StrategyError(f"value {prop.value} seen with dimensions {known} and {prop.dimension}")
        if len(records) >= max_steps:
            raise StrategyError(f"no resolution within {max_steps} steps")
        bo, rec = transform(bo, prop.center, step=len(records), workers=workers, restriction=restriction)
        rec.max_value = prop.value
        rec.dimension = prop.dimension
        records.append(rec)
        states.append(bo)
        states_by_step.append(prop.state)
        state = prop.state
    if restriction is None:
        residual_order_check(bo)
    trace = ResolutionTrace(strategy.name, states, records, terminal=True)
    trace.strategy_states = states_by_step
    return trace


# -- locality ---------------------------------------------------------------------


@dataclass
class LocalityReport:
    ok: bool
    kept_steps: list[int]
    neglected_steps: list[int]
    restricted_steps: int
    mismatches: list[str]


def _center_meets(bo: BasicObject, center, restriction: Restriction) -> bool:
    for cid, loci in center.items():
        for locus in loci:
            if locus.is_point(bo.vars):
                if not restriction.excludes(bo.pair, cid, locus.as_point(bo.vars)):
                    return True
            elif restriction.restrict_locus(bo.pair, cid, locus) is not None:
                return True
    return False


def _track(trace: ResolutionTrace, point) -> list:
    """Chart representative of a root point at every stage (None once it hits a point center)."""
    reps = [("0", tuple(Fraction(a) for a in point))]
    for i, rec in enumerate(trace.records):
        cid, pt = reps[-1] if reps[-1] is not None else (None, None)
        if cid is None:
            reps.append(None)
            continue
        before, after = trace.states[i].pair, trace.states[i + 1].pair
        try:
            lifted = lift_point(before, after, pt, cid)
        except ChartError:
            lifted = []
        reps.append(lifted[0] if lifted else None)
    return reps


def _on_center(bo: BasicObject, center, cid: str, pt) -> bool:
    return any(l.contains(bo.vars, pt) for l in center.get(cid, ()))


def locality_check(bo: BasicObject, avoid, strategy, samples: Sequence | None = None, max_steps: int = 500) -> LocalityReport:
    """Compare the run on an open set with the restriction of the full run."""
    if isinstance(strategy, str):
        strategy = get_strategy(strategy)
    restriction = avoid if isinstance(avoid, Restriction) else Restriction(tuple((c, tuple(g)) for c, g in avoid))
    full = run_resolution(bo, strategy, max_steps)
    local = run_resolution(bo, strategy, max_steps, restriction=restriction)
    kept, neglected = [], []
    for i, rec in enumerate(full.records):
        (kept if _center_meets(full.states[i], rec.center, restriction) else neglected).append(i)
    mismatches = []
    if len(kept) != len(local.records):
        mismatches.append(f"{len(kept)} kept steps vs {len(local.records)} restricted steps")
    if samples is None:
        samples = _default_samples(bo, restriction)
    for pt in samples:
        full_reps = _track(full, pt)
        local_reps = _track(local, pt)
        for j, i in enumerate(kept[: len(local.records)]):
            if str(full.records[i].max_value) != str(local.records[j].max_value):
                mismatches.append(f"step {i}: max {full.records[i].max_value} vs {local.records[j].max_value}")
            fr, lr = full_reps[i], local_reps[j]
            if fr is None or lr is None:
                continue
            fv = strategy.value(full.states[i], full.strategy_states[i], *fr)
            lv = strategy.value(local.states[j], local.strategy_states[j], *lr)
            if fv != lv:
                mismatches.append(f"sample {tuple(map(str, pt))} step {i}: f = {fv} vs {lv}")
            if _on_center(full.states[i], full.records[i].center, *fr) != _on_center(
                local.states[j], local.records[j].center, *lr
            ):
                mismatches.append(f"sample {tuple(map(str, pt))} step {i}: center membership differs")
    mismatches = sorted(set(mismatches))
    return LocalityReport(not mismatches, kept, neglected, len(local.records), mismatches)


def _default_samples(bo: BasicObject, restriction: Restriction) -> list:
    pts = []
    if bo.pair.dim == 2 and len(bo.original) == 1:
        pts.extend(plane.sample_curve_points(bo.original[0]))
    grid = [Fraction(v) for v in (-2, -1, 1, 2, 3)]
    if bo.pair.dim == 2:
        pts.extend((a, c) for a in grid for c in grid)
    else:
        pts.append(tuple(Fraction(k + 1) for k in range(bo.pair.dim)))
    root = bo.pair.charts[0].id
    return [p for p in dict.fromkeys(pts) if not restriction.excludes(bo.pair, root, p)]
