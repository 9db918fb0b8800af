"""Finite affine group actions on the root chart and their lifts through a run.

An automorphism is stored as its point map (x -> forward[x]); pulling back
a function is substitution. Lifts to later charts are the rational maps
pi_{c'}^{-1} o Theta o pi_c, reduced with ``sympy.cancel``; the lift of a
point is taken in the first leaf chart where that map is regular.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import sympy

from . import plane
from .basic_object import BasicObject
from .charts import Chart, PairState, coordinate_form
from .poly import Poly, parse, same_principal, substitute
from .strategy import get_strategy, run_resolution


class EquivarianceError(ValueError):
    pass


@dataclass(frozen=True)
class ChartAutomorphism:
    vars: tuple[str, ...]
    forward: Mapping[str, Poly]
    inverse: Mapping[str, Poly]

    @classmethod
    def from_strings(cls, vars: Sequence[str], mapping: Mapping[str, str]) -> "ChartAutomorphism":
        vars = tuple(vars)
        unknown = set(mapping) - set(vars)
        if unknown:
            raise EquivarianceError(f"substitution for unknown variables {sorted(unknown)}")
        forward = {v: parse(mapping.get(v, v), vars) for v in vars}
        return cls.from_polys(vars, forward)

    @classmethod
    def from_polys(cls, vars: Sequence[str], forward: Mapping[str, Poly]) -> "ChartAutomorphism":
        vars = tuple(vars)
        for v, p in forward.items():
            if p.total_degree() > 1:
                raise EquivarianceError(f"{v} -> {p} is not affine")
        mat = sympy.Matrix([[p.terms.get(_unit(vars, w), 0) for w in vars] for p in (forward[v] for v in vars)])
        if mat.det() == 0:
            raise EquivarianceError("substitution is not invertible")
        shift = sympy.Matrix([forward[v].constant_term() for v in vars])
        inv = mat.inv()
        syms = _sym(vars)
        target = inv * (sympy.Matrix(syms) - shift)
        inverse = {v: plane.from_sympy(sympy.expand(target[i]), vars) for i, v in enumerate(vars)}
        return cls(vars, dict(forward), inverse)

    def apply(self, point: Sequence) -> tuple[Fraction, ...]:
        return tuple(self.forward[v].evaluate(point) for v in self.vars)

    def compose(self, other: "ChartAutomorphism") -> "ChartAutomorphism":
        """self o other as point maps."""
        fwd = {v: substitute(self.forward[v], other.forward, self.vars) for v in self.vars}
        return ChartAutomorphism.from_polys(self.vars, fwd)

    def is_identity(self) -> bool:
        return all(self.forward[v] == Poly.var(self.vars, v) for v in self.vars)

    def key(self) -> tuple:
        return tuple(sorted((v, str(p)) for v, p in self.forward.items()))

    def describe(self) -> dict:
        return {v: str(self.forward[v]) for v in self.vars}


def _unit(vars, w) -> tuple[int, ...]:
    return tuple(1 if v == w else 0 for v in vars)


@dataclass
class GroupSpec:
    generators: list[ChartAutomorphism]

    def closure(self, cap: int = 64) -> list[ChartAutomorphism]:
        if not self.generators:
            return []
        vars = self.generators[0].vars
        ident = ChartAutomorphism.from_polys(vars, {v: Poly.var(vars, v) for v in vars})
        elems = {ident.key(): ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for a in frontier:
                for g in self.generators:
                    h = g.compose(a)
                    if h.key() not in elems:
                        if len(elems) >= cap:
                            raise EquivarianceError(f"group closure exceeds {cap} elements")
                        elems[h.key()] = h
                        nxt.append(h)
            frontier = nxt
        return list(elems.values())


def pullback_ideal(theta: ChartAutomorphism, gens: Sequence[Poly]) -> tuple[Poly, ...]:
    for g in gens:
        if g.vars != theta.vars:
            raise EquivarianceError("ideal and automorphism live in different rings")
    return tuple(substitute(g, theta.forward, theta.vars) for g in gens)


def invariance_status(theta: ChartAutomorphism, gens: Sequence[Poly]) -> str:
    """'pass', 'fail' or 'unverified' (non-principal ideals whose generators do not match up)."""
    pulled = pullback_ideal(theta, gens)
    gens = [g for g in gens if not g.is_zero()]
    pulled = [g for g in pulled if not g.is_zero()]
    if len(gens) == 1:
        return "pass" if same_principal(gens[0], pulled[0]) else "fail"
    forward = all(any(same_principal(p, g) for g in gens) for p in pulled)
    backward = all(any(same_principal(g, p) for p in pulled) for g in gens)
    return "pass" if forward and backward else "unverified"


def is_invariant(theta: ChartAutomorphism, gens: Sequence[Poly]) -> bool:
    return invariance_status(theta, gens) == "pass"


def check_preserves_e(theta: ChartAutomorphism, components: Mapping[int, Poly]) -> None:
    """Each exceptional hypersurface must be fixed; permuting labels is rejected."""
    for label, poly in components.items():
        pulled = substitute(poly, theta.forward, theta.vars)
        if same_principal(pulled, poly):
            continue
        for other, q in components.items():
            if other != label and same_principal(pulled, q):
                raise EquivarianceError(
                    f"automorphism {theta.describe()} exchanges E{label} and E{other}; label-permuting actions are not supported"
                )
        raise EquivarianceError(f"automorphism {theta.describe()} does not preserve E{label}")


# -- lifting through charts ------------------------------------------------------


def _sym(vars):
    return tuple(sympy.Symbol(v) for v in vars)


def _expr(p: Poly):
    return plane.to_sympy(p).as_expr()


class Lifter:
    """Rational maps pi_{c'}^{-1} o Theta o pi_c between charts of one atlas."""

    def __init__(self, theta: ChartAutomorphism):
        self.theta = theta
        self._inverse: dict[str, list] = {}
        self._maps: dict[tuple[str, str], list | None] = {}

    def _chart_inverse(self, pair: PairState, chart_id: str) -> list:
        """Chart coordinates as rational functions of the root coordinates."""
        if chart_id in self._inverse:
            return self._inverse[chart_id]
        chart = pair.atlas[chart_id]
        syms = _sym(chart.vars)
        if chart.parent is None:
            out = list(syms)
        else:
            up = self._chart_inverse(pair, chart.parent)
            env = dict(zip(syms, up))
            local = _local_inverse(chart)
            out = [sympy.cancel(e.xreplace(env)) for e in local]
        self._inverse[chart_id] = out
        return out

    def chart_map(self, pair: PairState, src: str, dst: str) -> list:
        key = (src, dst)
        if key not in self._maps:
            vars = pair.vars
            syms = _sym(vars)
            to_root = pair.atlas[src].to_root
            image = [_expr(self.theta.forward[v]) for v in vars]
            pi = {s: _expr(to_root[v]) for s, v in zip(syms, vars)}
            moved = [sympy.expand(e.xreplace(pi)) for e in image]
            inv = self._chart_inverse(pair, dst)
            env = dict(zip(syms, moved))
            self._maps[key] = [sympy.cancel(e.xreplace(env)) for e in inv]
        return self._maps[key]

    def lift(self, pair: PairState, chart_id: str, point: Sequence) -> tuple[str, tuple[Fraction, ...]] | None:
        """Image of a point of a leaf chart under the lifted action, in the first leaf chart where it is regular."""
        syms = _sym(pair.vars)
        env = {s: sympy.Rational(Fraction(a).numerator, Fraction(a).denominator) for s, a in zip(syms, point)}
        target = self.theta.apply(_to_root(pair, chart_id, point))
        for leaf in pair.charts:
            exprs = self.chart_map(pair, chart_id, leaf.id)
            vals = []
            for e in exprs:
                num, den = sympy.fraction(e)
                d = den.xreplace(env)
                if d == 0:
                    break
                vals.append(num.xreplace(env) / d)
            else:
                image = tuple(Fraction(int(v.p), int(v.q)) for v in map(sympy.Rational, vals))
                if _to_root(pair, leaf.id, image) != target:
                    raise EquivarianceError(f"lift from chart {chart_id} to {leaf.id} is incoherent at {point}")
                return leaf.id, image
        return None


def _local_inverse(chart: Chart) -> list:
    """Child coordinates in terms of the parent coordinates (same names)."""
    syms = _sym(chart.vars)
    if chart.pivot is None:
        return list(syms)
    a = chart.locus.translation(chart.vars)
    j = chart.vars.index(chart.pivot)
    yj = syms[j] - _rat(a[j])
    out = []
    for i, v in enumerate(chart.vars):
        if i == j:
            out.append(yj)
        elif v in chart.locus.coords:
            out.append((syms[i] - _rat(a[i])) / yj)
        else:
            out.append(syms[i])
    return out


def _rat(q) -> sympy.Rational:
    q = Fraction(q)
    return sympy.Rational(q.numerator, q.denominator)


def _to_root(pair: PairState, chart_id: str, point: Sequence) -> tuple[Fraction, ...]:
    chart = pair.atlas[chart_id]
    return tuple(chart.to_root[v].evaluate(point) for v in pair.vars)


def lift_action(theta: ChartAutomorphism, pair: PairState) -> dict[str, tuple[str, list[str]]]:
    """For each leaf chart c, a leaf chart c' where the lifted action is polynomial, with its formulas.

    Charts for which no such c' exists are omitted (the lift is then only
    piecewise; points are still lifted by ``Lifter.lift``).
    """
    lifter = Lifter(theta)
    out = {}
    for chart in pair.charts:
        for leaf in pair.charts:
            exprs = lifter.chart_map(pair, chart.id, leaf.id)
            if all(sympy.fraction(e)[1].is_number for e in exprs):
                out[chart.id] = (leaf.id, [str(sympy.expand(e)) for e in exprs])
                break
    return out


# -- harness ---------------------------------------------------------------------


@dataclass
class Check:
    step: int
    element: int
    check: str
    status: str
    detail: str = ""

    def to_json(self) -> dict:
        return {"step": self.step, "element": self.element, "check": self.check, "status": self.status, "detail": self.detail}


@dataclass
class HarnessReport:
    checks: list[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.status != "fail" for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.status == "fail"]

    def add(self, step, element, check, ok, detail=""):
        self.checks.append(Check(step, element, check, "pass" if ok else "fail", detail))

    def to_json(self) -> dict:
        return {"ok": self.ok, "checks": [c.to_json() for c in self.checks]}


def sample_sing_points(bo: BasicObject, chart: Chart, rng: random.Random, count: int = 8) -> list:
    """Rational points of Sing(J, b) in one chart: exact in the plane, on coordinate strata otherwise."""
    vars = chart.vars
    if len(vars) == 2:
        zs = plane.common_zeros(bo.sing_ideal(chart.id))
        pts = list(zs.points)
        if zs.curve is not None:
            pts.extend(plane.sample_curve_points(zs.curve, limit=count))
        return pts[: 2 * count]
    pts = []
    comps = [coordinate_form(c.poly) for c in chart.components]
    for _ in range(8 * count):
        pt = [Fraction(rng.randint(-3, 3), rng.randint(1, 2)) for _ in vars]
        for form in comps:
            if form is not None and rng.random() < 0.6:
                pt[vars.index(form[0])] = form[1]
        pt = tuple(pt)
        if pt not in pts and bo.in_sing(chart.id, pt):
            pts.append(pt)
        if len(pts) >= count:
            break
    return pts


def _labels_with_m(bo: BasicObject, chart_id: str, point) -> dict:
    chart = bo.chart(chart_id)
    out: dict[int, int] = {}
    for comp, m in zip(chart.components, bo.cert[chart.id]):
        if comp.poly.evaluate(point) == 0:
            out[comp.label] = out.get(comp.label, 0) + m
    return out


def equivariance_harness(
    bo: BasicObject,
    group: GroupSpec | Sequence[ChartAutomorphism],
    strategy="curve",
    seed: int = 0,
    samples: int = 6,
    max_steps: int = 500,
) -> HarnessReport:
    """Run the algorithm and check, at every stage and for every group element,
    that Sing, f, the center and the certificate are compatible with the lifted action."""
    if not isinstance(group, GroupSpec):
        group = GroupSpec(list(group))
    if isinstance(strategy, str):
        strategy = get_strategy(strategy)
    report = HarnessReport()
    elements = [g for g in group.closure() if not g.is_identity()]
    root = bo.pair.charts[0]
    e0 = {c.label: c.poly for c in root.components}
    for k, theta in enumerate(elements):
        report.add(-1, k, "J0 invariant", is_invariant(theta, bo.original), str(theta.describe()))
        check_preserves_e(theta, e0)
    if not report.ok:
        return report
    trace = run_resolution(bo, strategy, max_steps)
    lifters = [Lifter(theta) for theta in elements]
    rng = random.Random(seed)
    for i, state in enumerate(trace.states):
        pair = state.pair
        rec = trace.records[i] if i < len(trace.records) else None
        marking = trace.strategy_states[i] if i < len(trace.records) else None
        points = [(c.id, p) for c in pair.charts for p in sample_sing_points(state, c, rng, samples)]
        for k, lifter in enumerate(lifters):
            for cid, p in points:
                where = f"chart {cid} point {tuple(map(str, p))}"
                image = lifter.lift(pair, cid, p)
                if image is None:
                    report.add(i, k, "lift", False, f"{where}: no chart contains the image")
                    continue
                c2, q = image
                report.add(i, k, "Sing preserved", state.in_sing(c2, q), where)
                report.add(i, k, "certificate fixed", _labels_with_m(state, cid, p) == _labels_with_m(state, c2, q), where)
                if rec is not None:
                    fv, gv = strategy.value(state, marking, cid, p), strategy.value(state, marking, c2, q)
                    report.add(i, k, "f invariant", fv == gv, f"{where}: {fv} vs {gv}")
            if rec is not None:
                _check_center(report, i, k, lifter, state, rec.center)
    return report


def _on_center(state: BasicObject, center, cid, q) -> bool:
    return any(l.contains(state.vars, q) for l in center.get(cid, ()))


def _check_center(report, i, k, lifter: Lifter, state: BasicObject, center) -> None:
    """Theta(Y) = Y: exact on point pieces, on sampled points of curve pieces."""
    pair = state.pair
    for cid, loci in center.items():
        for locus in loci:
            if locus.is_point(state.vars):
                pts, how = [locus.as_point(state.vars)], "exact"
            else:
                eqs = locus.equations(state.vars)
                if len(eqs) != 1 or len(state.vars) != 2:
                    continue
                pts, how = plane.sample_curve_points(eqs[0], limit=6), "sampled"
            for p in pts:
                image = lifter.lift(pair, cid, p)
                ok = image is not None and _on_center(state, center, *image)
                report.add(i, k, f"center invariant ({how})", ok, f"chart {cid} point {tuple(map(str, p))}")
