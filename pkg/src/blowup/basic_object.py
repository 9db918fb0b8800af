"""Basic objects (W, (J, b), E): singular loci, controlled transforms, certificates."""

from __future__ import annotations

import random
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from . import plane
from .charts import (
    Center,
    Chart,
    Locus,
    PairState,
    Restriction,
    _sort_key,
    blow_up_loci,
    permissibility_problems,
    root_pair,
)
from .invariants import InvariantValue
from .poly import (
    Poly,
    adic_division,
    check_ideal,
    coordinate_adic_division,
    delta_power,
    exact_divide,
    ideal_order_at_point,
    is_unit_ideal,
    order_along,
    substitute,
)


class ResolutionError(RuntimeError):
    pass


@dataclass(frozen=True, eq=False)
class BasicObject:
    pair: PairState
    b: int
    ideals: Mapping[str, tuple[Poly, ...]]
    cert: Mapping[str, tuple[int, ...]]
    original: tuple[Poly, ...]
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def vars(self) -> tuple[str, ...]:
        return self.pair.vars

    def chart(self, chart_id: str) -> Chart:
        return self.pair.atlas[chart_id]

    def ideal(self, chart_id: str) -> tuple[Poly, ...]:
        return self.ideals[chart_id]

    def residual(self, chart_id: str) -> tuple[tuple[Poly, ...], tuple[int, ...]]:
        """Weak residual: J with every exceptional component divided out, plus the exponents."""
        key = ("residual", chart_id)
        if key not in self._cache:
            self._cache[key] = _split_monomial(self.ideals[chart_id], self.chart(chart_id))
        return self._cache[key]

    def exponents(self, chart_id: str) -> tuple[int, ...]:
        return self.residual(chart_id)[1]

    def sing_ideal(self, chart_id: str) -> tuple[Poly, ...]:
        key = ("sing", chart_id)
        if key not in self._cache:
            self._cache[key] = delta_power(self.ideals[chart_id], self.b - 1)
        return self._cache[key]

    def order_at(self, chart_id: str, point: Sequence) -> float:
        return ideal_order_at_point(self.ideals[chart_id], point)

    def in_sing(self, chart_id: str, point: Sequence) -> bool:
        """Membership in Sing(J, b), decided two ways that must agree."""
        by_order = self.order_at(chart_id, point) >= self.b
        by_delta = all(g.evaluate(point) == 0 for g in self.sing_ideal(chart_id))
        if by_order != by_delta:
            raise ResolutionError(f"order and derivative tests disagree at {point} in chart {chart_id}")
        return by_order


def _split_monomial(gens: Sequence[Poly], chart: Chart) -> tuple[tuple[Poly, ...], tuple[int, ...]]:
    exps = []
    cur = list(gens)
    for comp in chart.components:
        orders = [_adic(g, comp.poly)[0] for g in cur if not g.is_zero()]
        a = min(orders)
        exps.append(a)
        if a:
            power = comp.poly**a
            cur = [g if g.is_zero() else exact_divide(g, power) for g in cur]
    return tuple(cur), tuple(exps)


def _adic(p: Poly, g: Poly) -> tuple[int, Poly]:
    if g.total_degree() == 1 and len(g.terms) == 1:
        e = next(iter(g.terms))
        name = g.vars[e.index(1)]
        k, q = coordinate_adic_division(p, name)
        return k, q.scale(1 / g.terms[e] ** k) if k else q
    return adic_division(p, g)


def basic_object(
    vars: Sequence[str],
    gens: Sequence[Poly],
    b: int,
    exceptional: Mapping[int, Poly] | None = None,
) -> BasicObject:
    gens = check_ideal(gens)
    if tuple(vars) != gens[0].vars:
        raise ValueError("generators do not live in the given ring")
    if b < 1:
        raise ValueError("b must be a positive integer")
    pair = root_pair(vars, exceptional)
    root = pair.charts[0]
    return BasicObject(pair, b, {root.id: gens}, {root.id: tuple(0 for _ in root.components)}, gens)


def sing_locus(bo: BasicObject) -> dict[str, tuple[Poly, ...]]:
    return {c.id: bo.sing_ideal(c.id) for c in bo.pair.charts}


def order_along_locus(gens: Sequence[Poly], locus: Locus, vars: Sequence[str]) -> float:
    if locus.is_hypersurface:
        return min(_adic(g, locus.hypersurface)[0] for g in gens if not g.is_zero())
    a = locus.translation(vars)
    return min(order_along(g, locus.coords, a) for g in gens)


@dataclass
class TransformRecord:
    step: int
    label: int
    center: dict[str, list[Locus]]
    c_values: list[dict]
    max_value: InvariantValue | None = None
    dimension: int | None = None

    @property
    def min_c(self) -> int:
        return min(e["c"] for e in self.c_values)


@dataclass
class ResolutionTrace:
    strategy: str
    states: list[BasicObject]
    records: list[TransformRecord]
    terminal: bool = False

    @property
    def max_values(self) -> list[InvariantValue]:
        return [r.max_value for r in self.records]

    @property
    def final(self) -> BasicObject:
        return self.states[-1]


def _chart_transform(bo: BasicObject, chart: Chart, loci: Sequence[Locus], label: int, c_override):
    vars = bo.vars
    steps, leaves = blow_up_loci(chart, loci, label)
    gens_of = {chart.id: bo.ideals[chart.id]}
    cert_of = {chart.id: bo.cert[chart.id]}
    entries = []
    for s in steps:
        parent = s.parent
        gens = gens_of[parent.id]
        m_parent = cert_of[parent.id]
        expected = order_along_locus(gens, s.locus, vars)
        for kid in s.children:
            pivot_def = Poly.var(vars, kid.pivot) if kid.pivot else kid.locus.hypersurface
            pulled = [substitute(g, kid.subs, vars) for g in gens]
            c = min(_adic(g, pivot_def)[0] for g in pulled if not g.is_zero())
            if c != expected:
                raise ResolutionError(
                    f"chart {kid.id}: exceptional order {c} differs from the order {expected} along the center"
                )
            recorded = c
            if c_override is not None:
                key = (parent.id, kid.id)
                if key in c_override:
                    recorded = c_override[key]
            if recorded < bo.b:
                raise ResolutionError(f"chart {kid.id}: c = {recorded} < b = {bo.b}; center not in Sing(J,b)")
            power = pivot_def**recorded
            bar = []
            for g in pulled:
                if g.is_zero():
                    bar.append(g)
                    continue
                try:
                    bar.append(exact_divide(g, power))
                except Exception as exc:
                    raise ResolutionError(f"chart {kid.id}: pulled-back ideal not divisible by pivot^{recorded}") from exc
            lift = pivot_def ** (recorded - bo.b)
            gens_of[kid.id] = tuple(lift * g for g in bar)
            m_new = []
            for comp in kid.components:
                if comp.src is None:
                    total = bo.b
                    for i, pc in enumerate(parent.components):
                        if m_parent[i]:
                            k = _adic(substitute(pc.poly, kid.subs, vars), pivot_def)[0]
                            total += m_parent[i] * k
                    m_new.append(total)
                else:
                    m_new.append(m_parent[comp.src])
            cert_of[kid.id] = tuple(m_new)
            entry = {"chart": parent.id, "child": kid.id, "locus": s.locus.to_json(vars), "c": recorded}
            if recorded != c:
                entry["c_computed"] = c
            entries.append(entry)
    return steps, leaves, {l.id: gens_of[l.id] for l in leaves}, {l.id: cert_of[l.id] for l in leaves}, entries


def check_center_in_sing(bo: BasicObject, center: Center) -> list[str]:
    problems = []
    for cid, loci in center.items():
        for locus in loci:
            order = order_along_locus(bo.ideals[cid], locus, bo.vars)
            if order < bo.b:
                problems.append(f"chart {cid}: center {locus.to_json(bo.vars)} has order {order} < b")
    return problems


def transform(
    bo: BasicObject,
    center: Center,
    label: int | None = None,
    step: int = 0,
    c_override: Mapping | None = None,
    workers: int = 1,
    check: bool = True,
    restriction: Restriction | None = None,
) -> tuple[BasicObject, TransformRecord]:
    """Blow up a permissible center inside Sing(J, b) and take the controlled transform.

    In every child chart the pulled-back generators are divided by
    pivot^c, where c is the order of J along the center, and multiplied
    back by pivot^(c - b).
    """
    pair = bo.pair
    if label is None:
        label = pair.next_label()
    center = {cid: list(loci) for cid, loci in center.items() if loci}
    if not center:
        raise ResolutionError("empty center")
    if check:
        problems = permissibility_problems(pair, center, restriction) + check_center_in_sing(bo, center)
        if problems:
            raise ResolutionError("; ".join(problems))

    def work(chart: Chart):
        loci = center.get(chart.id)
        if not loci:
            return None
        return _chart_transform(bo, chart, loci, label, c_override)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(work, pair.charts))
    else:
        results = [work(c) for c in pair.charts]
    atlas = dict(pair.atlas)
    ideals = {}
    cert = {}
    leaves = []
    entries = []
    for chart, res in zip(pair.charts, results):
        if res is None:
            leaves.append(chart)
            ideals[chart.id] = bo.ideals[chart.id]
            cert[chart.id] = bo.cert[chart.id]
            continue
        steps, new_leaves, gens, certs, ents = res
        for s in steps:
            for kid in s.children:
                atlas[kid.id] = kid
        leaves.extend(new_leaves)
        ideals.update(gens)
        cert.update(certs)
        entries.extend(ents)
    leaves.sort(key=lambda c: _sort_key(c.id))
    new_pair = PairState(tuple(leaves), pair.labels + ((label, step + 1),), atlas)
    new_bo = BasicObject(new_pair, bo.b, ideals, cert, bo.original)
    record = TransformRecord(step, label, center, entries)
    return new_bo, record


# -- certificates -------------------------------------------------------------


def recompose_problems(bo: BasicObject) -> list[str]:
    """From scratch: pullback of J0 equals (prod of E-components^m) * J_k, generator-wise."""
    problems = []
    vars = bo.vars
    for chart in bo.pair.charts:
        gens = bo.ideals[chart.id]
        m = bo.cert[chart.id]
        if len(m) != len(chart.components):
            problems.append(f"chart {chart.id}: certificate length mismatch")
            continue
        mono = Poly.const(vars, 1)
        for comp, e in zip(chart.components, m):
            if e:
                mono = mono * comp.poly**e
        for i, g0 in enumerate(bo.original):
            pulled = substitute(g0, chart.to_root, vars)
            if pulled != mono * gens[i]:
                problems.append(f"chart {chart.id}: generator {i} does not recompose")
    return problems


def recompose_check(bo: BasicObject) -> bool:
    return not recompose_problems(bo)


def total_exponents(bo: BasicObject, chart_id: str) -> tuple[int, ...]:
    """Exponents of the full exceptional factor of the total transform (certificate plus J_k part)."""
    return tuple(m + a for m, a in zip(bo.cert[chart_id], bo.exponents(chart_id)))


def sing_is_empty(bo: BasicObject, chart_id: str) -> tuple[bool, str]:
    """Exact emptiness of Sing(J,b) in one chart when decidable, else a sampled answer."""
    ideal = bo.sing_ideal(chart_id)
    if is_unit_ideal(ideal):
        return True, "unit"
    dim = len(bo.vars)
    if dim == 2:
        return plane.is_empty(ideal), "resultant"
    if dim == 1:
        g = ideal[0]
        for h in ideal[1:]:
            g = _gcd1(g, h)
        return g.is_constant(), "gcd"
    gens = bo.ideals[chart_id]
    if len(gens) == 1 and len(gens[0].terms) == 1:
        return gens[0].total_degree() < bo.b, "monomial"
    rng = random.Random(0)
    for _ in range(2000):
        pt = tuple(Fraction(rng.randint(-6, 6), rng.randint(1, 3)) for _ in bo.vars)
        if bo.in_sing(chart_id, pt):
            return False, "sampled"
    warnings.warn(f"chart {chart_id}: Sing(J,b) emptiness only sampled")
    return True, "sampled"


def _gcd1(f: Poly, g: Poly) -> Poly:
    from .plane import from_sympy, to_sympy
    import sympy

    return from_sympy(sympy.gcd(to_sympy(f), to_sympy(g)), f.vars)


def residual_order_check(bo: BasicObject) -> bool:
    """Certify order < b everywhere on a terminal state; raise on a non-terminal one."""
    for chart in bo.pair.charts:
        empty, method = sing_is_empty(bo, chart.id)
        if not empty:
            raise ResolutionError(f"chart {chart.id}: Sing(J,b) is not empty ({method})")
    return True


@dataclass(frozen=True)
class RestrictedBasicObject:
    """A basic object viewed on the open complement of the avoided loci."""

    bo: BasicObject
    restriction: Restriction

    def in_sing(self, chart_id: str, point: Sequence) -> bool | None:
        """None when the point is outside the open set."""
        if self.restriction.excludes(self.bo.pair, chart_id, point):
            return None
        return self.bo.in_sing(chart_id, point)


def restrict_bo(bo: BasicObject, avoid: Sequence[tuple[str, Sequence[Poly]]] | Restriction) -> RestrictedBasicObject:
    if not isinstance(avoid, Restriction):
        avoid = Restriction(tuple((cid, tuple(gens)) for cid, gens in avoid))
    return RestrictedBasicObject(bo, avoid)
