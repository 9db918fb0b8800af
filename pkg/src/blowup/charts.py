"""Chart atlases for pairs (W, E) and their blow-ups.

Every chart is an affine space with the root's variable names, a
substitution expressing its parent's coordinates, and the exceptional
components E visible in it. Blow-ups replace a leaf chart by its standard
children; charts away from the center are carried over unchanged.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from . import plane
from .poly import (
    Poly,
    adic_division,
    coordinate_adic_division,
    format_poly,
    parse,
    same_principal,
    substitute,
)

ROOT = "0"


class ChartError(ValueError):
    pass


class PermissibilityError(ChartError):
    pass


@dataclass(frozen=True)
class Component:
    """One connected piece of an exceptional hypersurface inside a chart."""

    label: int
    poly: Poly
    src: int | None = None


@dataclass(frozen=True, eq=False)
class Locus:
    """A smooth irreducible piece of a center inside one chart.

    Either the translated coordinate subspace V(v - a_v : v in coords), or
    (in the plane) a smooth hypersurface V(hypersurface).
    """

    coords: tuple[str, ...] = ()
    point: tuple[Fraction, ...] | None = None
    hypersurface: Poly | None = None

    @classmethod
    def at_point(cls, vars: Sequence[str], point: Sequence) -> "Locus":
        return cls(coords=tuple(vars), point=tuple(Fraction(a) for a in point))

    @property
    def is_hypersurface(self) -> bool:
        return self.hypersurface is not None

    def translation(self, vars: Sequence[str]) -> tuple[Fraction, ...]:
        return self.point if self.point is not None else tuple(Fraction(0) for _ in vars)

    def is_point(self, vars: Sequence[str]) -> bool:
        return not self.is_hypersurface and len(self.coords) == len(vars)

    def as_point(self, vars: Sequence[str]) -> tuple[Fraction, ...]:
        if not self.is_point(vars):
            raise ChartError("locus is not a point")
        return self.translation(vars)

    def dimension(self, vars: Sequence[str]) -> int:
        if self.is_hypersurface:
            return len(vars) - 1
        return len(vars) - len(self.coords)

    def equations(self, vars: Sequence[str]) -> list[Poly]:
        if self.is_hypersurface:
            return [self.hypersurface]
        a = self.translation(vars)
        return [Poly.var(vars, v) - a[vars.index(v)] for v in self.coords]

    def contains(self, vars: Sequence[str], point: Sequence) -> bool:
        return all(e.evaluate(point) == 0 for e in self.equations(vars))

    def same_as(self, other: "Locus", vars: Sequence[str]) -> bool:
        if self.is_hypersurface or other.is_hypersurface:
            return (
                self.is_hypersurface
                and other.is_hypersurface
                and same_principal(self.hypersurface, other.hypersurface)
            )
        if set(self.coords) != set(other.coords):
            return False
        a, b = self.translation(vars), other.translation(vars)
        return all(a[vars.index(v)] == b[vars.index(v)] for v in self.coords)

    def to_json(self, vars: Sequence[str]) -> dict:
        if self.is_hypersurface:
            return {"hypersurface": format_poly(self.hypersurface)}
        out: dict = {"coords": list(self.coords)}
        if self.point is not None and any(self.point):
            out["translation"] = [str(a) for a in self.point]
        return out

    @classmethod
    def from_json(cls, data: Mapping, vars: Sequence[str]) -> "Locus":
        if "hypersurface" in data:
            return cls(hypersurface=parse(data["hypersurface"], vars))
        point = None
        if "translation" in data:
            point = tuple(Fraction(a) for a in data["translation"])
        return cls(coords=tuple(data["coords"]), point=point)

    def describe(self, vars: Sequence[str]) -> str:
        return " = ".join(["V(" + ", ".join(format_poly(e) for e in self.equations(vars)) + ")"])


Center = Mapping[str, Sequence[Locus]]


@dataclass(frozen=True, eq=False)
class Chart:
    id: str
    vars: tuple[str, ...]
    parent: str | None = None
    subs: Mapping[str, Poly] | None = None
    to_root: Mapping[str, Poly] = field(default_factory=dict)
    components: tuple[Component, ...] = ()
    locus: Locus | None = None  # the center blown up to create this chart
    pivot: str | None = None

    @property
    def dim(self) -> int:
        return len(self.vars)

    def components_through(self, point: Sequence) -> list[Component]:
        return [c for c in self.components if c.poly.evaluate(point) == 0]

    def lift_from_parent(self, point: Sequence) -> tuple[Fraction, ...] | None:
        """Coordinates here of a parent-chart point, or None if it is not in this chart."""
        if self.parent is None:
            return tuple(Fraction(a) for a in point)
        point = tuple(Fraction(a) for a in point)
        locus = self.locus
        if locus.is_hypersurface:
            return point
        a = locus.translation(self.vars)
        out = list(point)
        if len(locus.coords) == 1:
            j = self.vars.index(locus.coords[0])
            out[j] = point[j] - a[j]
            return tuple(out)
        j = self.vars.index(self.pivot)
        yj = point[j] - a[j]
        if yj == 0:
            return None
        out[j] = yj
        for v in locus.coords:
            i = self.vars.index(v)
            if i != j:
                out[i] = (point[i] - a[i]) / yj
        return tuple(out)

    def push_to_parent(self, point: Sequence) -> tuple[Fraction, ...]:
        return tuple(self.subs[v].evaluate(point) for v in self.vars)


def _sort_key(chart_id: str) -> tuple[int, ...]:
    return tuple(int(p) for p in chart_id.split("."))


@dataclass(frozen=True, eq=False)
class PairState:
    """Leaf charts covering W_k, the labels of E with birth steps, and every chart ever made."""

    charts: tuple[Chart, ...]
    labels: tuple[tuple[int, int], ...]
    atlas: Mapping[str, Chart]

    @property
    def vars(self) -> tuple[str, ...]:
        return self.charts[0].vars

    @property
    def dim(self) -> int:
        return len(self.vars)

    def chart(self, chart_id: str) -> Chart:
        return self.atlas[chart_id]

    def leaf_ids(self) -> list[str]:
        return [c.id for c in self.charts]

    def label_set(self) -> set[int]:
        return {lab for lab, _ in self.labels}

    def next_label(self) -> int:
        return max((lab for lab, _ in self.labels), default=0) + 1

    def children(self, chart_id: str) -> list[Chart]:
        kids = [c for c in self.atlas.values() if c.parent == chart_id]
        return sorted(kids, key=lambda c: _sort_key(c.id))

    def ancestors(self, chart_id: str) -> list[str]:
        """Chart ids from ``chart_id`` up to the root, inclusive."""
        out = [chart_id]
        while self.atlas[out[-1]].parent is not None:
            out.append(self.atlas[out[-1]].parent)
        return out


def root_pair(vars: Sequence[str], exceptional: Mapping[int, Poly] | None = None) -> PairState:
    vars = tuple(vars)
    comps = tuple(Component(lab, p) for lab, p in sorted((exceptional or {}).items()))
    ident = {v: Poly.var(vars, v) for v in vars}
    root = Chart(ROOT, vars, to_root=ident, components=comps)
    labels = tuple((lab, 0) for lab, _ in sorted((exceptional or {}).items()))
    return PairState((root,), labels, {ROOT: root})


def chart_map(pair: PairState, ancestor_id: str, chart_id: str) -> dict[str, Poly]:
    """Ancestor coordinates as polynomials in the coordinates of ``chart_id``."""
    chain = pair.ancestors(chart_id)
    if ancestor_id not in chain:
        raise ChartError(f"{ancestor_id} is not an ancestor of {chart_id}")
    if ancestor_id == ROOT:
        return dict(pair.atlas[chart_id].to_root)
    path = chain[: chain.index(ancestor_id)]
    vars = pair.vars
    mapping = {v: Poly.var(vars, v) for v in vars}
    for cid in reversed(path):
        subs = pair.atlas[cid].subs
        mapping = {v: substitute(p, subs, vars) for v, p in mapping.items()}
    return mapping


def push_point(pair: PairState, chart_id: str, point: Sequence, ancestor_id: str = ROOT) -> tuple[Fraction, ...]:
    mapping = chart_map(pair, ancestor_id, chart_id)
    return tuple(mapping[v].evaluate(point) for v in pair.vars)


# -- geometry helpers ------------------------------------------------------


def coordinate_form(p: Poly) -> tuple[str, Fraction] | None:
    """(v, t) when p = c*(v - t) for a single variable v, else None."""
    if p.total_degree() != 1:
        return None
    lin = [e for e in p.terms if sum(e) == 1]
    if len(lin) != 1:
        return None
    e = lin[0]
    c = p.terms[e]
    v = p.vars[e.index(1)]
    return v, -p.constant_term() / c


def _rank(rows: list[list[Fraction]]) -> int:
    m = [list(r) for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][col] != 0:
                f = m[r][col] / m[rank][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


def transversal_at(polys: Sequence[Poly], point: Sequence) -> bool:
    """Gradients at ``point`` of the given hypersurfaces are linearly independent."""
    if not polys:
        return True
    rows = [[g.evaluate(point) for g in p.gradient()] for p in polys]
    return _rank(rows) == len(polys)


def _jacobian_det(f: Poly, g: Poly) -> Poly:
    x, y = f.vars
    return f.diff(x) * g.diff(y) - f.diff(y) * g.diff(x)


def ncd_check(pair: PairState, chart_id: str, point: Sequence, extra: Sequence[Poly] | None = None) -> bool:
    """Normal crossings at ``point`` of E (plus an optional principal hypersurface)."""
    chart = pair.atlas[chart_id]
    if len(point) != chart.dim:
        raise ChartError("point dimension does not match the chart")
    defs = [c.poly for c in chart.components_through(point)]
    if extra:
        extra = [g for g in extra if not g.is_zero()]
        if len(extra) == 1:
            if extra[0].evaluate(point) == 0:
                defs.append(extra[0])
        elif chart.dim > 2:
            raise ChartError("non-principal extra ideal is only supported in dimension 2")
    return transversal_at(defs, point)


def _pair_ncd_2d(chart: Chart) -> list[str]:
    problems = []
    comps = chart.components
    for c in comps:
        x, y = c.poly.vars
        if not plane.is_empty([c.poly, c.poly.diff(x), c.poly.diff(y)]):
            problems.append(f"chart {chart.id}: E{c.label} singular")
    for i in range(len(comps)):
        for j in range(i + 1, len(comps)):
            e1, e2 = comps[i].poly, comps[j].poly
            if not plane.is_empty([e1, e2, _jacobian_det(e1, e2)]):
                problems.append(f"chart {chart.id}: E{comps[i].label}, E{comps[j].label} not transversal")
            for k in range(j + 1, len(comps)):
                if not plane.is_empty([e1, e2, comps[k].poly]):
                    problems.append(f"chart {chart.id}: three components meet")
    return problems


def _pair_ncd_coordinates(chart: Chart) -> list[str]:
    seen: dict[tuple, int] = {}
    problems = []
    for c in chart.components:
        form = coordinate_form(c.poly)
        if form is None:
            problems.append(f"chart {chart.id}: E{c.label} is not a coordinate hyperplane")
            continue
        if form in seen:
            problems.append(f"chart {chart.id}: E{c.label} repeats E{seen[form]}")
        seen[form] = c.label
    return problems


def pair_ncd_problems(pair: PairState) -> list[str]:
    """Exact normal-crossings check of E on every leaf chart."""
    problems = []
    for chart in pair.charts:
        if chart.dim == 2 and not all(coordinate_form(c.poly) for c in chart.components):
            problems.extend(_pair_ncd_2d(chart))
        else:
            problems.extend(_pair_ncd_coordinates(chart))
    return problems


def _meets(system: Sequence[Poly], skip=None) -> bool:
    """Whether the system has a common zero outside the points ``skip`` accepts."""
    if skip is None:
        return not plane.is_empty(system)
    zs = plane.common_zeros(system)
    if zs.curve is not None or zs.irrational:
        return True  # cannot localize these; stay conservative
    return any(not skip(p) for p in zs.points)


def _hypersurface_problems(chart: Chart, g: Poly, skip=None) -> list[str]:
    x, y = chart.vars
    problems = []
    if _meets([g, g.diff(x), g.diff(y)], skip):
        problems.append(f"chart {chart.id}: center {g} is singular")
    others = [c for c in chart.components if not same_principal(c.poly, g)]
    for c in others:
        if _meets([g, c.poly, _jacobian_det(g, c.poly)], skip):
            problems.append(f"chart {chart.id}: center {g} tangent to E{c.label}")
    for i in range(len(others)):
        for j in range(i + 1, len(others)):
            if _meets([g, others[i].poly, others[j].poly], skip):
                problems.append(f"chart {chart.id}: center {g} passes through E{others[i].label} ∩ E{others[j].label}")
    return problems


def locus_problems(chart: Chart, locus: Locus, skip=None) -> list[str]:
    """Smoothness and normal crossings of one center piece; points accepted by ``skip`` are ignored."""
    vars = chart.vars
    if locus.is_hypersurface:
        g = locus.hypersurface
        if g.is_constant():
            return [f"chart {chart.id}: empty hypersurface center"]
        form = coordinate_form(g)
        if form is not None:
            return locus_problems(chart, Locus(coords=(form[0],), point=_translation_for(vars, {form[0]: form[1]})), skip)
        if chart.dim != 2:
            return [f"chart {chart.id}: non-coordinate hypersurface centers need dimension 2"]
        return _hypersurface_problems(chart, g, skip)
    if not locus.coords:
        return [f"chart {chart.id}: center needs at least one equation"]
    if locus.is_point(vars):
        pt = locus.as_point(vars)
        if not transversal_at([c.poly for c in chart.components_through(pt)], pt):
            return [f"chart {chart.id}: E has no normal crossings at {tuple(map(str, pt))}"]
        return []
    a = locus.translation(vars)
    problems = []
    for c in chart.components:
        form = coordinate_form(c.poly)
        if form is None:
            if chart.dim == 2:
                g = Poly.var(vars, locus.coords[0]) - a[vars.index(locus.coords[0])]
                return _hypersurface_problems(chart, g, skip)
            problems.append(f"chart {chart.id}: E{c.label} not a coordinate; cannot certify")
    return problems


def _translation_for(vars: Sequence[str], values: Mapping[str, Fraction]) -> tuple[Fraction, ...]:
    return tuple(Fraction(values.get(v, 0)) for v in vars)


def permissibility_problems(pair: PairState, center: Center, restriction: "Restriction | None" = None) -> list[str]:
    """Permissibility of a center; with a restriction only the open set is checked."""
    problems = []
    for cid, loci in center.items():
        if cid not in pair.atlas or pair.atlas[cid] not in pair.charts:
            problems.append(f"center refers to non-leaf chart {cid}")
            continue
        chart = pair.atlas[cid]
        skip = None
        if restriction:
            skip = lambda p, cid=cid: restriction.excludes(pair, cid, p)
        for locus in loci:
            problems.extend(locus_problems(chart, locus, skip))
        points = [l.as_point(chart.vars) for l in loci if l.is_point(chart.vars)]
        if len(set(points)) != len(points):
            problems.append(f"chart {cid}: repeated center point")
    return problems


def is_permissible(pair: PairState, center: Center) -> bool:
    return not permissibility_problems(pair, center)


# -- blowing up ---------------------------------------------------------------


def _strict(pulled: Poly, pivot_def: Poly, pivot_var: str | None) -> Poly:
    if pivot_var is not None:
        return coordinate_adic_division(pulled, pivot_var)[1]
    return adic_division(pulled, pivot_def)[1]


def blow_up_chart(chart: Chart, locus: Locus, label: int) -> list[Chart]:
    """Standard charts of the blow-up of one chart along one center piece."""
    vars = chart.vars
    children = []
    if locus.is_hypersurface:
        form = coordinate_form(locus.hypersurface)
        if form is not None:
            locus = Locus(coords=(form[0],), point=_translation_for(vars, {form[0]: form[1]}))
    if locus.is_hypersurface:
        g = locus.hypersurface
        plans = [(None, {v: Poly.var(vars, v) for v in vars}, g)]
    else:
        a = locus.translation(vars)
        plans = []
        for j in [v for v in vars if v in locus.coords]:
            subs = {}
            yj = Poly.var(vars, j)
            for v in vars:
                av = a[vars.index(v)]
                if v == j:
                    subs[v] = yj + av
                elif v in locus.coords:
                    subs[v] = Poly.var(vars, v) * yj + av
                else:
                    subs[v] = Poly.var(vars, v)
            plans.append((j, subs, yj))
    for k, (pivot, subs, pivot_def) in enumerate(plans, start=1):
        comps = []
        for i, c in enumerate(chart.components):
            pulled = substitute(c.poly, subs, vars)
            strict = _strict(pulled, pivot_def, pivot)
            if not strict.is_constant():
                comps.append(Component(c.label, strict, i))
        comps.append(Component(label, pivot_def, None))
        to_root = {r: substitute(p, subs, vars) for r, p in chart.to_root.items()}
        children.append(
            Chart(
                id=f"{chart.id}.{k}",
                vars=vars,
                parent=chart.id,
                subs=subs,
                to_root=to_root,
                components=tuple(comps),
                locus=locus,
                pivot=pivot,
            )
        )
    return children


@dataclass
class BlowupStep:
    parent: Chart
    locus: Locus
    children: list[Chart]


def blow_up_loci(chart: Chart, loci: Sequence[Locus], label: int) -> tuple[list[BlowupStep], list[Chart]]:
    """Blow up disjoint center pieces of one chart one after another.

    Later pieces must be points or hypersurfaces. Points are carried into
    the children of earlier blow-ups by their unique lifts, hypersurfaces
    by pulling back their equation.
    """
    loci = list(loci)
    if not loci:
        return [], [chart]
    first, rest = loci[0], loci[1:]
    n = len(chart.vars)
    if rest and not all(l.is_point(chart.vars) or l.dimension(chart.vars) == n - 1 for l in rest):
        raise ChartError("only points and hypersurfaces can share a chart with other center pieces")
    for l in rest:
        if l.is_point(chart.vars) and first.contains(chart.vars, l.as_point(chart.vars)):
            raise ChartError("center pieces in one chart must be disjoint")
    kids = blow_up_chart(chart, first, label)
    steps = [BlowupStep(chart, first, kids)]
    leaves = []
    for kid in kids:
        lifted = []
        for l in rest:
            if not l.is_point(chart.vars):
                eq = substitute(l.equations(chart.vars)[0], kid.subs, kid.vars)
                if not eq.is_constant():
                    lifted.append(Locus(hypersurface=eq))
                continue
            q = kid.lift_from_parent(l.as_point(chart.vars))
            if q is not None:
                lifted.append(Locus.at_point(kid.vars, q))
        sub_steps, sub_leaves = blow_up_loci(kid, lifted, label)
        steps.extend(sub_steps)
        leaves.extend(sub_leaves)
    return steps, leaves


def blow_up(pair: PairState, center: Center, new_label: int, step: int | None = None, check: bool = True) -> PairState:
    if check:
        problems = permissibility_problems(pair, center)
        if problems:
            raise PermissibilityError("; ".join(problems))
    atlas = dict(pair.atlas)
    leaves = []
    for chart in pair.charts:
        loci = center.get(chart.id, ())
        steps, new_leaves = blow_up_loci(chart, loci, new_label)
        for s in steps:
            for kid in s.children:
                atlas[kid.id] = kid
        leaves.extend(new_leaves)
    leaves.sort(key=lambda c: _sort_key(c.id))
    birth = step if step is not None else len({b for _, b in pair.labels}) + 1
    labels = pair.labels + ((new_label, birth),)
    return PairState(tuple(leaves), labels, atlas)


def lift_point(pair_before: PairState, pair_after: PairState, point: Sequence, chart_id: str) -> list[tuple[str, tuple[Fraction, ...]]]:
    """Preimages of a point off the center in the leaf charts of ``pair_after``."""
    leaf_ids = set(pair_after.leaf_ids())
    point = tuple(Fraction(a) for a in point)

    def walk(cid: str, pt) -> list:
        if cid in leaf_ids:
            return [(cid, pt)]
        kids = pair_after.children(cid)
        if not kids:
            return []
        locus = kids[0].locus
        if not locus.is_hypersurface and len(locus.coords) > 1 and locus.contains(pair_after.vars, pt):
            raise ChartError(f"point {tuple(map(str, pt))} lies on the center in chart {cid}")
        out = []
        for kid in kids:
            q = kid.lift_from_parent(pt)
            if q is not None:
                out.extend(walk(kid.id, q))
        return out

    if chart_id not in pair_before.leaf_ids():
        raise ChartError(f"{chart_id} is not a leaf chart")
    return walk(chart_id, point)


# -- restriction to open sets ----------------------------------------------


@dataclass(frozen=True)
class Restriction:
    """The open set W minus the union of V(avoid) over the given (chart, ideal) pairs.

    The avoided loci are pulled back to descendant charts on demand, so the
    same object restricts every later stage of a run.
    """

    avoid: tuple[tuple[str, tuple[Poly, ...]], ...] = ()

    def __bool__(self) -> bool:
        return bool(self.avoid)

    def _pulled(self, pair: PairState, chart_id: str) -> list[list[Poly]]:
        chain = pair.ancestors(chart_id)
        out = []
        for aid, gens in self.avoid:
            if aid not in chain:
                continue
            mapping = chart_map(pair, aid, chart_id)
            out.append([substitute(g, mapping, pair.vars) for g in gens])
        return out

    def excludes(self, pair: PairState, chart_id: str, point: Sequence) -> bool:
        for gens in self._pulled(pair, chart_id):
            if all(g.evaluate(point) == 0 for g in gens):
                return True
        return False

    def restrict_locus(self, pair: PairState, chart_id: str, locus: Locus) -> Locus | None:
        """The part of ``locus`` meeting the open set, or None when it misses it."""
        if not self.avoid:
            return locus
        vars = pair.vars
        pulled = self._pulled(pair, chart_id)
        if locus.is_hypersurface:
            keep = []
            for q in plane.irreducible_factors(locus.hypersurface) if len(vars) == 2 else [locus.hypersurface]:
                inside = any(all(g.is_zero() or _divides(q, g) for g in gens) for gens in pulled)
                if not inside:
                    keep.append(q)
            if not keep:
                return None
            prod = keep[0]
            for q in keep[1:]:
                prod = prod * q
            return Locus(hypersurface=prod)
        a = locus.translation(vars)
        subs = {v: Poly.const(vars, a[vars.index(v)]) for v in locus.coords}
        for gens in pulled:
            if all(substitute(g, subs, vars).is_zero() for g in gens):
                return None
        return locus


def _divides(q: Poly, g: Poly) -> bool:
    from .poly import divmod_poly

    return divmod_poly(g, q)[1].is_zero()


# -- export -------------------------------------------------------------------


def chart_to_json(chart: Chart) -> dict:
    out = {
        "id": chart.id,
        "parent": chart.parent,
        "components": [{"label": c.label, "def": format_poly(c.poly)} for c in chart.components],
    }
    if chart.subs is not None:
        out["subs"] = {v: format_poly(p) for v, p in chart.subs.items()}
        out["center"] = chart.locus.to_json(chart.vars)
        out["pivot"] = chart.pivot
    return out


def atlas_to_json(pair: PairState) -> dict:
    ids = sorted(pair.atlas, key=_sort_key)
    return {
        "vars": list(pair.vars),
        "leaves": pair.leaf_ids(),
        "labels": [[lab, birth] for lab, birth in pair.labels],
        "charts": [chart_to_json(pair.atlas[i]) for i in ids],
    }


def dot_from_json(tree: Mapping) -> str:
    """Graphviz rendering of an exported chart tree."""
    leaves = set(tree["leaves"])
    lines = ["digraph charts {", "  node [shape=box, fontname=monospace];"]
    for ch in tree["charts"]:
        parts = [f"chart {ch['id']}"]
        for v, p in ch.get("subs", {}).items():
            parts.append(f"{v} -> {p}")
        for c in ch["components"]:
            parts.append(f"E{c['label']}: {c['def']}")
        label = "\\n".join(parts).replace('"', '\\"')
        style = ", style=bold" if ch["id"] in leaves else ""
        lines.append(f'  "{ch["id"]}" [label="{label}"{style}];')
    for ch in tree["charts"]:
        if ch["parent"] is not None:
            lines.append(f'  "{ch["parent"]}" -> "{ch["id"]}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def atlas_to_dot(pair: PairState) -> str:
    return dot_from_json(json.loads(json.dumps(atlas_to_json(pair))))
