"""Exact zero sets of polynomial systems in two variables.

Common zeros are found by projecting with a resultant, isolating the
rational roots of the eliminant, and back-substituting. Conjugate
(irrational) solutions are detected and reported rather than dropped.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import sympy

from .poly import Poly, normalize_ideal


class IrrationalPointError(ValueError):
    """A zero set contains points that are not rational."""


@dataclass
class ZeroSet:
    points: list[tuple[Fraction, Fraction]] = field(default_factory=list)
    irrational: list[str] = field(default_factory=list)
    curve: Poly | None = None  # nonconstant gcd: positive-dimensional part

    @property
    def empty(self) -> bool:
        return not self.points and not self.irrational and self.curve is None

    @property
    def finite(self) -> bool:
        return self.curve is None


@lru_cache(maxsize=None)
def _symbols(vars: tuple[str, ...]):
    return sympy.symbols(vars)


def to_sympy(p: Poly) -> sympy.Poly:
    gens = _symbols(p.vars)
    rep = {e: sympy.Rational(c.numerator, c.denominator) for e, c in p.terms.items()}
    if not rep:
        return sympy.Poly(0, *gens, domain="QQ")
    return sympy.Poly.from_dict(rep, *gens, domain="QQ")


def from_sympy(sp: sympy.Poly, vars: Sequence[str]) -> Poly:
    vars = tuple(vars)
    sp = sympy.Poly(sp.as_expr(), *_symbols(vars), domain="QQ")
    terms = {}
    for e, c in sp.terms():
        c = sympy.Rational(c)
        terms[tuple(int(k) for k in e)] = Fraction(int(c.p), int(c.q))
    return Poly(vars, terms)


def _univariate_rational_roots(sp: sympy.Poly) -> tuple[list[Fraction], list[str]]:
    """Rational roots and the irrational irreducible factors of a univariate poly."""
    roots: list[Fraction] = []
    others: list[str] = []
    if sp.is_zero or sp.degree() <= 0:
        return roots, others
    _, factors = sp.factor_list()
    for fac, _mult in factors:
        if fac.degree() == 1:
            a, b = fac.all_coeffs()
            r = sympy.Rational(-b, a)
            roots.append(Fraction(int(r.p), int(r.q)))
        elif fac.degree() > 1:
            others.append(str(fac.as_expr()))
    return sorted(set(roots)), others


def gcd_all(polys: Sequence[Poly]) -> Poly:
    sps = [to_sympy(p) for p in polys]
    g = sps[0]
    for s in sps[1:]:
        g = sympy.gcd(g, s)
    return from_sympy(g, polys[0].vars)


def common_zeros(polys: Iterable[Poly]) -> ZeroSet:
    """All common zeros over the algebraic closure, split by rationality."""
    polys = normalize_ideal(polys)
    if not polys:
        raise ValueError("the zero system has every point as a zero")
    vars = polys[0].vars
    if len(vars) != 2:
        raise ValueError("common_zeros supports exactly two variables")
    if any(p.is_constant() for p in polys):
        return ZeroSet()
    g = gcd_all(polys)
    if not g.is_constant():
        return ZeroSet(curve=g)
    sx, sy = _symbols(vars)
    sps = [to_sympy(p) for p in polys]
    if len(sps) == 1:  # pragma: no cover - a single nonconstant poly has gcd itself
        return ZeroSet(curve=polys[0])
    res = None
    for t in range(1, 40):
        h2 = sum((sps[i] * t**i for i in range(1, len(sps))), sympy.Poly(0, sx, sy, domain="QQ"))
        r = sympy.resultant(sps[0].as_expr(), h2.as_expr(), sy)
        r = sympy.Poly(r, sx, domain="QQ")
        if not r.is_zero:
            res = r
            break
    if res is None:  # pragma: no cover - generic combinations are coprime
        raise RuntimeError("could not find a nonvanishing resultant")
    xs, irr_factors = _univariate_rational_roots(res)
    out = ZeroSet()
    for x0 in xs:
        subs = [
            sympy.Poly(s.as_expr().subs(sx, sympy.Rational(x0.numerator, x0.denominator)), sy, domain="QQ")
            for s in sps
        ]
        gy = subs[0]
        for s in subs[1:]:
            gy = sympy.gcd(gy, s)
        if gy.is_zero:  # pragma: no cover - excluded by the gcd test above
            raise RuntimeError("vertical line in a finite zero set")
        ys, irr = _univariate_rational_roots(gy)
        out.points.extend((x0, y0) for y0 in ys)
        out.irrational.extend(f"{vars[0]}={x0}, {fac}=0" for fac in irr)
    for fac in irr_factors:
        q = sympy.Poly(sympy.sympify(fac), sx, domain="QQ")
        basis = sympy.groebner([s.as_expr() for s in sps] + [q.as_expr()], sx, sy, order="lex", domain="QQ")
        if not (len(basis.exprs) == 1 and basis.exprs[0] == 1):
            out.irrational.append(f"{fac}=0")
    out.points.sort()
    return out


def rational_zeros(polys: Iterable[Poly], what: str = "system") -> list[tuple[Fraction, Fraction]]:
    """Finite rational zero set; raise if a conjugate point or a curve appears."""
    zs = common_zeros(polys)
    if zs.curve is not None:
        raise ValueError(f"{what} has a one-dimensional zero set {zs.curve}")
    if zs.irrational:
        raise IrrationalPointError(f"{what} has irrational zeros: {'; '.join(zs.irrational)}")
    return zs.points


def is_empty(polys: Iterable[Poly]) -> bool:
    return common_zeros(polys).empty


def squarefree(p: Poly) -> bool:
    sp = to_sympy(p)
    _, factors = sp.factor_list()
    return all(m == 1 for _f, m in factors)


def irreducible_factors(p: Poly) -> list[Poly]:
    _, factors = to_sympy(p).factor_list()
    return [from_sympy(f, p.vars) for f, _m in factors]


_SAMPLE_VALUES = [Fraction(v) for v in (0, 1, -1, 2, -2, 3)] + [Fraction(1, 2), Fraction(-1, 2), Fraction(3, 2)]


def sample_curve_points(p: Poly, limit: int = 12) -> list[tuple[Fraction, Fraction]]:
    """Some rational points of the plane curve V(p), by slicing with lines."""
    if p.is_constant():
        return []
    sx, sy = _symbols(p.vars)
    sp = to_sympy(p)
    found: list[tuple[Fraction, Fraction]] = []
    for axis in (0, 1):
        for v in _SAMPLE_VALUES:
            sym, other = (sx, sy) if axis == 0 else (sy, sx)
            uni = sympy.Poly(sp.as_expr().subs(sym, sympy.Rational(v.numerator, v.denominator)), other, domain="QQ")
            if uni.is_zero:
                continue
            roots, _ = _univariate_rational_roots(uni)
            for r in roots:
                pt = (v, r) if axis == 0 else (r, v)
                if pt not in found:
                    found.append(pt)
            if len(found) >= limit:
                return sorted(found)
    return sorted(found)
