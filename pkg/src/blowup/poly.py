"""Exact sparse multivariate polynomials over the rationals.

A :class:`Poly` is an immutable map from exponent tuples to nonzero
:class:`fractions.Fraction` coefficients, tied to an ordered tuple of
variable names. Ideals are plain tuples of polynomials over one ring.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

INF = math.inf


class PolyError(ValueError):
    pass


class ParseError(PolyError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


def _frac(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return Fraction(value.strip())
    return Fraction(value)


class Poly:
    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, vars: Sequence[str], terms: Mapping[tuple, Fraction] | None = None):
        self.vars = tuple(vars)
        n = len(self.vars)
        clean = {}
        if terms:
            for exps, c in terms.items():
                if len(exps) != n:
                    raise PolyError(f"exponent length {len(exps)} does not match {n} variables")
                c = _frac(c)
                if c:
                    clean[tuple(exps)] = c
        self.terms = clean
        self._hash = None

    # -- constructors -------------------------------------------------

    @classmethod
    def const(cls, vars: Sequence[str], value) -> "Poly":
        return cls(vars, {(0,) * len(vars): _frac(value)})

    @classmethod
    def var(cls, vars: Sequence[str], name: str) -> "Poly":
        vars = tuple(vars)
        if name not in vars:
            raise PolyError(f"unknown variable {name!r}")
        e = [0] * len(vars)
        e[vars.index(name)] = 1
        return cls(vars, {tuple(e): Fraction(1)})

    @classmethod
    def zero(cls, vars: Sequence[str]) -> "Poly":
        return cls(vars, {})

    @classmethod
    def monomial(cls, vars: Sequence[str], exps: Sequence[int], coeff=1) -> "Poly":
        return cls(vars, {tuple(exps): _frac(coeff)})

    # -- basic queries -----------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * len(self.vars), Fraction(0))

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def min_degree(self) -> float:
        """Lowest total degree of a term; ``INF`` for the zero polynomial."""
        if not self.terms:
            return INF
        return min(sum(e) for e in self.terms)

    def degree_in(self, name: str) -> int:
        i = self.vars.index(name)
        if not self.terms:
            return -1
        return max(e[i] for e in self.terms)

    def support(self) -> list[tuple]:
        return sorted(self.terms, key=_grlex_key, reverse=True)

    def leading(self) -> tuple[tuple, Fraction]:
        e = max(self.terms, key=_grlex_key)
        return e, self.terms[e]

    def _check_ring(self, other: "Poly") -> None:
        if self.vars != other.vars:
            raise PolyError(f"ring mismatch: {self.vars} vs {other.vars}")

    def _lift(self, other) -> "Poly":
        if isinstance(other, Poly):
            self._check_ring(other)
            return other
        return Poly.const(self.vars, other)

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other) -> "Poly":
        other = self._lift(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return Poly(self.vars, out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "Poly":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "Poly":
        return self._lift(other) - self

    def __mul__(self, other) -> "Poly":
        other = self._lift(other)
        out: dict[tuple, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Poly(self.vars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if not isinstance(k, int) or k < 0:
            raise PolyError("exponent must be a non-negative integer")
        result = Poly.const(self.vars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c) -> "Poly":
        c = _frac(c)
        return Poly(self.vars, {e: v * c for e, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.vars == other.vars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Poly.const(self.vars, other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.vars, frozenset(self.terms.items())))
        return self._hash

    # -- calculus & evaluation --------------------------------------

    def diff(self, name: str) -> "Poly":
        i = self.vars.index(name)
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = c * e[i]
        return Poly(self.vars, out)

    def gradient(self) -> list["Poly"]:
        return [self.diff(v) for v in self.vars]

    def evaluate(self, point: Sequence) -> Fraction:
        if len(point) != len(self.vars):
            raise PolyError(f"point has {len(point)} coordinates, ring has {len(self.vars)}")
        pt = [_frac(a) for a in point]
        total = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for a, k in zip(pt, e):
                if k:
                    term *= a**k
            total += term
        return total

    def translate(self, point: Sequence) -> "Poly":
        """Return ``p(x + point)`` so that ``point`` becomes the origin."""
        if len(point) != len(self.vars):
            raise PolyError(f"point has {len(point)} coordinates, ring has {len(self.vars)}")
        if not any(point):
            return self
        mapping = {
            v: Poly.var(self.vars, v) + _frac(a) for v, a in zip(self.vars, point)
        }
        return substitute(self, mapping)

    def homogeneous_part(self, degree: int) -> "Poly":
        return Poly(self.vars, {e: c for e, c in self.terms.items() if sum(e) == degree})

    def rename(self, vars: Sequence[str]) -> "Poly":
        return Poly(vars, self.terms)

    def __repr__(self) -> str:
        return f"Poly({format_poly(self)!r}, vars={self.vars})"

    def __str__(self) -> str:
        return format_poly(self)


def _grlex_key(e: tuple) -> tuple:
    return (sum(e), e)


# -- formatting ---------------------------------------------------------


def _format_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_poly(p: Poly) -> str:
    """Render in descending graded-lexicographic order, e.g. ``x^2 - y^3``."""
    if p.is_zero():
        return "0"
    parts = []
    for e in p.support():
        c = p.terms[e]
        mono = "*".join(
            v if k == 1 else f"{v}^{k}" for v, k in zip(p.vars, e) if k
        )
        a = abs(c)
        if not mono:
            body = _format_coeff(a)
        elif a == 1:
            body = mono
        else:
            body = f"{_format_coeff(a)}*{mono}"
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


# -- parsing ------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # pragma: no cover - regex always matches a char
            raise ParseError("unexpected input", pos)
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            tokens.append(("int", m.group(1), start))
        elif m.group(2) is not None:
            tokens.append(("var", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*^()/":
                raise ParseError(f"unexpected character {ch!r}", start)
            tokens.append(("op", ch, start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, vars: tuple[str, ...]):
        self.tokens = _tokenize(text)
        self.i = 0
        self.vars = vars

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, val, pos = self.take()
        if val != value or kind != "op":
            raise ParseError(f"expected {value!r}, found {val or 'end of input'!r}", pos)

    def expr(self) -> Poly:
        kind, val, _ = self.peek()
        negate = False
        if kind == "op" and val in "+-":
            self.take()
            negate = val == "-"
        acc = self.term()
        if negate:
            acc = -acc
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                t = self.term()
                acc = acc + t if val == "+" else acc - t
            else:
                return acc

    def term(self) -> Poly:
        acc = self.factor()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val == "*":
                self.take()
                acc = acc * self.factor()
            elif kind in ("int", "var") or (kind == "op" and val == "("):
                acc = acc * self.factor()
            else:
                return acc

    def factor(self) -> Poly:
        base = self.base()
        kind, val, _ = self.peek()
        if kind == "op" and val == "^":
            self.take()
            kind, val, pos = self.take()
            if kind != "int":
                raise ParseError("exponent must be a non-negative integer", pos)
            base = base ** int(val)
        return base

    def base(self) -> Poly:
        kind, val, pos = self.take()
        if kind == "int":
            nxt = self.peek()
            if nxt[0] == "op" and nxt[1] == "/":
                self.take()
                k2, v2, p2 = self.take()
                if k2 != "int":
                    raise ParseError("expected denominator", p2)
                if int(v2) == 0:
                    raise ParseError("zero denominator", p2)
                return Poly.const(self.vars, Fraction(int(val), int(v2)))
            return Poly.const(self.vars, int(val))
        if kind == "var":
            if val not in self.vars:
                raise ParseError(f"unknown variable {val!r}", pos)
            return Poly.var(self.vars, val)
        if kind == "op" and val == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        raise ParseError(f"unexpected {val or 'end of input'!r}", pos)


def parse(text: str, vars: Sequence[str]) -> Poly:
    """Parse a polynomial expression over the ring with the given variables.

    >>> str(parse("(x+y)^2", ["x", "y"]))
    'x^2 + 2*x*y + y^2'
    """
    parser = _Parser(text, tuple(vars))
    result = parser.expr()
    kind, val, pos = parser.peek()
    if kind != "end":
        raise ParseError(f"unexpected {val!r}", pos)
    return result


# -- substitution & division ------------------------------------------


def substitute(p: Poly, mapping: Mapping[str, Poly], target_vars: Sequence[str] | None = None) -> Poly:
    """Simultaneously replace each variable of ``p`` by a polynomial.

    Unmapped variables are kept only when the target ring equals the
    source ring.
    """
    images = list(mapping.values())
    if target_vars is None:
        target_vars = images[0].vars if images else p.vars
    target_vars = tuple(target_vars)
    for img in images:
        if img.vars != target_vars:
            raise PolyError("substitution images live in different rings")
    columns = []
    for v in p.vars:
        if v in mapping:
            columns.append(mapping[v])
        elif target_vars == p.vars:
            columns.append(Poly.var(target_vars, v))
        else:
            raise PolyError(f"variable {v!r} is not mapped into the target ring")
    powers: list[dict[int, Poly]] = [{0: Poly.const(target_vars, 1)} for _ in columns]

    def power(i: int, k: int) -> Poly:
        cache = powers[i]
        if k not in cache:
            j = max(x for x in cache if x < k)
            cache[k] = cache[j] * columns[i] ** (k - j)
        return cache[k]

    total: dict[tuple, Fraction] = {}
    for e, c in p.terms.items():
        term = Poly.const(target_vars, c)
        for i, k in enumerate(e):
            if k:
                term = term * power(i, k)
        for te, tc in term.terms.items():
            total[te] = total.get(te, 0) + tc
    return Poly(target_vars, total)


def divmod_poly(p: Poly, g: Poly) -> tuple[Poly, Poly]:
    """Division with remainder by a single polynomial, graded-lex leading terms.

    A single polynomial is a Groebner basis of its own ideal, so the
    remainder is zero exactly when ``g`` divides ``p``.
    """
    p._check_ring(g)
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    lead_e, lead_c = g.leading()
    quot: dict[tuple, Fraction] = {}
    rem: dict[tuple, Fraction] = {}
    work = dict(p.terms)
    while work:
        e = max(work, key=_grlex_key)
        c = work[e]
        if all(a >= b for a, b in zip(e, lead_e)):
            qe = tuple(a - b for a, b in zip(e, lead_e))
            qc = c / lead_c
            quot[qe] = quot.get(qe, 0) + qc
            for ge, gc in g.terms.items():
                te = tuple(a + b for a, b in zip(qe, ge))
                nv = work.get(te, 0) - qc * gc
                if nv:
                    work[te] = nv
                else:
                    work.pop(te, None)
        else:
            rem[e] = c
            del work[e]
    return Poly(p.vars, quot), Poly(p.vars, rem)


def exact_divide(p: Poly, g: Poly) -> Poly:
    q, r = divmod_poly(p, g)
    if not r.is_zero():
        raise PolyError(f"{g} does not divide {p}")
    return q


def adic_division(p: Poly, g: Poly) -> tuple[int, Poly]:
    """Largest ``e`` with ``g^e | p`` and the cofactor."""
    if p.is_zero():
        raise PolyError("adic division of the zero polynomial")
    if g.is_constant():
        raise PolyError("adic division by a unit")
    e = 0
    while True:
        q, r = divmod_poly(p, g)
        if not r.is_zero():
            return e, p
        p = q
        e += 1


def coordinate_adic_division(p: Poly, name: str) -> tuple[int, Poly]:
    """Split ``p = name^e * q`` with ``name`` not dividing ``q``."""
    if p.is_zero():
        raise PolyError("adic division of the zero polynomial")
    i = p.vars.index(name)
    e = min(ex[i] for ex in p.terms)
    out = {}
    for ex, c in p.terms.items():
        ne = list(ex)
        ne[i] -= e
        out[tuple(ne)] = c
    return e, Poly(p.vars, out)


def order_at_point(p: Poly, point: Sequence) -> float:
    """Order of ``p`` in the local ring at ``point``; ``INF`` iff ``p == 0``."""
    return p.translate(point).min_degree()


def ideal_order_at_point(gens: Iterable[Poly], point: Sequence) -> float:
    return min(order_at_point(g, point) for g in gens)


def order_along(p: Poly, names: Sequence[str], point: Sequence | None = None) -> float:
    """Order of ``p`` along the translated coordinate subspace V(v - a : v in names)."""
    if point is not None:
        p = p.translate(point)
    if p.is_zero():
        return INF
    idx = [p.vars.index(v) for v in names]
    return min(sum(e[i] for i in idx) for e in p.terms)


# -- ideals -------------------------------------------------------------


def normalize_ideal(gens: Iterable[Poly]) -> tuple[Poly, ...]:
    out = []
    seen = set()
    for g in gens:
        if g.is_zero() or g in seen:
            continue
        seen.add(g)
        out.append(g)
    return tuple(out)


def check_ideal(gens: Sequence[Poly]) -> tuple[Poly, ...]:
    gens = tuple(gens)
    if not gens:
        raise PolyError("an ideal needs at least one generator")
    if all(g.is_zero() for g in gens):
        raise PolyError("the zero ideal is not allowed")
    ring = gens[0].vars
    if any(g.vars != ring for g in gens):
        raise PolyError("generators live in different rings")
    return gens


def is_unit_ideal(gens: Iterable[Poly]) -> bool:
    """Sufficient test: some generator is a nonzero constant."""
    return any(g.is_constant() and not g.is_zero() for g in gens)


def delta(gens: Sequence[Poly]) -> tuple[Poly, ...]:
    """Generators together with all their first partial derivatives."""
    gens = tuple(gens)
    if is_unit_ideal(gens):
        return gens
    out = list(gens)
    for g in gens:
        out.extend(g.gradient())
    return normalize_ideal(out)


def delta_power(gens: Sequence[Poly], k: int) -> tuple[Poly, ...]:
    if k < 0:
        raise PolyError("delta_power needs k >= 0")
    out = tuple(gens)
    for _ in range(k):
        nxt = delta(out)
        if nxt == out:
            break
        out = nxt
    return out


def monic(p: Poly) -> Poly:
    """Scale so the graded-lex leading coefficient is 1."""
    if p.is_zero():
        return p
    return p.scale(1 / p.leading()[1])


def same_principal(p: Poly, q: Poly) -> bool:
    """Equality of principal ideals (p) = (q) in the polynomial ring."""
    return monic(p) == monic(q)
