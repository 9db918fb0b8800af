"""Orders of functions restricted to smooth plane curve germs.

A smooth germ V(g) at a point is parametrized as a truncated power series
graph; the restricted order of ``h`` is the ``t``-adic order of ``h``
along that graph. Intersection multiplicity with a smooth curve is the
special case of a single ``h``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .poly import INF, Poly

Series = list  # list[Fraction], index = power of t, fixed length


def _mul(a: Series, b: Series, n: int) -> Series:
    out = [Fraction(0)] * n
    for i, x in enumerate(a[:n]):
        if not x:
            continue
        for j in range(n - i):
            y = b[j]
            if y:
                out[i + j] += x * y
    return out


def _compose(p: Poly, slot: int, phi: Series, n: int) -> Series:
    """Evaluate a bivariate ``p`` with variable ``slot`` := phi(t), the other := t."""
    other = 1 - slot
    powers_phi = {0: [Fraction(1)] + [Fraction(0)] * (n - 1)}
    out = [Fraction(0)] * n
    for e, c in p.terms.items():
        k, j = e[slot], e[other]
        if j >= n:
            continue
        if k not in powers_phi:
            top = max(powers_phi)
            cur = powers_phi[top]
            for m in range(top + 1, k + 1):
                cur = _mul(cur, phi, n)
                powers_phi[m] = cur
        base = powers_phi[k]
        for i in range(n - j):
            if base[i]:
                out[i + j] += c * base[i]
    return out


def smooth_branch(g: Poly, n: int) -> tuple[int, Series]:
    """Solve g(phi(t), t) = 0 (or the transposed form) near the origin.

    Returns the index of the solved variable and its series up to t^(n-1).
    Requires g(0) = 0 and a nonvanishing gradient at the origin.
    """
    if len(g.vars) != 2:
        raise ValueError("smooth_branch works in two variables")
    if g.constant_term() != 0:
        raise ValueError("curve does not pass through the point")
    gx = g.diff(g.vars[0]).constant_term()
    gy = g.diff(g.vars[1]).constant_term()
    if gx:
        slot, lin = 0, gx
    elif gy:
        slot, lin = 1, gy
    else:
        raise ValueError("curve is singular at the point")
    phi = [Fraction(0)] * n
    # each pass fixes at least one more coefficient
    for _ in range(n + 1):
        val = _compose(g, slot, phi, n)
        if not any(val):
            break
        phi = [a - b / lin for a, b in zip(phi, val)]
    return slot, phi


def restricted_order(hs: Sequence[Poly], g: Poly, point: Sequence) -> float:
    """min over ``hs`` of the order at ``point`` of h restricted to the germ of V(g)."""
    g0 = g.translate(point)
    hs0 = [h.translate(point) for h in hs if not h.is_zero()]
    if not hs0:
        return INF
    n = max(max(h.total_degree(), 0) for h in hs0) * max(g0.total_degree(), 1) + 2
    slot, phi = smooth_branch(g0, n)
    best = INF
    for h in hs0:
        ser = _compose(h, slot, phi, n)
        for i, c in enumerate(ser):
            if c:
                best = min(best, i)
                break
    return best


def intersection_multiplicity(f: Poly, e: Poly, point: Sequence) -> float:
    """I_p(V(f), V(e)) for a curve V(e) smooth at ``point``."""
    return restricted_order([f], e, point)


def _initial_form_direction(f0: Poly, w: int) -> tuple[int, int]:
    form = f0.homogeneous_part(w)
    candidates = [(1, 0), (0, 1)] + [(1, k) for k in range(1, 4 * w + 4)]
    for d in candidates:
        if form.evaluate(d) != 0:
            return d
    raise ValueError("initial form vanishes on every tried direction")  # pragma: no cover


def coefficient_slope(gens: Sequence[Poly], point: Sequence, w: int):
    """Normalized order of the coefficient ideal on a maximal-contact curve.

    For an ideal of order ``w >= 2`` at ``point``, a maximal-contact curve is
    V(D^(w-1) f) where D is a derivation along a direction on which the
    initial form of a generator f of order w does not vanish. The value is
    min over i < w of ord(Delta^i restricted to that curve) / (w - i).
    """
    from .poly import delta_power

    gens0 = [h.translate(point) for h in gens if not h.is_zero()]
    pick = next(h for h in gens0 if h.min_degree() == w)
    d = _initial_form_direction(pick, w)
    x, y = pick.vars
    z = pick
    for _ in range(w - 1):
        z = z.diff(x).scale(d[0]) + z.diff(y).scale(d[1])
    origin = (0, 0)
    best = None
    layer = tuple(gens0)
    for i in range(w):
        if i:
            layer = delta_power(layer, 1)
        order = restricted_order(layer, z, origin)
        if order == INF:
            continue
        val = Fraction(int(order), w - i)
        best = val if best is None else min(best, val)
    return math.inf if best is None else best
