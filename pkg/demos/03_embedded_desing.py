"""
Embedded desingularization of plane curves
==========================================

Resolving (J, 1) for J = I(X) eventually blows up X itself. Stopping one stage
earlier, when max f first equals the value a(d) that f takes at smooth points
of X, leaves a smooth strict transform with normal crossings to E.
"""

from blowup import desingularize, parse, smooth_value, verify_embedded
from blowup.desing import result_at

vars = ("x", "y")
cusp = parse("x^2 - y^3", vars)

# a(d) is read off at any regular point of X; (1, 1) lies on the cusp
print(smooth_value([cusp], (1, 1)))

res = desingularize([cusp], continue_full=True)
print("k =", res.k, "after centers of dimension", [r.dimension for r in res.trace.records])
for e in res.ledger:
    print(f"  {e.check:<24}{e.status}")

# %%
# One stage earlier the strict transform is already smooth, but it passes
# through the crossing of E1 and E2.
early = result_at(res.full_trace, res.k - 1, res.a_d)
for e in verify_embedded(early, [cusp]):
    print(f"  {e.check:<24}{e.status}  {e.witnesses[:1]}")

# %%
# Other curves: a node needs two blow-ups, a tacnode three, a smooth curve none.
for text in ("x^2 - y^2", "x^2 - y^4", "y - x^2", "y^2 - x^2 - x^3"):
    r = desingularize([parse(text, vars)])
    print(f"{text:<18} k = {r.k}  ok = {r.ok}")
