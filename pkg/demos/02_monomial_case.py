"""
The monomial case
=================

When J is a monomial in the exceptional equations the algorithm is pure
exponent bookkeeping. Take J = x^3*y with E1 = V(x), E2 = V(y) and b = 2.
"""

from blowup import MonomialStrategy, basic_object, parse, run_resolution
from blowup.invariants import best_monomial_witness

vars = ("x", "y")
bo = basic_object(vars, [parse("x^3*y", vars)], 2, {1: parse("x", vars), 2: parse("y", vars)})

# Sing(J, 2) is the whole line E1 (order 3 along it), so the best value uses
# the single label 1: M(-1, 3/2, [1]).
print(best_monomial_witness({1: 3, 2: 1}, 2))

trace = run_resolution(bo, MonomialStrategy())
for rec in trace.records:
    print(rec.step, rec.max_value, "dim", rec.dimension)

# %%
# Blowing up the line E1 replaces x^3 by E3^(3-2) = x: now J = x*y and only
# the crossing point has order 2, so the next center is E3 ∩ E2.
print({cid: str(g[0]) for cid, g in trace.states[1].ideals.items()})

# %%
# Exponent vectors are all that matter. Here is the same run for every
# x^a*y^c with a + c <= 4 and b = 2, listing the number of blow-ups.

for a in range(5):
    row = []
    for c in range(5 - a):
        gen = f"x^{a}*y^{c}" if a + c else "1"
        t = run_resolution(
            basic_object(vars, [parse(gen, vars)], 2, {1: parse("x", vars), 2: parse("y", vars)}), MonomialStrategy()
        )
        row.append(len(t.records))
    print(f"a = {a}:", row)

# %%
# In three variables the centers can be points, curves or surfaces.
xyz = ("x", "y", "z")
bo3 = basic_object(xyz, [parse("x^2*y*z", xyz)], 2, {i + 1: parse(v, xyz) for i, v in enumerate(xyz)})
t3 = run_resolution(bo3, MonomialStrategy())
print([(str(r.max_value), r.dimension) for r in t3.records])
