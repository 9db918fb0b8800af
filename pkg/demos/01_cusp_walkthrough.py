"""
Resolving the cusp, one blow-up at a time
=========================================

The basic object (A^2, (x^2 - y^3, 1), {}) is principalized by eight blow-ups.
Here we watch each one: the value max f that picks the center, the center
itself, and the multiplicity c of the total transform along the new divisor.
"""

from blowup import CurveStrategy, basic_object, parse, recompose_check, run_resolution

vars = ("x", "y")
f = parse("x^2 - y^3", vars)
print(f)  # printed in descending graded order

bo = basic_object(vars, [f], 1)
trace = run_resolution(bo, CurveStrategy())

# %%
# The sequence of max f values. Positive values come first (a residual of
# positive order is still around); monomial values take over once the residual
# is a unit and only exceptional factors remain.

for rec in trace.records:
    where = {cid: [l.describe(vars) for l in loci] for cid, loci in rec.center.items()}
    print(f"step {rec.step}: max f = {rec.max_value}  dim {rec.dimension}  E{rec.label}  c_min = {rec.min_c}")
    print("    center", where)

# the values strictly decrease
vals = trace.max_values
print(all(a > b for a, b in zip(vals, vals[1:])))

# %%
# After the first blow-up the chart x -> x*y, y -> y carries the controlled
# transform y*(x^2 - y): one copy of E1 (c - b = 2 - 1) times the strict
# transform, which is tangent to E1.

s1 = trace.states[1]
gens, exps = s1.residual("0.2")
print("J1 =", s1.ideals["0.2"][0], "  residual", gens[0], "  exponents", exps)

# %%
# At the end every chart holds J = O and the pulled-back x^2 - y^3 is a
# monomial in the exceptional equations. recompose_check rebuilds that from
# the chart substitutions alone.

final = trace.final
for ch in final.pair.charts:
    mono = " * ".join(f"({c.poly})^{m}" for c, m in zip(ch.components, final.cert[ch.id]) if m)
    print(f"{ch.id:>16}  J = {final.ideals[ch.id][0]}   {mono}")
print("recompose:", recompose_check(final))
