"""
Symmetry and locality
=====================

Two structural properties of the algorithm, checked by running it.

1. A linear change of coordinates that fixes J lifts to every stage, and the
   lifted action preserves Sing, the values of f and the centers.
2. Running on an open set gives the restriction of the global run, after
   dropping the steps whose centers miss the open set.
"""

from blowup import (
    ChartAutomorphism,
    CurveStrategy,
    basic_object,
    blow_up,
    equivariance_harness,
    lift_action,
    locality_check,
    parse,
    root_pair,
)
from blowup.charts import Locus

vars = ("x", "y")
swap = ChartAutomorphism.from_strings(vars, {"x": "y", "y": "x"})
flip = ChartAutomorphism.from_strings(vars, {"x": "-x"})

# %%
# On the blow-up of the origin, x <-> y exchanges the two charts, while
# (x, y) -> (-x, -y) acts inside each chart.
pair = blow_up(root_pair(vars), {"0": [Locus.at_point(vars, (0, 0))]}, 1)
print(lift_action(swap, pair))
print(lift_action(ChartAutomorphism.from_strings(vars, {"x": "-x", "y": "-y"}), pair))

# %%
# The harness runs the algorithm and checks every stage.
for text, b, g in (("x*y", 2, swap), ("x^2 - y^4", 1, flip), ("x^2 - y^3", 1, swap)):
    rep = equivariance_harness(basic_object(vars, [parse(text, vars)], b), [g])
    first = rep.failures()[0].check if rep.failures() else ""
    print(f"{text:<10} b={b}  {len(rep.checks):5d} checks  ok={rep.ok}  {first}")
# the cusp is not swap-invariant, so the harness stops at the input

# %%
# Locality: forbid the origin. The global run spends three point blow-ups over
# the origin; the restricted run only sees the smooth part of the cusp.
bo = basic_object(vars, [parse("x^2 - y^3", vars)], 1)
rep = locality_check(bo, [("0", (parse("x", vars), parse("y", vars)))], CurveStrategy())
print("ok", rep.ok, "kept", rep.kept_steps, "neglected", rep.neglected_steps, "restricted steps", rep.restricted_steps)
