"""Resolution of basic objects (W, (J, b), E) by blow-ups, in exact rational arithmetic."""

from .basic_object import (
    BasicObject,
    ResolutionError,
    ResolutionTrace,
    basic_object,
    recompose_check,
    restrict_bo,
    sing_locus,
    transform,
)
from .charts import Locus, Restriction, blow_up, root_pair
from .desing import desingularize, smooth_value, verify_embedded
from .equivariance import ChartAutomorphism, GroupSpec, equivariance_harness, is_invariant, lift_action, pullback_ideal
from .invariants import Monomial, Positive
from .poly import Poly, delta, delta_power, ideal_order_at_point, parse
from .strategy import CurveStrategy, MonomialStrategy, locality_check, run_resolution

__all__ = [
    "BasicObject",
    "ChartAutomorphism",
    "CurveStrategy",
    "GroupSpec",
    "Locus",
    "Monomial",
    "MonomialStrategy",
    "Poly",
    "Positive",
    "ResolutionError",
    "ResolutionTrace",
    "Restriction",
    "basic_object",
    "blow_up",
    "delta",
    "delta_power",
    "desingularize",
    "equivariance_harness",
    "ideal_order_at_point",
    "is_invariant",
    "lift_action",
    "locality_check",
    "parse",
    "pullback_ideal",
    "recompose_check",
    "restrict_bo",
    "root_pair",
    "run_resolution",
    "sing_locus",
    "smooth_value",
    "transform",
    "verify_embedded",
]
