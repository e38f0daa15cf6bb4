"""
Piecewise-linear convex functions, conjugation, cones and the body/function dictionary.
"""

from .bodies import PerturbationResult, floor_body, lift_HA, perturb_bounded, replace_by_body, support_lift
from .cones import ConeSpec, MembershipResult, cone_membership, require_member
from .functions import (
    NOT_CONVEX,
    PLUS_INFINITY,
    AffineForm,
    DCPair,
    Marker,
    PolyConvexFunction,
    add,
    add_all,
    add_affine,
    affine_function,
    cell_vertices,
    cells,
    conjugate,
    epi_translate,
    epigraph,
    evaluate,
    functions_equal,
    indicator,
    less_equal,
    lower_envelope,
    max_affine,
    pointwise_max,
    pointwise_min_checked,
    recession_function,
    refinement,
    scale,
    support_function,
    zero_function,
)

__all__ = [
    "NOT_CONVEX",
    "PLUS_INFINITY",
    "AffineForm",
    "ConeSpec",
    "DCPair",
    "Marker",
    "MembershipResult",
    "PerturbationResult",
    "PolyConvexFunction",
    "add",
    "add_all",
    "add_affine",
    "affine_function",
    "cell_vertices",
    "cells",
    "cone_membership",
    "conjugate",
    "epi_translate",
    "epigraph",
    "evaluate",
    "floor_body",
    "functions_equal",
    "indicator",
    "less_equal",
    "lift_HA",
    "lower_envelope",
    "max_affine",
    "perturb_bounded",
    "pointwise_max",
    "pointwise_min_checked",
    "recession_function",
    "refinement",
    "replace_by_body",
    "require_member",
    "scale",
    "support_function",
    "support_lift",
    "zero_function",
]
