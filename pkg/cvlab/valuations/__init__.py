"""
Valuations on cones of convex functions: built-in kinds, decomposition,
polynomial fits, polarization, Goodey-Weil pairings, support probing,
extension and identity checks.
"""

from .base import Valuation
from .builtins import (
    DirichletValuation,
    DualizedValuation,
    HomogeneousComponent,
    MaxProbeValuation,
    TopDegreeValuation,
    dualize_valuation,
    make_dirichlet,
    make_top_degree,
)
from .decomposition import DecompositionResult, HomogeneityCheck, check_component_homogeneity, decompose_homogeneous
from .extension import ExtendedValuation, extend_valuation, l1_cone_function, reconstruct_density
from .fitting import AffinePolynomial, affine_poly_fit, epi_translation_fit, top_part_is_translation_invariant
from .goodey_weil import ProbeResult, SupportEstimate, gw_evaluate, polarize, support_estimate
from .verification import IdentityReport, IdentityViolation, verify_valuation_identity

__all__ = [
    "AffinePolynomial",
    "DecompositionResult",
    "DirichletValuation",
    "DualizedValuation",
    "ExtendedValuation",
    "HomogeneityCheck",
    "HomogeneousComponent",
    "IdentityReport",
    "IdentityViolation",
    "MaxProbeValuation",
    "ProbeResult",
    "SupportEstimate",
    "TopDegreeValuation",
    "Valuation",
    "affine_poly_fit",
    "check_component_homogeneity",
    "decompose_homogeneous",
    "dualize_valuation",
    "epi_translation_fit",
    "extend_valuation",
    "gw_evaluate",
    "l1_cone_function",
    "make_dirichlet",
    "make_top_degree",
    "polarize",
    "reconstruct_density",
    "support_estimate",
    "top_part_is_translation_invariant",
    "verify_valuation_identity",
]
