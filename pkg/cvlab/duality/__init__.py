"""
Infimal convolution, epi-multiplication, epigraph distance and dual cones.
"""

from .calculus import epi_distance, epi_mult, inf_conv
from .cones import Cone, DualConeSpec, cone_contains, dual_cone, require_in_cone

__all__ = [
    "Cone",
    "DualConeSpec",
    "cone_contains",
    "dual_cone",
    "epi_distance",
    "epi_mult",
    "inf_conv",
    "require_in_cone",
]
