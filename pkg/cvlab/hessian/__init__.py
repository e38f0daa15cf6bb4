"""
Subdifferentials, the order-zero Hessian measure and integrals against it.
"""

from .catalog import HingeBump, bump_pair, dc_decompose_catalog
from .density import DensityCell, DensityTerm, PiecewisePolyDensity, integrate_against_theta0
from .measures import Theta0Atom, Theta0Atoms, check_region, subdifferential, theta0

__all__ = [
    "DensityCell",
    "DensityTerm",
    "HingeBump",
    "PiecewisePolyDensity",
    "Theta0Atom",
    "Theta0Atoms",
    "bump_pair",
    "check_region",
    "dc_decompose_catalog",
    "integrate_against_theta0",
    "subdifferential",
    "theta0",
]
