"""
Exact polyhedral geometry: hulls, representation conversion, intersections,
Minkowski sums, volumes and monomial integrals.
"""

from .integration import integrate_monomial, monte_carlo_integrate, simplex_volume, triangulate, volume
from .polyhedron import (
    Halfspace,
    HalfspaceSystem,
    Polyhedron,
    Polytope,
    convex_hull,
    from_halfspaces,
    intersect,
    intersect_all,
    minkowski_sum,
    to_halfspaces,
)
from .vectors import Point, Scalar, Vector, dot, to_point, to_scalar

__all__ = [
    "Halfspace",
    "HalfspaceSystem",
    "Point",
    "Polyhedron",
    "Polytope",
    "Scalar",
    "Vector",
    "convex_hull",
    "dot",
    "from_halfspaces",
    "integrate_monomial",
    "intersect",
    "intersect_all",
    "minkowski_sum",
    "monte_carlo_integrate",
    "simplex_volume",
    "to_halfspaces",
    "to_point",
    "to_scalar",
    "triangulate",
    "volume",
]
