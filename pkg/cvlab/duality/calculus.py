"""
Epi-calculus: infimal convolution, epi-multiplication and a truncated
epigraph distance.
"""

import logging
import math
from typing import List

import numpy as np
from scipy.optimize import linprog

from ..convex import PolyConvexFunction, epigraph, lower_envelope, recession_function
from ..convex.functions import AffineForm
from ..errors import DimensionMismatchError, IncreaseRhoError, PreconditionError
from ..geometry import Polyhedron, intersect, minkowski_sum
from ..geometry.vectors import Point, ScalarLike, to_scalar

logger = logging.getLogger(__name__)


def inf_conv(f: PolyConvexFunction, g: PolyConvexFunction) -> PolyConvexFunction:
    """f □ g, whose epigraph is epi f + epi g."""
    if f.n != g.n:
        raise DimensionMismatchError(f"Functions on R^{f.n} and R^{g.n} cannot be convolved")
    return lower_envelope(minkowski_sum(epigraph(f), epigraph(g)))


def epi_mult(f: PolyConvexFunction, lam: ScalarLike) -> PolyConvexFunction:
    """
    λ ⋆ f = λ f(· / λ) for λ > 0 and the recession function for λ = 0.

    Args:
        f (PolyConvexFunction): The function
        lam (ScalarLike): Nonnegative factor

    Returns:
        PolyConvexFunction: The function whose epigraph is λ·epi f
    """
    lam = to_scalar(lam)
    if lam < 0:
        raise PreconditionError("Epi-multiplication needs a nonnegative factor", code="invalid factor")
    if lam == 0:
        return recession_function(f)
    pieces = tuple(sorted(AffineForm(p.y, lam * p.c) for p in f.pieces))
    domain = None if f.domain is None else f.domain.scale(lam)
    return PolyConvexFunction(f.n, pieces, domain)


def _truncated_epigraph(f: PolyConvexFunction, rho) -> Polyhedron:
    return intersect(epigraph(f), Polyhedron.cube(f.n + 1, rho).halfspaces)


def _distance_to(point: Point, polytope: Polyhedron) -> float:
    """Max-norm distance from a point to a polytope, as a linear program."""
    if polytope.contains_point(point):
        return 0.0
    dim = polytope.dim
    rows = polytope.halfspaces.rows
    # variables (z, s): minimize s subject to |z - p|_∞ <= s and z ∈ polytope
    cost = np.zeros(dim + 1)
    cost[-1] = 1.0
    a_ub: List[List[float]] = []
    b_ub: List[float] = []
    for i in range(dim):
        unit = [0.0] * dim
        unit[i] = 1.0
        a_ub.append(unit + [-1.0])
        b_ub.append(float(point[i]))
        a_ub.append([-x for x in unit] + [-1.0])
        b_ub.append(-float(point[i]))
    for row in rows:
        a_ub.append([float(x) for x in row.a] + [0.0])
        b_ub.append(float(row.b))
    bounds = [(None, None)] * dim + [(0, None)]
    result = linprog(cost, A_ub=np.array(a_ub), b_ub=np.array(b_ub), bounds=bounds, method="highs")
    if not result.success:
        raise PreconditionError(f"Distance program failed: {result.message}", code="solver failure")
    return float(result.fun)


def _hausdorff(first: Polyhedron, second: Polyhedron) -> float:
    # the distance to a convex set is convex, so both suprema sit at vertices
    forward = max(_distance_to(v, second) for v in first.vertices)
    backward = max(_distance_to(v, first) for v in second.vertices)
    return max(forward, backward)


def epi_distance(f: PolyConvexFunction, g: PolyConvexFunction, rho: ScalarLike) -> float:
    """
    Max-norm Hausdorff distance between epi f and epi g inside the cube of radius ρ.

    Float-valued; used for continuity smoke tests only.

    Args:
        f (PolyConvexFunction): First function
        g (PolyConvexFunction): Second function
        rho (ScalarLike): Truncation radius

    Returns:
        float: The distance, ``math.inf`` when exactly one truncation is empty
    """
    if f.n != g.n:
        raise DimensionMismatchError(f"Functions on R^{f.n} and R^{g.n} cannot be compared")
    rho = to_scalar(rho)
    if rho <= 0:
        raise PreconditionError("rho must be positive", code="invalid rho")
    first, second = _truncated_epigraph(f, rho), _truncated_epigraph(g, rho)
    if first.is_empty and second.is_empty:
        raise IncreaseRhoError(f"Both epigraphs miss the cube of radius {rho}", details={"rho": str(rho)})
    if first.is_empty or second.is_empty:
        return math.inf
    distance = _hausdorff(first, second)
    logger.debug(f"epi_distance: rho={rho}, distance={distance}")
    return distance
