"""
Volumes and exact monomial integrals over polytopes.

Polytopes are dissected by a lexicographic pulling triangulation: the smallest
vertex is joined to a triangulation of every facet that does not contain it,
recursively. Monomials are integrated over each simplex through the moments of
the uniform distribution on the standard simplex,
E[l^b] = k! prod(b_i!) / (k + |b|)!.
"""

import logging
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import FrozenSet, List, Optional, Sequence, Tuple

import numpy as np
import sympy

from ..errors import DimensionMismatchError, NotAPolytopeError
from .polyhedron import Polyhedron
from .vectors import Point, affine_rank, determinant, dot, from_sympy, to_sympy, vsub

logger = logging.getLogger(__name__)

Simplex = Tuple[Point, ...]


def _require_polytope(polytope: Polyhedron) -> None:
    if polytope.rays:
        raise NotAPolytopeError("Volume and integrals need a bounded polyhedron")


def _pull(
    face: Tuple[int, ...], k: int, facets: Sequence[FrozenSet[int]], vertices: Sequence[Point]
) -> List[Tuple[int, ...]]:
    if k == 0:
        return [(face[0],)]
    apex = face[0]
    members = set(face)
    seen = set()
    simplices = []
    for facet in facets:
        sub = tuple(sorted(members & facet))
        if apex in sub or len(sub) < k or sub in seen:
            continue
        seen.add(sub)
        if affine_rank([vertices[i] for i in sub]) != k - 1:
            continue
        simplices.extend((apex,) + tail for tail in _pull(sub, k - 1, facets, vertices))
    return simplices


def triangulate(polytope: Polyhedron) -> List[Simplex]:
    """Full-dimensional simplices dissecting ``polytope``; empty if it is thin."""
    _require_polytope(polytope)
    if not polytope.has_interior:
        return []
    vertices = list(polytope.vertices)  # already sorted lexicographically
    facets = [
        frozenset(i for i, v in enumerate(vertices) if dot(row.a, v) == row.b) for row in polytope.halfspaces.rows
    ]
    index_simplices = _pull(tuple(range(len(vertices))), polytope.dim, facets, vertices)
    logger.debug(f"triangulate: {len(vertices)} vertices -> {len(index_simplices)} simplices")
    return [tuple(vertices[i] for i in simplex) for simplex in index_simplices]


def simplex_volume(simplex: Simplex) -> Fraction:
    k = len(simplex) - 1
    base = simplex[0]
    return abs(determinant([vsub(v, base) for v in simplex[1:]])) / factorial(k)


def volume(polytope: Polyhedron) -> Fraction:
    """Lebesgue measure in the ambient dimension; zero for thin polytopes."""
    _require_polytope(polytope)
    return sum((simplex_volume(s) for s in triangulate(polytope)), Fraction(0))


@lru_cache(maxsize=None)
def _moment(exponents: Tuple[int, ...]) -> Fraction:
    k = len(exponents) - 1
    numerator = factorial(k)
    for e in exponents:
        numerator *= factorial(e)
    return Fraction(numerator, factorial(k + sum(exponents)))


def _simplex_monomial_mean(simplex: Simplex, alpha: Tuple[int, ...]) -> Fraction:
    k = len(simplex) - 1
    lam = sympy.symbols(f"l0:{k + 1}")
    expression = sympy.Integer(1)
    for j, power in enumerate(alpha):
        if power:
            coordinate = sum(lam[i] * to_sympy(simplex[i][j]) for i in range(k + 1))
            expression *= coordinate**power
    poly = sympy.Poly(expression, *lam)
    total = Fraction(0)
    for monomial, coefficient in poly.terms():
        total += from_sympy(coefficient) * _moment(tuple(monomial))
    return total


def integrate_monomial(polytope: Polyhedron, alpha: Sequence[int]) -> Fraction:
    """Exact integral of x^alpha over ``polytope``."""
    _require_polytope(polytope)
    alpha = tuple(int(a) for a in alpha)
    if len(alpha) != polytope.dim:
        raise DimensionMismatchError(f"Multi-index {alpha} does not match dimension {polytope.dim}")
    if any(a < 0 for a in alpha):
        raise ValueError("Multi-index entries must be nonnegative")
    total = Fraction(0)
    for simplex in triangulate(polytope):
        size = simplex_volume(simplex)
        if not any(alpha):
            total += size
        else:
            total += size * _simplex_monomial_mean(simplex, alpha)
    return total


def monte_carlo_integrate(
    polytope: Polyhedron, alpha: Sequence[int], samples: int = 20000, seed: Optional[int] = None
) -> float:
    """Float estimate of the integral of x^alpha by rejection sampling in the bounding box."""
    _require_polytope(polytope)
    if polytope.is_empty:
        return 0.0
    lower, upper = polytope.bounding_box()
    lo = np.array([float(x) for x in lower])
    hi = np.array([float(x) for x in upper])
    box_volume = float(np.prod(hi - lo))
    if box_volume == 0.0:
        return 0.0
    rng = np.random.default_rng(seed)
    points = rng.uniform(lo, hi, size=(samples, polytope.dim))
    rows = polytope.halfspaces.rows
    a = np.array([[float(x) for x in row.a] for row in rows])
    b = np.array([float(row.b) for row in rows])
    inside = np.all(points @ a.T <= b + 1e-12, axis=1)
    values = np.prod(points ** np.array(alpha, dtype=float), axis=1)
    return box_volume * float(np.mean(np.where(inside, values, 0.0)))
