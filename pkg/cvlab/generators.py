"""
Seeded random inputs: bodies, hyperplane cuts, polytopes and PL functions.

All generators draw from a ``numpy.random.Generator`` and return exact
rational objects, so a (seed, trial) pair reproduces an input exactly.
"""

from fractions import Fraction
from typing import Optional, Sequence, Tuple

import numpy as np

from .convex import AffineForm, PolyConvexFunction
from .geometry import Halfspace, HalfspaceSystem, Polyhedron, convex_hull, intersect
from .geometry.vectors import Vector, dot, to_point, vadd


def random_body(dim: int, rng: np.random.Generator, bound: int = 4, points: Optional[int] = None) -> Polyhedron:
    """A full-dimensional polytope spanned by random integer points in [-bound, bound]^dim."""
    count = points or dim + 3
    while True:
        raw = rng.integers(-bound, bound + 1, size=(count, dim))
        body = convex_hull([[int(x) for x in row] for row in raw])
        if body.has_interior:
            return body


def random_normal(dim: int, rng: np.random.Generator, vertical_part: bool = False) -> Vector:
    """A nonzero integer direction; with ``vertical_part`` its last coordinate is nonzero."""
    while True:
        normal = [int(x) for x in rng.integers(-3, 4, size=dim)]
        if any(normal) and (not vertical_part or normal[-1] != 0):
            return to_point(normal)


def centroid(body: Polyhedron) -> Vector:
    """Average of the vertices."""
    total = body.vertices[0]
    for v in body.vertices[1:]:
        total = vadd(total, v)
    return tuple(x / len(body.vertices) for x in total)


def cut_body(body: Polyhedron, normal: Sequence, offset: Optional[Fraction] = None) -> Tuple[Polyhedron, Polyhedron]:
    """K ∩ {<a, x> <= b} and K ∩ {<a, x> >= b}; b defaults to <a, centroid>."""
    normal = to_point(normal)
    if offset is None:
        offset = dot(normal, centroid(body))
    lower = Halfspace(normal, offset)
    return (
        intersect(body, HalfspaceSystem(body.dim, (lower,))),
        intersect(body, HalfspaceSystem(body.dim, (lower.flipped(),))),
    )


def random_fraction(rng: np.random.Generator, bound: int = 3, denominator: int = 2) -> Fraction:
    return Fraction(int(rng.integers(-bound * denominator, bound * denominator + 1)), denominator)


def random_function(n: int, rng: np.random.Generator, max_pieces: int = 4, bounded_domain: Optional[bool] = None):
    """
    A random PL convex function with rational pieces.

    The domain is all of R^n or a random box with interior, chosen by the
    generator unless ``bounded_domain`` fixes it.
    """
    count = int(rng.integers(1, max_pieces + 1))
    pieces = [
        AffineForm(tuple(random_fraction(rng) for _ in range(n)), random_fraction(rng)) for _ in range(count)
    ]
    if bounded_domain is None:
        bounded_domain = bool(rng.integers(0, 2))
    domain = None
    if bounded_domain:
        lower = [Fraction(-int(rng.integers(1, 4))) for _ in range(n)]
        upper = [Fraction(int(rng.integers(1, 4))) for _ in range(n)]
        domain = Polyhedron.box(lower, upper)
    return PolyConvexFunction.create(n, pieces, domain)
