"""
Exact polyhedra in V-representation with derived H-representation.

A ``Polyhedron`` is conv(vertices) + cone(rays). The vertex list is empty
exactly when the set is empty. Halfspace descriptions are computed on demand by
double description (pycddlib in fraction mode) and cached on the instance.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Iterable, Optional, Sequence, Set, Tuple

import cdd

from ..config import dimension_guard
from ..errors import DimensionMismatchError, EmptyInputError
from .vectors import (
    Point,
    ScalarLike,
    Vector,
    affine_rank,
    dot,
    is_zero,
    normalize_direction,
    to_point,
    to_scalar,
    unit,
    vadd,
    vscale,
    zero,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Halfspace:
    """The closed halfspace <a, x> <= b."""

    a: Vector
    b: Fraction

    def contains(self, x: Sequence[Fraction]) -> bool:
        return dot(self.a, x) <= self.b

    def strictly_contains(self, x: Sequence[Fraction]) -> bool:
        return dot(self.a, x) < self.b

    def flipped(self) -> "Halfspace":
        """The opposite closed halfspace <a, x> >= b."""
        return Halfspace(tuple(-x for x in self.a), -self.b)

    def normalized(self) -> "Halfspace":
        if is_zero(self.a):
            return self
        scale = max(abs(x) for x in self.a)
        return Halfspace(tuple(x / scale for x in self.a), self.b / scale)


@dataclass(frozen=True)
class HalfspaceSystem:
    """Finitely many halfspaces; the empty system describes all of space."""

    dim: int
    rows: Tuple[Halfspace, ...] = ()

    def __post_init__(self):
        for row in self.rows:
            if len(row.a) != self.dim:
                raise DimensionMismatchError(f"Halfspace of dimension {len(row.a)} in a system of dimension {self.dim}")

    @classmethod
    def from_rows(cls, dim: int, rows: Iterable[Tuple[Sequence[ScalarLike], ScalarLike]]) -> "HalfspaceSystem":
        return cls(dim, tuple(Halfspace(to_point(a), to_scalar(b)) for a, b in rows))

    def contains(self, x: Sequence[Fraction]) -> bool:
        return all(row.contains(x) for row in self.rows)

    def strictly_contains(self, x: Sequence[Fraction]) -> bool:
        return all(row.strictly_contains(x) for row in self.rows)

    def __add__(self, other: "HalfspaceSystem") -> "HalfspaceSystem":
        if other.dim != self.dim:
            raise DimensionMismatchError(f"Cannot combine systems of dimension {self.dim} and {other.dim}")
        return HalfspaceSystem(self.dim, self.rows + other.rows)


def _generator_matrix(dim: int, vertices: Sequence[Point], rays: Sequence[Vector]) -> "cdd.Matrix":
    rows = [[Fraction(1)] + list(v) for v in vertices] + [[Fraction(0)] + list(r) for r in rays]
    mat = cdd.Matrix(rows, number_type="fraction")
    mat.rep_type = cdd.RepType.GENERATOR
    return mat


def _inequality_matrix(dim: int, rows: Sequence[Halfspace]) -> "cdd.Matrix":
    # cdd reads a row [b, c] as b + <c, x> >= 0; the trivial row keeps the matrix nonempty
    data = [[row.b] + [-x for x in row.a] for row in rows]
    data.append([Fraction(1)] + [Fraction(0)] * dim)
    mat = cdd.Matrix(data, number_type="fraction")
    mat.rep_type = cdd.RepType.INEQUALITY
    return mat


def _read_generators(mat: "cdd.Matrix") -> Tuple[Set[Point], Set[Vector]]:
    vertices: Set[Point] = set()
    rays: Set[Vector] = set()
    lines = mat.lin_set
    for i in range(mat.row_size):
        row = [Fraction(x) for x in mat[i]]
        head, body = row[0], tuple(row[1:])
        if head != 0:
            vertices.add(tuple(x / head for x in body))
        elif not is_zero(body):
            direction = normalize_direction(body)
            rays.add(direction)
            if i in lines:
                rays.add(tuple(-x for x in direction))
    return vertices, rays


def _check_points(dim: int, points: Sequence[Sequence[Fraction]], what: str) -> None:
    for p in points:
        if len(p) != dim:
            raise DimensionMismatchError(f"{what} {tuple(str(x) for x in p)} does not have dimension {dim}")


@dataclass(frozen=True)
class Polyhedron:
    """
    conv(vertices) + cone(rays) in Q^dim.

    Instances built through the classmethods and module functions are
    canonical: no redundant vertex or ray, rays scaled to unit max-norm, both
    lists sorted lexicographically.
    """

    dim: int
    vertices: Tuple[Point, ...] = ()
    rays: Tuple[Vector, ...] = ()

    def __post_init__(self):
        if self.dim < 1:
            raise DimensionMismatchError("Ambient dimension must be positive")
        _check_points(self.dim, self.vertices, "Vertex")
        _check_points(self.dim, self.rays, "Ray")

    # -- constructors ---------------------------------------------------------

    @classmethod
    def empty(cls, dim: int) -> "Polyhedron":
        return cls(dim)

    @classmethod
    def point(cls, p: Sequence[ScalarLike]) -> "Polyhedron":
        p = to_point(p)
        return cls(len(p), (p,))

    @classmethod
    def universe(cls, dim: int) -> "Polyhedron":
        rays = [unit(dim, i) for i in range(dim)] + [vscale(unit(dim, i), Fraction(-1)) for i in range(dim)]
        return cls(dim, (zero(dim),), tuple(sorted(rays)))

    @classmethod
    def box(cls, lower: Sequence[ScalarLike], upper: Sequence[ScalarLike]) -> "Polyhedron":
        lower, upper = to_point(lower), to_point(upper)
        if len(lower) != len(upper):
            raise DimensionMismatchError("Box corners have different dimensions")
        if any(lo > hi for lo, hi in zip(lower, upper)):
            return cls.empty(len(lower))
        corners = set(product(*[sorted({lo, hi}) for lo, hi in zip(lower, upper)]))
        return cls(len(lower), tuple(sorted(corners)))

    @classmethod
    def cube(cls, dim: int, radius: ScalarLike, center: Optional[Sequence[ScalarLike]] = None) -> "Polyhedron":
        """The max-norm ball of the given radius."""
        radius = to_scalar(radius)
        center = to_point(center) if center is not None else zero(dim)
        return cls.box([c - radius for c in center], [c + radius for c in center])

    @classmethod
    def from_generators(
        cls, dim: int, vertices: Iterable[Sequence[ScalarLike]], rays: Iterable[Sequence[ScalarLike]] = ()
    ) -> "Polyhedron":
        vertices = [to_point(v) for v in vertices]
        rays = [to_point(r) for r in rays]
        _check_points(dim, vertices, "Vertex")
        _check_points(dim, rays, "Ray")
        if not vertices:
            return cls.empty(dim)
        rays = [r for r in rays if not is_zero(r)]
        if not rays and len(set(vertices)) == 1:
            return cls(dim, (vertices[0],))
        dimension_guard(dim)
        mat = _generator_matrix(dim, vertices, rays)
        mat.canonicalize()
        found_vertices, found_rays = _read_generators(mat)
        return cls(dim, tuple(sorted(found_vertices)), tuple(sorted(found_rays)))

    @classmethod
    def from_halfspaces(cls, system: HalfspaceSystem) -> "Polyhedron":
        return from_halfspaces(system)

    # -- properties -----------------------------------------------------------

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    @property
    def is_bounded(self) -> bool:
        return not self.rays

    @cached_property
    def halfspaces(self) -> HalfspaceSystem:
        return to_halfspaces(self)

    @cached_property
    def affine_dim(self) -> int:
        """Dimension of the affine hull; -1 for the empty set."""
        return affine_rank(list(self.vertices), list(self.rays))

    @property
    def has_interior(self) -> bool:
        return not self.is_empty and self.affine_dim == self.dim

    @property
    def is_universe(self) -> bool:
        return not self.is_empty and not self.halfspaces.rows

    def contains_point(self, x: Sequence[Fraction]) -> bool:
        return not self.is_empty and self.halfspaces.contains(x)

    def interior_contains_point(self, x: Sequence[Fraction]) -> bool:
        return self.has_interior and self.halfspaces.strictly_contains(x)

    def contains(self, other: "Polyhedron") -> bool:
        """Whether ``other`` is a subset of this polyhedron."""
        if other.dim != self.dim:
            raise DimensionMismatchError(f"Cannot compare dimensions {self.dim} and {other.dim}")
        if other.is_empty:
            return True
        if self.is_empty:
            return False
        rows = self.halfspaces.rows
        return all(self.halfspaces.contains(v) for v in other.vertices) and all(
            dot(row.a, r) <= 0 for r in other.rays for row in rows
        )

    def interior_contains(self, other: "Polyhedron") -> bool:
        """Whether ``other`` is a subset of the interior of this polyhedron."""
        if other.dim != self.dim:
            raise DimensionMismatchError(f"Cannot compare dimensions {self.dim} and {other.dim}")
        if other.is_empty:
            return True
        if not self.has_interior:
            return False
        rows = self.halfspaces.rows
        return all(self.halfspaces.strictly_contains(v) for v in other.vertices) and all(
            dot(row.a, r) <= 0 for r in other.rays for row in rows
        )

    def same_set(self, other: "Polyhedron") -> bool:
        return self.contains(other) and other.contains(self)

    def translate(self, x: Sequence[Fraction]) -> "Polyhedron":
        x = to_point(x)
        return Polyhedron(self.dim, tuple(sorted(vadd(v, x) for v in self.vertices)), self.rays)

    def scale(self, t: ScalarLike) -> "Polyhedron":
        t = to_scalar(t)
        if t <= 0:
            raise ValueError("Polyhedra are scaled by positive factors only")
        return Polyhedron(self.dim, tuple(sorted(vscale(v, t) for v in self.vertices)), self.rays)

    def project(self, keep: int) -> "Polyhedron":
        """Image under the projection onto the first ``keep`` coordinates."""
        return Polyhedron.from_generators(keep, [v[:keep] for v in self.vertices], [r[:keep] for r in self.rays])

    def recession_cone(self) -> "Polyhedron":
        if self.is_empty:
            return self
        return Polyhedron.from_generators(self.dim, [zero(self.dim)], self.rays)

    def bounding_box(self) -> Tuple[Point, Point]:
        if self.is_empty or self.rays:
            raise ValueError("Only nonempty polytopes have a bounding box")
        lower = tuple(min(v[i] for v in self.vertices) for i in range(self.dim))
        upper = tuple(max(v[i] for v in self.vertices) for i in range(self.dim))
        return lower, upper


Polytope = Polyhedron


def convex_hull(points: Iterable[Sequence[ScalarLike]]) -> Polyhedron:
    """Minimal vertex description of the convex hull of a nonempty point set."""
    points = [to_point(p) for p in points]
    if not points:
        raise EmptyInputError("convex_hull needs at least one point")
    dim = len(points[0])
    if any(len(p) != dim for p in points):
        raise DimensionMismatchError("convex_hull points have inconsistent dimensions")
    hull = Polyhedron.from_generators(dim, points)
    logger.debug(f"convex_hull: {len(points)} points -> {len(hull.vertices)} vertices")
    return hull


def to_halfspaces(polyhedron: Polyhedron) -> HalfspaceSystem:
    """Irredundant halfspace description; equalities appear as two opposite rows."""
    dim = polyhedron.dim
    if polyhedron.is_empty:
        return HalfspaceSystem(dim, (Halfspace(zero(dim), Fraction(-1)),))
    dimension_guard(dim)
    generators = _generator_matrix(dim, polyhedron.vertices, polyhedron.rays)
    inequalities = cdd.Polyhedron(generators).get_inequalities()
    inequalities.canonicalize()
    rows = set()
    equalities = inequalities.lin_set
    for i in range(inequalities.row_size):
        raw = [Fraction(x) for x in inequalities[i]]
        row = Halfspace(tuple(-x for x in raw[1:]), raw[0])
        if is_zero(row.a):
            continue
        row = row.normalized()
        rows.add(row)
        if i in equalities:
            rows.add(row.flipped().normalized())
    return HalfspaceSystem(dim, tuple(sorted(rows, key=lambda h: (h.a, h.b))))


def from_halfspaces(system: HalfspaceSystem) -> Polyhedron:
    dim = system.dim
    rows = [row for row in system.rows if not is_zero(row.a)]
    if any(is_zero(row.a) and row.b < 0 for row in system.rows):
        return Polyhedron.empty(dim)
    if not rows:
        return Polyhedron.universe(dim)
    dimension_guard(dim)
    generators = cdd.Polyhedron(_inequality_matrix(dim, rows)).get_generators()
    if generators.row_size == 0:
        return Polyhedron.empty(dim)
    vertices, rays = _read_generators(generators)
    if not vertices:
        return Polyhedron.empty(dim)
    return Polyhedron.from_generators(dim, sorted(vertices), sorted(rays))


def intersect(polyhedron: Polyhedron, system: HalfspaceSystem) -> Polyhedron:
    if system.dim != polyhedron.dim:
        raise DimensionMismatchError(f"Cannot intersect dimension {polyhedron.dim} with dimension {system.dim}")
    if polyhedron.is_empty or not system.rows:
        return polyhedron
    return from_halfspaces(polyhedron.halfspaces + system)


def intersect_all(polyhedra: Sequence[Polyhedron]) -> Polyhedron:
    if not polyhedra:
        raise EmptyInputError("intersect_all needs at least one polyhedron")
    dim = polyhedra[0].dim
    if any(p.dim != dim for p in polyhedra):
        raise DimensionMismatchError("intersect_all inputs have inconsistent dimensions")
    if any(p.is_empty for p in polyhedra):
        return Polyhedron.empty(dim)
    if len(polyhedra) == 1:
        return polyhedra[0]
    system = HalfspaceSystem(dim)
    for p in polyhedra:
        system = system + p.halfspaces
    return from_halfspaces(system)


def minkowski_sum(first: Polyhedron, second: Polyhedron) -> Polyhedron:
    if first.dim != second.dim:
        raise DimensionMismatchError(f"Cannot add dimension {first.dim} to dimension {second.dim}")
    if first.is_empty or second.is_empty:
        return Polyhedron.empty(first.dim)
    vertices = {vadd(v, w) for v in first.vertices for w in second.vertices}
    rays = set(first.rays) | set(second.rays)
    return Polyhedron.from_generators(first.dim, sorted(vertices), sorted(rays))
