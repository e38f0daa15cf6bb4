"""
Piecewise-polynomial densities x ↦ φ(x) ∈ Sym^d(R^n × R) ⊗ R^m and their
integrals against Θ0.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from ..convex import PolyConvexFunction
from ..errors import DimensionMismatchError, EmptyInputError, NotAPolytopeError, PreconditionError, SupportError
from ..geometry import Polyhedron, convex_hull, integrate_monomial, intersect_all
from ..geometry.vectors import Point, ScalarLike, Vector, to_point, to_scalar, vadd, vscale, zero
from .measures import theta0

logger = logging.getLogger(__name__)

YSExponent = Tuple[Tuple[int, ...], int]


def _monomial(point: Sequence[Fraction], exponents: Sequence[int]) -> Fraction:
    value = Fraction(1)
    for x, e in zip(point, exponents):
        value *= x**e
    return value


@dataclass(frozen=True)
class DensityTerm:
    """coeff · x^x_exp · y^y_exp · s^s_exp with coeff ∈ Q^m."""

    x_exp: Tuple[int, ...]
    y_exp: Tuple[int, ...]
    s_exp: int
    coeff: Vector

    @property
    def ys_degree(self) -> int:
        return sum(self.y_exp) + self.s_exp


@dataclass(frozen=True)
class DensityCell:
    cell: Polyhedron
    terms: Tuple[DensityTerm, ...]


@dataclass(frozen=True)
class PiecewisePolyDensity:
    """
    A compactly supported density given cell by cell.

    At a point lying in several cells the first containing cell is used, so a
    density may jump on the outer boundary of its support. Across facets
    shared by two cells it must be continuous (see ``continuity_violations``).
    """

    n: int
    m: int
    cells: Tuple[DensityCell, ...]

    def __post_init__(self):
        if not self.cells:
            raise EmptyInputError("A density needs at least one cell")
        for entry in self.cells:
            if entry.cell.dim != self.n:
                raise DimensionMismatchError(f"Density cell in R^{entry.cell.dim}, expected R^{self.n}")
            if entry.cell.is_empty or not entry.cell.is_bounded:
                raise NotAPolytopeError("Density cells must be nonempty polytopes")
            for term in entry.terms:
                if len(term.x_exp) != self.n or len(term.y_exp) != self.n or len(term.coeff) != self.m:
                    raise DimensionMismatchError("Density term does not match the density dimensions")

    @property
    def d(self) -> int:
        """Degree in (y, s)."""
        return max((t.ys_degree for c in self.cells for t in c.terms if any(t.coeff)), default=0)

    @property
    def is_homogeneous(self) -> bool:
        """Whether every nonzero term has (y, s)-degree exactly d."""
        d = self.d
        return all(t.ys_degree == d for c in self.cells for t in c.terms if any(t.coeff))

    @property
    def support_hull(self) -> Polyhedron:
        return convex_hull([v for c in self.cells for v in c.cell.vertices])

    def cell_at(self, x: Sequence[Fraction]) -> Optional[DensityCell]:
        for entry in self.cells:
            if entry.cell.contains_point(x):
                return entry
        return None

    def coefficients_at(self, x: Sequence[ScalarLike]) -> Dict[YSExponent, Vector]:
        """The (y, s)-polynomial φ(x) as a map from exponents to coefficients in Q^m."""
        x = to_point(x)
        entry = self.cell_at(x)
        if entry is None:
            return {}
        found: Dict[YSExponent, Vector] = {}
        for term in entry.terms:
            key = (term.y_exp, term.s_exp)
            contribution = vscale(term.coeff, _monomial(x, term.x_exp))
            found[key] = vadd(found.get(key, zero(self.m)), contribution)
        return {key: value for key, value in found.items() if any(value)}

    def value(self, x: Sequence[ScalarLike], y: Sequence[ScalarLike], s: ScalarLike) -> Vector:
        y, s = to_point(y), to_scalar(s)
        total = zero(self.m)
        for (y_exp, s_exp), coeff in self.coefficients_at(x).items():
            total = vadd(total, vscale(coeff, _monomial(y, y_exp) * s**s_exp))
        return total

    def continuity_violations(self) -> List[Point]:
        """Facet vertices shared by two cells at which the two polynomials differ."""
        violations = []
        for first, second in combinations(self.cells, 2):
            shared = intersect_all([first.cell, second.cell])
            if shared.is_empty or shared.affine_dim < self.n - 1:
                continue
            for v in shared.vertices:
                if _cell_coefficients(first, v, self.m) != _cell_coefficients(second, v, self.m):
                    violations.append(v)
        return sorted(set(violations))

    def validate(self) -> "PiecewisePolyDensity":
        violations = self.continuity_violations()
        if violations:
            raise PreconditionError(
                "Density is discontinuous across a shared facet",
                code="discontinuous density",
                details={"points": [[str(x) for x in v] for v in violations]},
            )
        return self

    # -- catalog --------------------------------------------------------------

    @classmethod
    def constant(
        cls,
        cell: Polyhedron,
        coeff: Sequence[ScalarLike] = (1,),
        y_exp: Optional[Sequence[int]] = None,
        s_exp: int = 0,
    ) -> "PiecewisePolyDensity":
        """φ(x)[y, s] = coeff · y^y_exp · s^s_exp on one cell."""
        n = cell.dim
        term = DensityTerm((0,) * n, tuple(y_exp or (0,) * n), s_exp, to_point(coeff))
        return cls(n, len(term.coeff), (DensityCell(cell, (term,)),))

    @classmethod
    def tent(
        cls,
        center: Sequence[ScalarLike],
        radius: ScalarLike,
        coeff: Sequence[ScalarLike] = (1,),
        y_exp: Optional[Sequence[int]] = None,
        s_exp: int = 0,
    ) -> "PiecewisePolyDensity":
        """
        φ(x)[y, s] = (1 - |x - center|_∞ / radius)_+ · coeff · y^y_exp · s^s_exp.

        The support is split into the 2n pyramids over the facets of the cube,
        on each of which the tent is affine.
        """
        center, radius = to_point(center), to_scalar(radius)
        if radius <= 0:
            raise PreconditionError("The tent radius must be positive", code="invalid density")
        n, coeff = len(center), to_point(coeff)
        y_exp = tuple(y_exp or (0,) * n)
        cube = Polyhedron.cube(n, radius, center)
        cells = []
        for axis in range(n):
            for sign in (1, -1):
                face = [v for v in cube.vertices if v[axis] == center[axis] + sign * radius]
                pyramid = convex_hull(face + [center])
                # on this pyramid |x - c|_∞ = sign·(x_axis - c_axis)
                slope = Fraction(-sign) / radius
                constant = 1 - slope * center[axis]
                unit_exp = tuple(1 if i == axis else 0 for i in range(n))
                terms = (
                    DensityTerm((0,) * n, y_exp, s_exp, vscale(coeff, constant)),
                    DensityTerm(unit_exp, y_exp, s_exp, vscale(coeff, slope)),
                )
                cells.append(DensityCell(pyramid, terms))
        return cls(n, len(coeff), tuple(cells))


def _cell_coefficients(entry: DensityCell, x: Point, m: int) -> Dict[YSExponent, Vector]:
    found: Dict[YSExponent, Vector] = {}
    for term in entry.terms:
        key = (term.y_exp, term.s_exp)
        found[key] = vadd(found.get(key, zero(m)), vscale(term.coeff, _monomial(x, term.x_exp)))
    return {key: value for key, value in found.items() if any(value)}


def integrate_against_theta0(f: PolyConvexFunction, phi: PiecewisePolyDensity, region: Polyhedron) -> Vector:
    """
    ∫ φ(x)[y, f(x)] dΘ0(f; (x, y)), summed exactly over the atoms in ``region``.

    Args:
        f (PolyConvexFunction): The function
        phi (PiecewisePolyDensity): Density with support inside ``region``
        region (Polyhedron): Region inside the interior of dom f

    Returns:
        Vector: The integral in Q^m
    """
    if phi.n != f.n:
        raise DimensionMismatchError(f"Density on R^{phi.n} for a function on R^{f.n}")
    if not all(region.contains(entry.cell) for entry in phi.cells):
        raise SupportError("The density support escapes the region")
    total = zero(phi.m)
    for atom in theta0(f, region):
        for (y_exp, s_exp), coeff in phi.coefficients_at(atom.x).items():
            weight = integrate_monomial(atom.S, y_exp) * atom.fx**s_exp
            total = vadd(total, vscale(coeff, weight))
    return total
