"""
Subdifferentials and the order-zero Hessian measure of PL convex functions.

For a PL function the measure is atomic in x: it sits on the vertices of the
cell complex, and the fiber over a vertex x is Lebesgue measure on the
subdifferential ∂f(x). Only vertices in the interior of the domain carry atoms.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

from ..convex import PolyConvexFunction, cell_vertices
from ..errors import DimensionMismatchError, EmptyInputError, NotAPolytopeError, OutsideDomainError, RegionError
from ..geometry import Polyhedron, volume
from ..geometry.vectors import Point, ScalarLike, dot, to_point

logger = logging.getLogger(__name__)


def subdifferential(f: PolyConvexFunction, x: Sequence[ScalarLike]) -> Polyhedron:
    """
    ∂f(x) = conv{y_i : piece i active at x} + normal cone of dom f at x.

    Args:
        f (PolyConvexFunction): The function
        x (Sequence[ScalarLike]): A point of dom f

    Returns:
        Polyhedron: The subdifferential; bounded iff x lies in the interior of dom f
    """
    x = to_point(x)
    if len(x) != f.n:
        raise DimensionMismatchError(f"Point of dimension {len(x)} for a function on R^{f.n}")
    if f.domain is not None and not f.domain.contains_point(x):
        raise OutsideDomainError(f"{tuple(str(v) for v in x)} is outside dom f")
    slopes = [piece.y for piece in f.active_pieces(x)]
    normals = []
    if f.domain is not None:
        normals = [row.a for row in f.domain.halfspaces.rows if dot(row.a, x) == row.b]
    return Polyhedron.from_generators(f.n, slopes, normals)


@dataclass(frozen=True)
class Theta0Atom:
    x: Point
    S: Polyhedron
    fx: Fraction

    @property
    def mass(self) -> Fraction:
        return volume(self.S)


@dataclass(frozen=True)
class Theta0Atoms:
    """Θ0(f; ·) restricted to a region, as atoms sorted by location."""

    n: int
    atoms: Tuple[Theta0Atom, ...]

    @property
    def total_mass(self) -> Fraction:
        return sum((atom.mass for atom in self.atoms), Fraction(0))

    def __len__(self) -> int:
        return len(self.atoms)

    def __iter__(self):
        return iter(self.atoms)


def check_region(f: PolyConvexFunction, region: Polyhedron) -> None:
    if region.dim != f.n:
        raise DimensionMismatchError(f"Region in R^{region.dim} for a function on R^{f.n}")
    if region.is_empty:
        raise EmptyInputError("The region is empty")
    if not region.is_bounded:
        raise NotAPolytopeError("The region must be bounded")
    if not f.effective_domain.interior_contains(region):
        raise RegionError("The region is not inside the interior of dom f")


def theta0(f: PolyConvexFunction, region: Polyhedron) -> Theta0Atoms:
    """
    Atoms of Θ0(f; ·) over ``region``.

    Every vertex of the cell complex inside ``region`` whose subdifferential is
    full-dimensional contributes one atom (x, ∂f(x), f(x)).
    """
    check_region(f, region)
    atoms: List[Theta0Atom] = []
    for x in cell_vertices(f, region):
        S = subdifferential(f, x)
        if S.affine_dim == f.n:
            atoms.append(Theta0Atom(x, S, f.value_at(x)))
    logger.debug(f"theta0: {len(atoms)} atoms in region")
    return Theta0Atoms(f.n, tuple(atoms))
