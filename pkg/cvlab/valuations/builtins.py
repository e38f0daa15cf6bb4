"""
Built-in valuations: the top-degree Θ0 integral, the Dirichlet energy, a
negative control, homogeneous components and dual valuations.
"""

import logging
from fractions import Fraction
from functools import lru_cache
from typing import Any, Dict, Sequence

from ..convex import ConeSpec, PolyConvexFunction, cells, conjugate
from ..duality import dual_cone
from ..errors import DimensionMismatchError, PreconditionError, SupportError
from ..geometry import Polyhedron, volume
from ..geometry.vectors import ScalarLike, Vector, dot, to_point
from ..hessian import PiecewisePolyDensity, integrate_against_theta0
from .base import Valuation
from .decomposition import decompose_homogeneous

logger = logging.getLogger(__name__)

COMPONENT_CACHE_SIZE = 256


class TopDegreeValuation(Valuation):
    """Z(f) = ∫ φ(x)[y, f(x)] dΘ0(f; (x, y)) for a density φ supported in int O."""

    kind = "top_degree"

    def __init__(self, phi: PiecewisePolyDensity, cone: ConeSpec):
        if not all(cone.O_domain.interior_contains(entry.cell) for entry in phi.cells):
            raise SupportError("The density support is not inside the interior of O")
        homogeneity = phi.n + phi.d if phi.is_homogeneous else None
        super().__init__(phi.n, phi.d, phi.m, cone, homogeneity)
        self.phi = phi
        self.region = phi.support_hull

    def _evaluate(self, f: PolyConvexFunction) -> Vector:
        return integrate_against_theta0(f, self.phi, self.region)

    def params(self) -> Dict[str, Any]:
        return {"phi": self.phi}


class DirichletValuation(Valuation):
    """Z(f) = ∫_B |∇f|² dx, summed exactly over the linearity cells of f."""

    kind = "dirichlet"

    def __init__(self, B: Polyhedron, cone: ConeSpec):
        if not cone.O_domain.interior_contains(B):
            raise SupportError("B is not inside the interior of O")
        if not B.is_bounded:
            raise PreconditionError("B must be bounded", code="not a polytope")
        super().__init__(B.dim, 2, 1, cone, 2)
        self.B = B

    def _evaluate(self, f: PolyConvexFunction) -> Vector:
        total = Fraction(0)
        for piece, cell in cells(f, self.B):
            total += dot(piece.y, piece.y) * volume(cell)
        return (total,)

    def params(self) -> Dict[str, Any]:
        return {"B": self.B}


class MaxProbeValuation(Valuation):
    """
    f ↦ max_p f(p) over probe points in O.

    Polynomial of degree 1 and 1-homogeneous but not a valuation once two probes
    are used; kept as a negative control for identity checks.
    """

    kind = "max_probe"

    def __init__(self, probes: Sequence[Sequence[ScalarLike]], cone: ConeSpec):
        probes = [to_point(p) for p in probes]
        if not probes:
            raise PreconditionError("MaxProbeValuation needs at least one probe", code="empty input")
        if any(len(p) != cone.n for p in probes):
            raise DimensionMismatchError("Probe points do not match the cone dimension")
        if not all(cone.O_domain.contains_point(p) for p in probes):
            raise SupportError("Probe points must lie in O")
        super().__init__(cone.n, 1, 1, cone, 1)
        self.probes = tuple(probes)

    def _evaluate(self, f: PolyConvexFunction) -> Vector:
        return (max(f.value_at(p) for p in self.probes),)

    def params(self) -> Dict[str, Any]:
        return {"probes": self.probes}


class HomogeneousComponent(Valuation):
    """The k-homogeneous component Z_k of a valuation Z."""

    kind = "component"

    def __init__(self, base: Valuation, k: int):
        if not 0 <= k <= base.n + base.d + 1:
            raise PreconditionError(f"No homogeneous component of degree {k}", code="invalid degree")
        super().__init__(base.n, base.d, base.m, base.cone, k)
        self.base = base
        self.k = k
        self._component = lru_cache(maxsize=COMPONENT_CACHE_SIZE)(self._compute)

    def _compute(self, f: PolyConvexFunction) -> Vector:
        return decompose_homogeneous(self.base, f).component(self.k)

    def _evaluate(self, f: PolyConvexFunction) -> Vector:
        return self._component(f)

    def params(self) -> Dict[str, Any]:
        return {"base": self.base, "k": self.k}


class DualizedValuation(Valuation):
    """
    Z~(f) = Z(f*) on the dual cone.

    A k-homogeneous Z gives an epi-homogeneous Z~: Z~(λ ⋆ f) = λ^k Z~(f). The
    degree bound d now refers to epi-translations.
    """

    kind = "dualized"

    def __init__(self, base: Valuation):
        super().__init__(base.n, base.d, base.m, dual_cone(base.cone), None)
        self.base = base
        self.epi_homogeneity = base.homogeneity

    def _evaluate(self, f: PolyConvexFunction) -> Vector:
        return self.base.evaluate(conjugate(f))

    def params(self) -> Dict[str, Any]:
        return {"base": self.base}


def make_top_degree(phi: PiecewisePolyDensity, cone: ConeSpec) -> TopDegreeValuation:
    return TopDegreeValuation(phi, cone)


def make_dirichlet(B: Polyhedron, cone: ConeSpec) -> DirichletValuation:
    return DirichletValuation(B, cone)


def dualize_valuation(Z: Valuation) -> DualizedValuation:
    return DualizedValuation(Z)
