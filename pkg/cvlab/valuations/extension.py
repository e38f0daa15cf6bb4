"""
Extension of valuations from support-function inputs h_K(·, -1) to every
function whose domain interior contains the support, and reconstruction of
top-degree densities.
"""

import logging
from fractions import Fraction
from itertools import product
from typing import Any, Dict, Sequence, Tuple

import sympy

from ..convex import AffineForm, ConeSpec, PolyConvexFunction, add, replace_by_body, support_lift
from ..errors import (
    DimensionMismatchError,
    EmptyInputError,
    NotAPolytopeError,
    NotInteriorError,
    OutsideMaximalConeError,
    PreconditionError,
)
from ..geometry import Polyhedron, minkowski_sum
from ..geometry.vectors import ScalarLike, Vector, dot, from_sympy, to_point, to_scalar, to_sympy, vscale
from .base import Valuation
from .fitting import affine_poly_fit

logger = logging.getLogger(__name__)


class ExtendedValuation(Valuation):
    """
    Z~(f) = Z(h_K(·, -1)) with K = replace_by_body(f, A, eps).

    Defined on every f whose domain interior contains A; the target cone only
    records where the extension is meant to be used. When A + eps·B_∞ does
    not fit in int dom f, eps is halved until it does.
    """

    kind = "extended"

    def __init__(self, base: Valuation, region: Polyhedron, cone: ConeSpec, eps: ScalarLike):
        eps = to_scalar(eps)
        if eps <= 0:
            raise PreconditionError("eps must be positive", code="invalid eps")
        if not isinstance(base.cone, ConeSpec) or not base.cone.A_domain.is_universe:
            raise PreconditionError("Only valuations on full-domain functions can be extended", code="invalid cone")
        if region.dim != base.n or cone.n != base.n:
            raise DimensionMismatchError("Region, cone and valuation must share the ambient dimension")
        if region.is_empty:
            raise EmptyInputError("The support region is empty")
        if not region.is_bounded:
            raise NotAPolytopeError("The support region must be bounded")
        if not cone.O_domain.interior_contains(minkowski_sum(region, Polyhedron.cube(base.n, eps))):
            raise NotInteriorError("A + eps·B is not inside the interior of O")
        super().__init__(base.n, base.d, base.m, cone, base.homogeneity)
        self.base = base
        self.region = region
        self.eps = eps

    def in_maximal_cone(self, f: PolyConvexFunction) -> bool:
        return f.n == self.n and f.effective_domain.interior_contains(self.region)

    def evaluate(self, f: PolyConvexFunction) -> Vector:
        if f.n != self.n:
            raise DimensionMismatchError(f"Function on R^{f.n} for a valuation on R^{self.n}")
        if not self.in_maximal_cone(f):
            raise OutsideMaximalConeError("The interior of dom f does not contain the support region")
        return to_point(self._evaluate(f))

    def margin_for(self, f: PolyConvexFunction) -> Fraction:
        eps = self.eps
        while not f.effective_domain.interior_contains(minkowski_sum(self.region, Polyhedron.cube(self.n, eps))):
            eps /= 2
        return eps

    def _evaluate(self, f: PolyConvexFunction) -> Vector:
        eps = self.margin_for(f)
        if eps != self.eps:
            logger.debug(f"ExtendedValuation: margin reduced to {eps}")
        return self.base.evaluate(support_lift(replace_by_body(f, self.region, eps)))

    def params(self) -> Dict[str, Any]:
        return {"base": self.base, "region": self.region, "eps": self.eps}


def extend_valuation(Z: Valuation, region: Polyhedron, cone: ConeSpec, eps: ScalarLike) -> ExtendedValuation:
    return ExtendedValuation(Z, region, cone, eps)


def l1_cone_function(center: Sequence[ScalarLike], radius: ScalarLike) -> PolyConvexFunction:
    """r·|x - center|_1, whose only atom sits at the center with ∂ = r·[-1, 1]^n."""
    center, radius = to_point(center), to_scalar(radius)
    forms = []
    for signs in product((1, -1), repeat=len(center)):
        y = vscale(tuple(Fraction(s) for s in signs), radius)
        forms.append(AffineForm(y, -dot(y, center)))
    return PolyConvexFunction(len(center), tuple(sorted(forms)))


def reconstruct_density(
    Z: Valuation, center: Sequence[ScalarLike], radius: ScalarLike = 1
) -> Dict[Tuple[Tuple[int, ...], int], Vector]:
    """
    Recover the degree-d part of the density φ(center) from the top coefficient Y_d.

    For f = r|x - x0|_1 the degree-d part of ℓ ↦ Z(f + ℓ) is
    Y_d[(u, c)] = vol(S)·φ(x0)[u, <u, x0> + c] with S = r·[-1, 1]^n, so
    φ(x0)[u, s] = Y_d[(u, s - <u, x0>)] / vol(S).

    Returns:
        Dict[Tuple[Tuple[int, ...], int], Vector]: Map (y exponents, s exponent) -> coefficient
    """
    center, radius = to_point(center), to_scalar(radius)
    if radius <= 0:
        raise PreconditionError("radius must be positive", code="invalid radius")
    if len(center) != Z.n:
        raise DimensionMismatchError(f"Center in R^{len(center)} for a valuation on R^{Z.n}")
    n = Z.n
    f = l1_cone_function(center, radius)
    if isinstance(Z.cone, ConeSpec) and not Z.cone.A_domain.is_universe:
        f = add(f, Z.cone.indicator_A)
    fit = affine_poly_fit(Z, f)
    if not fit.exact:
        raise PreconditionError("The valuation is not polynomial of its declared degree", code="not polynomial")
    u = sympy.symbols(f"u1:{n + 1}")
    s = sympy.Symbol("s")
    shifted_c = s - sum(to_sympy(x) * ui for x, ui in zip(center, u))
    mass = to_sympy((2 * radius) ** n)
    found: Dict[Tuple[Tuple[int, ...], int], Vector] = {}
    for component in range(Z.m):
        expr = sympy.Integer(0)
        for exponents, coeff in fit.homogeneous_part(Z.d).items():
            term = to_sympy(coeff[component]) * shifted_c ** exponents[n]
            for ui, e in zip(u, exponents[:n]):
                term *= ui**e
            expr += term
        poly = sympy.Poly(sympy.expand(expr / mass), *u, s)
        for monomial, value in poly.terms():
            if value == 0:
                continue
            key = (tuple(monomial[:n]), monomial[n])
            entry = list(found.get(key, (Fraction(0),) * Z.m))
            entry[component] = from_sympy(value)
            found[key] = tuple(entry)
    return {key: value for key, value in found.items() if any(value)}
