"""
The dictionary between convex bodies K ⊂ R^{n+1} and convex functions on R^n.

``support_lift`` sends K to h_K(·, -1), ``floor_body`` sends K to its lower
envelope, and ``replace_by_body`` goes back from a function to a body whose
lift agrees with the function on a given region.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from ..errors import DimensionMismatchError, EmptyInputError, NotAPolytopeError, NotInteriorError, PreconditionError
from ..geometry import Halfspace, HalfspaceSystem, Polyhedron, intersect, minkowski_sum
from ..geometry.vectors import ScalarLike, to_scalar, unit
from .cones import ConeSpec
from .functions import (
    NOT_CONVEX,
    AffineForm,
    DCPair,
    Marker,
    PolyConvexFunction,
    add,
    cell_vertices,
    conjugate,
    epigraph,
    functions_equal,
    indicator,
    lower_envelope,
    max_affine,
    recession_function,
    refinement,
    vertical,
)

logger = logging.getLogger(__name__)


def _require_body(body: Polyhedron) -> None:
    if body.is_empty:
        raise EmptyInputError("The body is empty")
    if not body.is_bounded:
        raise NotAPolytopeError("The body must be bounded")
    if body.dim < 2:
        raise DimensionMismatchError("Bodies live in R^{n+1} with n >= 1")


def support_lift(body: Polyhedron) -> PolyConvexFunction:
    """h_K(x, -1) = max over vertices (v, t) of <v, x> - t."""
    _require_body(body)
    n = body.dim - 1
    return PolyConvexFunction.create(n, [AffineForm(v[:n], -v[n]) for v in body.vertices])


def floor_body(body: Polyhedron) -> PolyConvexFunction:
    """⌊K⌋(x) = inf {t : (x, t) ∈ K}, with domain the projection of K."""
    _require_body(body)
    n = body.dim - 1
    return lower_envelope(Polyhedron.from_generators(body.dim, body.vertices, [vertical(n)]))


def lift_HA(body: Polyhedron, cone: ConeSpec) -> PolyConvexFunction:
    """H_A(K) = h_K(·, -1) + I_A."""
    if body.dim != cone.n + 1:
        raise DimensionMismatchError(f"A body in R^{body.dim} cannot be lifted into a cone on R^{cone.n}")
    lifted = support_lift(body)
    if cone.A_domain.is_universe:
        return lifted
    return add(lifted, indicator(cone.A_domain))


@dataclass(frozen=True)
class PerturbationResult:
    """A convex perturbation together with a body whose support lift reproduces it."""

    function: PolyConvexFunction
    body: Polyhedron


def perturb_bounded(body: Polyhedron, phi: DCPair) -> Union[PerturbationResult, Marker]:
    """
    h_K(·, -1) + phi for a bounded PL perturbation phi = g - h.

    The sum is continuous and PL, so it is convex exactly when on every linearity
    cell its form dominates the forms of all other cells. The certificate body is
    epi(F*) cut at the highest vertex of that epigraph.

    Args:
        body (Polyhedron): Bounded body K in R^{n+1}
        phi (DCPair): Perturbation; g and h must have equal recession functions

    Returns:
        Union[PerturbationResult, Marker]: The convex sum with its body, or ``NOT_CONVEX``
    """
    base = support_lift(body)
    if phi.n != base.n:
        raise DimensionMismatchError("Perturbation and body live on different spaces")
    if not functions_equal(recession_function(phi.g), recession_function(phi.h)):
        raise PreconditionError("The perturbation is unbounded", code="unbounded perturbation")
    cell_forms = []
    for (ell, g_form, h_form), cell in refinement([base, phi.g, phi.h]):
        if cell.affine_dim == base.n:
            cell_forms.append((ell + g_form - h_form, cell))
    forms = sorted({form for form, _ in cell_forms})
    for form, cell in cell_forms:
        if not all(form.dominates_on(other, cell) for other in forms):
            logger.debug("perturb_bounded: sum is not convex")
            return NOT_CONVEX
    function = max_affine(forms)
    dual_epigraph = epigraph(conjugate(function))
    top = max(v[-1] for v in dual_epigraph.vertices)
    cap = HalfspaceSystem(body.dim, (Halfspace(unit(body.dim, base.n), top),))
    return PerturbationResult(function, intersect(dual_epigraph, cap))


def _ceil_sqrt(n: int) -> int:
    return math.isqrt(n - 1) + 1 if n > 0 else 0


def replace_by_body(f: PolyConvexFunction, region: Polyhedron, eps: ScalarLike) -> Polyhedron:
    """
    A body K with h_K(·, -1) <= f everywhere and equality on ``region``.

    K = epi(f*) ∩ {|y|_∞ <= Y, |t| <= T} with c = max |f| over region + eps·B_∞,
    Y = 2c⌈√n⌉/eps and T = c(1 + 2·max_{x∈region}|x|_∞·⌈√n⌉/eps).

    Args:
        f (PolyConvexFunction): The function to replace
        region (Polyhedron): Bounded set A on which equality is required
        eps (ScalarLike): Margin; A + eps·B_∞ must lie in the interior of dom f

    Returns:
        Polyhedron: The bounded body K in R^{n+1}
    """
    eps = to_scalar(eps)
    if eps <= 0:
        raise PreconditionError("eps must be positive", code="invalid eps")
    if region.dim != f.n:
        raise DimensionMismatchError(f"Region in R^{region.dim} for a function on R^{f.n}")
    if region.is_empty:
        raise EmptyInputError("The region is empty")
    if not region.is_bounded:
        raise NotAPolytopeError("The region must be bounded")
    n = f.n
    neighborhood = minkowski_sum(region, Polyhedron.cube(n, eps))
    if not f.effective_domain.interior_contains(neighborhood):
        raise NotInteriorError("A + eps·B is not inside the interior of dom f")
    bound = max(abs(f.value_at(v)) for v in cell_vertices(f, neighborhood))
    if bound == 0:
        bound = Fraction(1)
    root = _ceil_sqrt(n)
    reach = max(abs(x) for v in region.vertices for x in v)
    slope_cap = 2 * bound * root / eps
    height_cap = bound * (1 + 2 * reach * root / eps)
    box = Polyhedron.box([-slope_cap] * n + [-height_cap], [slope_cap] * n + [height_cap])
    body = intersect(epigraph(conjugate(f)), box.halfspaces)
    logger.debug(f"replace_by_body: c={bound}, Y={slope_cap}, T={height_cap}, {len(body.vertices)} vertices")
    return body
