"""
Dual cones: Γ~ = {f : f* ∈ Γ}, described by the epigraph cones of the support
functions of A and O.
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Union

from ..convex import ConeSpec, MembershipResult, PolyConvexFunction, cone_membership, conjugate, epigraph
from ..convex import recession_function, support_function
from ..errors import ConeViolationError
from ..geometry import Polyhedron

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DualConeSpec:
    """
    The cone of functions whose conjugates lie in ``primal``.

    For a primal (A, O)-cone membership is read off the recession function:
    O ⊆ dom f* ⊆ A holds iff epi h_A ⊆ epi ρ_f ⊆ epi h_O.
    """

    primal: Union[ConeSpec, "DualConeSpec"]

    @property
    def n(self) -> int:
        return self.primal.n

    @cached_property
    def A_epigraph(self) -> Polyhedron:
        return epigraph(support_function(self.primal.A_domain))

    @cached_property
    def O_epigraph(self) -> Polyhedron:
        return epigraph(support_function(self.primal.O_domain))

    def membership(self, f: PolyConvexFunction) -> MembershipResult:
        if f.n != self.n:
            return MembershipResult(False, f"function on R^{f.n} tested against a cone in R^{self.n}")
        if not isinstance(self.primal, ConeSpec):
            inner = cone_contains(self.primal, conjugate(f))
            return MembershipResult(inner.member, f"conjugate: {inner.reason}")
        recession = epigraph(recession_function(f))
        if not recession.contains(self.A_epigraph):
            return MembershipResult(False, "domain of the conjugate is not contained in A")
        if not self.O_epigraph.contains(recession):
            return MembershipResult(False, "domain of the conjugate does not contain O")
        return MembershipResult(True, "member")


Cone = Union[ConeSpec, DualConeSpec]


def dual_cone(cone: Cone) -> Cone:
    """The dual cone; dualizing twice gives back the original description."""
    if isinstance(cone, DualConeSpec):
        return cone.primal
    return DualConeSpec(cone)


def cone_contains(cone: Cone, f: PolyConvexFunction) -> MembershipResult:
    if isinstance(cone, ConeSpec):
        return cone_membership(f, cone)
    return cone.membership(f)


def require_in_cone(cone: Cone, f: PolyConvexFunction) -> None:
    result = cone_contains(cone, f)
    if not result:
        raise ConeViolationError(f"Function is not in the cone: {result.reason}", details={"reason": result.reason})
