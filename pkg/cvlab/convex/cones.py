"""
(A, O)-cones: families of convex functions whose domains sit between an inner
set O and an outer set A.
"""

import logging
from dataclasses import dataclass
from functools import cached_property

from ..errors import ConeViolationError, DimensionMismatchError, PreconditionError
from ..geometry import Polyhedron
from .functions import PolyConvexFunction, indicator

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ConeSpec:
    """
    Domain bounds O ⊆ A of a cone of convex functions.

    Attributes:
        n (int): Ambient dimension
        A_domain (Polyhedron): Outer set; every member has dom f ⊆ A
        O_domain (Polyhedron): Inner set; every member has O ⊆ dom f
    """

    n: int
    A_domain: Polyhedron
    O_domain: Polyhedron

    def __post_init__(self):
        if self.A_domain.dim != self.n or self.O_domain.dim != self.n:
            raise DimensionMismatchError(f"Cone sets must live in R^{self.n}")
        if not self.O_domain.has_interior:
            raise PreconditionError("The inner set O needs nonempty interior", code="invalid cone")
        if not self.A_domain.contains(self.O_domain):
            raise PreconditionError("The inner set O must lie inside A", code="invalid cone")

    @classmethod
    def full(cls, n: int) -> "ConeSpec":
        """The cone of all convex functions with full domain."""
        universe = Polyhedron.universe(n)
        return cls(n, universe, universe)

    @classmethod
    def uniform(cls, domain: Polyhedron) -> "ConeSpec":
        return cls(domain.dim, domain, domain)

    @cached_property
    def indicator_A(self) -> PolyConvexFunction:
        return indicator(self.A_domain)

    @cached_property
    def indicator_O(self) -> PolyConvexFunction:
        return indicator(self.O_domain)


@dataclass(frozen=True)
class MembershipResult:
    member: bool
    reason: str

    def __bool__(self) -> bool:
        return self.member


def cone_membership(f: PolyConvexFunction, cone: ConeSpec) -> MembershipResult:
    """Decide O ⊆ dom f ⊆ A exactly."""
    if f.n != cone.n:
        return MembershipResult(False, f"function on R^{f.n} tested against a cone in R^{cone.n}")
    domain = f.effective_domain
    if not domain.contains(cone.O_domain):
        return MembershipResult(False, "domain does not contain O")
    if not cone.A_domain.contains(domain):
        return MembershipResult(False, "domain is not contained in A")
    return MembershipResult(True, "member")


def require_member(f: PolyConvexFunction, cone: ConeSpec) -> None:
    result = cone_membership(f, cone)
    if not result:
        raise ConeViolationError(f"Function is not in the cone: {result.reason}", details={"reason": result.reason})
