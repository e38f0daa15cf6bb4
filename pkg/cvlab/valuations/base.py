"""
The valuation interface.

A valuation evaluates convex functions of a cone to vectors in Q^m. Concrete
kinds implement ``_evaluate``; ``evaluate`` enforces cone membership first.
"""

import logging
from abc import ABC, abstractmethod
from typing import Any, Dict, Optional, Sequence

from ..convex import PolyConvexFunction
from ..duality import Cone, cone_contains, require_in_cone
from ..errors import DimensionMismatchError
from ..geometry.vectors import Vector, to_point

logger = logging.getLogger(__name__)


class Valuation(ABC):
    """
    An evaluatable valuation with its metadata.

    Attributes:
        n (int): Ambient dimension of the functions
        d (int): Degree bound with respect to adding affine functions
        m (int): Dimension of the values
        cone (Cone): The cone the valuation is defined on
        homogeneity (Optional[int]): Degree k with Z(t·f) = t^k Z(f), if declared
    """

    kind: str = "valuation"

    def __init__(self, n: int, d: int, m: int, cone: Cone, homogeneity: Optional[int] = None):
        if cone.n != n:
            raise DimensionMismatchError(f"A valuation on R^{n} needs a cone on R^{n}, got R^{cone.n}")
        self.n = n
        self.d = d
        self.m = m
        self.cone = cone
        self.homogeneity = homogeneity

    def accepts(self, f: PolyConvexFunction) -> bool:
        return bool(cone_contains(self.cone, f))

    def evaluate(self, f: PolyConvexFunction) -> Vector:
        require_in_cone(self.cone, f)
        value = to_point(self._evaluate(f))
        if len(value) != self.m:
            raise DimensionMismatchError(f"{self.kind} produced a value of dimension {len(value)}, expected {self.m}")
        return value

    def __call__(self, f: PolyConvexFunction) -> Vector:
        return self.evaluate(f)

    @abstractmethod
    def _evaluate(self, f: PolyConvexFunction) -> Sequence:
        """Kernel value of a function already known to be in the cone."""

    def params(self) -> Dict[str, Any]:
        """Kind-specific parameters, as stored in valuation files."""
        return {}

    def __repr__(self) -> str:
        return f"{type(self).__name__}(n={self.n}, d={self.d}, m={self.m}, homogeneity={self.homogeneity})"
