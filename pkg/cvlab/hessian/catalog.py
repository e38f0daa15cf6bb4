"""
Closed-form DC decompositions for the bump functions used to probe valuations.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Any, Dict, Tuple, Union

from ..convex import AffineForm, DCPair, PolyConvexFunction
from ..errors import PreconditionError, UnknownShapeError
from ..geometry.vectors import Point, ScalarLike, dot, to_point, to_scalar, vscale


@dataclass(frozen=True)
class HingeBump:
    """b(x) = max(0, 1 - |x - center|_1 / delta)."""

    center: Point
    delta: Fraction
    kind: str = "hinge"

    def __post_init__(self):
        if self.delta <= 0:
            raise PreconditionError("Bump radius must be positive", code="invalid bump")

    @classmethod
    def of(cls, center, delta: ScalarLike) -> "HingeBump":
        return cls(to_point(center), to_scalar(delta))

    @property
    def n(self) -> int:
        return len(self.center)

    def __call__(self, x) -> Fraction:
        x = to_point(x)
        distance = sum(abs(a - b) for a, b in zip(x, self.center))
        return max(Fraction(0), 1 - distance / self.delta)

    def scaled_distance(self) -> PolyConvexFunction:
        """c(x) = |x - center|_1 / delta as a maximum of 2^n affine forms."""
        forms = []
        for signs in product((1, -1), repeat=self.n):
            y = vscale(tuple(Fraction(s) for s in signs), 1 / self.delta)
            forms.append(AffineForm(y, -dot(y, self.center)))
        return PolyConvexFunction(self.n, tuple(sorted(forms)))


def dc_decompose_catalog(shape: Union[HingeBump, Dict[str, Any]]) -> Tuple[PolyConvexFunction, PolyConvexFunction]:
    """
    Split a catalog bump into convex g and h with full domain and b = g - h.

    For the hinge bump g = max(c - 1, 0) + 1 = max(c, 1) and h = c.
    """
    if isinstance(shape, dict):
        if shape.get("kind", "hinge") != "hinge":
            raise UnknownShapeError(f"Unknown catalog shape {shape.get('kind')!r}")
        shape = HingeBump.of(shape["center"], shape["delta"])
    if not isinstance(shape, HingeBump):
        raise UnknownShapeError(f"Unknown catalog shape {type(shape).__name__}")
    h = shape.scaled_distance()
    g = PolyConvexFunction.create(shape.n, h.pieces + (AffineForm.constant(shape.n, 1),))
    return g, h


def bump_pair(center, delta: ScalarLike) -> DCPair:
    return DCPair(*dc_decompose_catalog(HingeBump.of(center, delta)))
