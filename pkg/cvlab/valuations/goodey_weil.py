"""
Polarization and Goodey-Weil pairings of homogeneous valuations with DC test
functions, and bump probing of valuation supports.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import factorial
from typing import Dict, List, Optional, Sequence, Tuple

from ..convex import ConeSpec, DCPair, PolyConvexFunction, add, add_all
from ..errors import PreconditionError, SupportError
from ..geometry import Polyhedron, convex_hull
from ..geometry.vectors import Point, ScalarLike, Vector, to_point, to_scalar, vadd, vscale, zero
from ..hessian import bump_pair
from .base import Valuation
from .builtins import HomogeneousComponent

logger = logging.getLogger(__name__)


class SubsetSums:
    """Evaluates Z on sums of functions, caching by the multiset of summands."""

    def __init__(self, Z: Valuation):
        self.Z = Z
        self._index: Dict[PolyConvexFunction, int] = {}
        self._functions: List[PolyConvexFunction] = []
        self._values: Dict[Tuple[int, ...], Vector] = {}

    def _id(self, f: PolyConvexFunction) -> int:
        if f not in self._index:
            self._index[f] = len(self._functions)
            self._functions.append(f)
        return self._index[f]

    def value(self, functions: Sequence[PolyConvexFunction]) -> Vector:
        key = tuple(sorted(self._id(f) for f in functions))
        if key not in self._values:
            self._values[key] = self.Z.evaluate(add_all([self._functions[i] for i in key]))
        return self._values[key]

    @property
    def evaluations(self) -> int:
        return len(self._values)

    def polarize(self, fs: Sequence[PolyConvexFunction]) -> Vector:
        k = len(fs)
        total = zero(self.Z.m)
        for size in range(1, k + 1):
            sign = -1 if (k - size) % 2 else 1
            for subset in combinations(range(k), size):
                total = vadd(total, vscale(self.value([fs[i] for i in subset]), Fraction(sign)))
        return vscale(total, Fraction(1, factorial(k)))


def _require_degree(Z: Valuation, k: int) -> None:
    if k < 1:
        raise PreconditionError("At least one argument is needed", code="empty input")
    if Z.homogeneity != k:
        raise PreconditionError(
            f"Expected a {k}-homogeneous valuation, got homogeneity {Z.homogeneity}", code="homogeneity mismatch"
        )


def polarize(Z: Valuation, fs: Sequence[PolyConvexFunction]) -> Vector:
    """
    Z̄(f_1, ..., f_k) = (1/k!) Σ_{∅≠S⊆[k]} (-1)^{k-|S|} Z(Σ_{i∈S} f_i).

    The empty sum is the cone's basepoint I_A, on which a k-homogeneous Z vanishes.
    """
    _require_degree(Z, len(fs))
    return SubsetSums(Z).polarize(list(fs))


def _anchor(Z: Valuation) -> Optional[PolyConvexFunction]:
    cone = Z.cone
    if isinstance(cone, ConeSpec) and not cone.A_domain.is_universe:
        return cone.indicator_A
    return None


def gw_evaluate(Z: Valuation, pairs: Sequence[DCPair]) -> Vector:
    """
    Pair a k-homogeneous valuation with k DC test functions φ_i = g_i - h_i.

    Expands Z̄(φ_1, ..., φ_k) multilinearly over the choices g_i or h_i, each
    completed by I_A, and evaluates every polarization by inclusion-exclusion.

    Args:
        Z (Valuation): k-homogeneous valuation on an (A, O)-cone
        pairs (Sequence[DCPair]): k pairs with full domain

    Returns:
        Vector: The pairing in Q^m
    """
    k = len(pairs)
    _require_degree(Z, k)
    anchor = _anchor(Z)
    slots = []
    for pair in pairs:
        if pair.n != Z.n:
            raise PreconditionError(
                "Test function dimension does not match the valuation", code="inconsistent dimensions"
            )
        if not (pair.g.has_full_domain and pair.h.has_full_domain):
            raise PreconditionError("DC components must have full domain", code="invalid test function")
        if anchor is None:
            slots.append((pair.g, pair.h))
        else:
            slots.append((add(pair.g, anchor), add(pair.h, anchor)))
    sums = SubsetSums(Z)
    total = zero(Z.m)
    for size in range(k + 1):
        sign = Fraction(-1 if (k - size) % 2 else 1)
        for chosen in combinations(range(k), size):
            args = [slots[i][0] if i in chosen else slots[i][1] for i in range(k)]
            total = vadd(total, vscale(sums.polarize(args), sign))
    logger.debug(f"gw_evaluate: k={k}, {sums.evaluations} distinct evaluations")
    return total


@dataclass(frozen=True)
class ProbeResult:
    center: Point
    certificates: Tuple[Tuple[int, Vector], ...]

    @property
    def flagged(self) -> bool:
        return any(any(value) for _, value in self.certificates)


@dataclass(frozen=True)
class SupportEstimate:
    """Probe cells certified to meet the support; a lower bound at resolution delta."""

    delta: Fraction
    probes: Tuple[ProbeResult, ...]
    label: str = "lower bound on support at resolution delta"

    @property
    def flagged(self) -> Tuple[Point, ...]:
        return tuple(p.center for p in self.probes if p.flagged)

    def region(self, widen: int = 1) -> Polyhedron:
        """
        Hull of the flagged probe cells, each dilated by ``widen`` cells of width 2·delta.

        Raises:
            SupportError: If no probe was flagged
        """
        if not self.flagged:
            raise SupportError("No probe cell meets the support", code="empty support")
        radius = self.delta * (1 + 2 * widen)
        n = len(self.flagged[0])
        return convex_hull(v for c in self.flagged for v in Polyhedron.cube(n, radius, c).vertices)


def _components(Z: Valuation) -> List[Tuple[int, Valuation]]:
    if Z.homogeneity is not None:
        return [(Z.homogeneity, Z)] if Z.homogeneity >= 1 else []
    return [(k, HomogeneousComponent(Z, k)) for k in range(1, Z.n + Z.d + 1)]


def support_estimate(Z: Valuation, centers: Sequence[Sequence[ScalarLike]], delta: ScalarLike) -> SupportEstimate:
    """
    Probe each center with the hinge bump of radius delta.

    For every homogeneous component Z_k with k >= 1 the bump is paired with
    itself k times; a nonzero pairing certifies that the probe cell meets the
    support of Z.
    """
    if not isinstance(Z.cone, ConeSpec):
        raise PreconditionError("Support probing needs an (A, O)-cone", code="invalid cone")
    delta = to_scalar(delta)
    components = _components(Z)
    results = []
    for center in centers:
        center = to_point(center)
        if not Z.cone.O_domain.interior_contains(Polyhedron.cube(Z.n, delta, center)):
            raise SupportError(f"Probe at {tuple(str(x) for x in center)} escapes the interior of O")
        pair = bump_pair(center, delta)
        certificates = tuple((k, gw_evaluate(Zk, [pair] * k)) for k, Zk in components)
        results.append(ProbeResult(center, certificates))
    estimate = SupportEstimate(delta, tuple(results))
    logger.info(f"support_estimate: {len(estimate.flagged)} of {len(results)} probes flagged")
    return estimate
