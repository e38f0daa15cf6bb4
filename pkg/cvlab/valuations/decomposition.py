"""
Homogeneous decomposition Z = Z_0 + ... + Z_{n+d+1} by evaluating at dilates
t·f and inverting the Vandermonde matrix of the nodes.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..config import get_config
from ..convex import PolyConvexFunction, scale
from ..errors import DuplicateNodesError, PreconditionError
from ..geometry.vectors import ScalarLike, Vector, inverse_exact, to_scalar, vadd, vscale, zero
from .base import Valuation

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DecompositionResult:
    """
    Values Z_k(f) for k = 0..n+d+1.

    The last slot is the one that must vanish; ``top_slot_zero`` reports it.
    In float mode ``residual`` holds the solve residual and ``exact`` is False.
    """

    components: Tuple[Tuple[int, Vector], ...]
    nodes: Tuple[Fraction, ...]
    exact: bool
    value: Vector
    residual: Optional[float] = None

    def component(self, k: int) -> Vector:
        for degree, value in self.components:
            if degree == k:
                return value
        raise KeyError(k)

    @property
    def top_slot(self) -> Vector:
        return self.components[-1][1]

    @property
    def top_slot_zero(self) -> bool:
        if self.exact:
            return not any(self.top_slot)
        return all(abs(x) <= 1e-9 * max(1.0, *(abs(float(v)) for v in self.value)) for x in self.top_slot)

    @property
    def total(self) -> Vector:
        m = len(self.value)
        total = zero(m) if self.exact else tuple(0.0 for _ in range(m))
        for _, value in self.components:
            total = tuple(a + b for a, b in zip(total, value))
        return total

    @property
    def sums_to_value(self) -> bool:
        if self.exact:
            return self.total == self.value
        return all(abs(a - float(b)) <= 1e-9 * max(1.0, abs(float(b))) for a, b in zip(self.total, self.value))


def default_nodes(count: int, exact: bool) -> List[Fraction]:
    if exact:
        return [Fraction(j + 1) for j in range(count)]
    return [Fraction(2**j) for j in range(count)]


def _check_nodes(nodes: Sequence[Fraction], count: int) -> None:
    if len(nodes) != count:
        raise PreconditionError(f"Expected {count} nodes, got {len(nodes)}", code="node count")
    if len(set(nodes)) != len(nodes):
        raise DuplicateNodesError("Decomposition nodes must be distinct", details={"nodes": [str(t) for t in nodes]})
    if any(t <= 0 for t in nodes):
        raise PreconditionError("Decomposition nodes must be positive", code="invalid nodes")


def decompose_homogeneous(
    Z: Valuation, f: PolyConvexFunction, nodes: Optional[Sequence[ScalarLike]] = None
) -> DecompositionResult:
    """
    Split Z(f) into homogeneous components.

    Solves Σ_k t_j^k Z_k(f) = Z(t_j f) for the n+d+2 nodes t_j. The solve is
    exact in rational mode; float mode uses nodes 2^j and reports the residual.

    Args:
        Z (Valuation): Valuation with degree bound d
        f (PolyConvexFunction): Function in the cone of Z
        nodes (Optional[Sequence[ScalarLike]]): Distinct positive nodes

    Returns:
        DecompositionResult: Components for k = 0..n+d+1
    """
    exact = get_config().exact
    count = Z.n + Z.d + 2
    nodes = default_nodes(count, exact) if nodes is None else [to_scalar(t) for t in nodes]
    _check_nodes(nodes, count)
    values = [Z.evaluate(scale(f, t)) for t in nodes]
    value = values[0] if nodes[0] == 1 else Z.evaluate(f)
    matrix = [[t**k for k in range(count)] for t in nodes]
    if exact:
        inverse = inverse_exact(matrix)
        components = []
        for k in range(count):
            acc = zero(Z.m)
            for j, weight in enumerate(inverse[k]):
                acc = vadd(acc, vscale(values[j], weight))
            components.append((k, acc))
        result = DecompositionResult(tuple(components), tuple(nodes), True, value)
    else:
        lhs = np.array([[float(x) for x in row] for row in matrix])
        rhs = np.array([[float(x) for x in v] for v in values])
        solution = np.linalg.solve(lhs, rhs)
        residual = float(np.max(np.abs(lhs @ solution - rhs)))
        components = tuple((k, tuple(float(x) for x in solution[k])) for k in range(count))
        result = DecompositionResult(components, tuple(nodes), False, value, residual)
        logger.warning(f"decompose_homogeneous ran in float mode, residual {residual:.3e}")
    if not result.top_slot_zero:
        logger.warning(f"Top slot k={count - 1} is nonzero: {Z!r} is not of degree <= {Z.d}")
    return result


@dataclass(frozen=True)
class HomogeneityCheck:
    t: Fraction
    k: int
    expected: Vector
    actual: Vector

    @property
    def ok(self) -> bool:
        return self.expected == self.actual


def check_component_homogeneity(
    Z: Valuation,
    f: PolyConvexFunction,
    factors: Sequence[ScalarLike] = (2, 3, 5),
    base: Optional[DecompositionResult] = None,
) -> List[HomogeneityCheck]:
    """Compare Z_k(t·f) with t^k Z_k(f) for each factor t and slot k, reusing ``base`` when given."""
    base = decompose_homogeneous(Z, f) if base is None else base
    checks = []
    for t in factors:
        t = to_scalar(t)
        scaled = decompose_homogeneous(Z, scale(f, t))
        for k, value in base.components:
            checks.append(HomogeneityCheck(t, k, vscale(value, t**k), scaled.component(k)))
    return checks
