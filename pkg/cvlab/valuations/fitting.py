"""
Exact polynomial fits of ℓ ↦ Z(f + ℓ) over affine functions and of
X ↦ Z(τ_X f) over epi-translations.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..config import get_config
from ..convex import AffineForm, PolyConvexFunction, add_affine, epi_translate
from ..geometry.vectors import Point, Vector, inverse_exact, vadd, vscale, zero
from .base import Valuation

logger = logging.getLogger(__name__)

MultiIndex = Tuple[int, ...]


def _monomial(point: Sequence[Fraction], exponents: MultiIndex) -> Fraction:
    value = Fraction(1)
    for x, e in zip(point, exponents):
        value *= x**e
    return value


@dataclass(frozen=True)
class AffinePolynomial:
    """
    A polynomial in ``variables`` with coefficients in Q^m.

    ``exact`` is True when the fit reproduced every held-out node and no
    coefficient of total degree above ``d`` appeared; otherwise ``violations``
    describes what went wrong.
    """

    variables: Tuple[str, ...]
    d: int
    m: int
    coefficients: Dict[MultiIndex, Vector] = field(compare=True, hash=False)
    exact: bool = True
    violations: Tuple[str, ...] = ()

    def __call__(self, point: Sequence[Fraction]) -> Vector:
        total = zero(self.m)
        for exponents, coeff in self.coefficients.items():
            total = vadd(total, vscale(coeff, _monomial(point, exponents)))
        return total

    def homogeneous_part(self, k: int) -> Dict[MultiIndex, Vector]:
        return {e: c for e, c in self.coefficients.items() if sum(e) == k}


def _held_out_points(count: int, dim: int, seed: int) -> List[Point]:
    rng = np.random.default_rng(seed)
    points = []
    for _ in range(count):
        numerators = rng.integers(-6, 7, size=dim)
        denominators = rng.integers(1, 4, size=dim)
        points.append(tuple(Fraction(int(a), int(b)) for a, b in zip(numerators, denominators)))
    return points


def tensor_fit(
    evaluate_at: Callable[[Point], Vector],
    variables: Sequence[str],
    d: int,
    m: int,
    held_out: int = 5,
    seed: Optional[int] = None,
) -> AffinePolynomial:
    """
    Interpolate on the grid {0..d}^N and validate on random held-out points.

    The grid determines the unique polynomial of degree <= d in each variable;
    terms of total degree above d and held-out mismatches are reported as
    violations.
    """
    dim = len(variables)
    nodes = [Fraction(i) for i in range(d + 1)]
    inverse = inverse_exact([[x**j for j in range(d + 1)] for x in nodes])
    grid = list(product(range(d + 1), repeat=dim))
    values = {index: evaluate_at(tuple(nodes[i] for i in index)) for index in grid}
    full: Dict[MultiIndex, Vector] = {}
    for exponents in grid:
        acc = zero(m)
        for index in grid:
            weight = Fraction(1)
            for j, i in zip(exponents, index):
                weight *= inverse[j][i]
            if weight:
                acc = vadd(acc, vscale(values[index], weight))
        if any(acc):
            full[exponents] = acc
    violations = [f"term {e} of degree {sum(e)} exceeds {d}" for e in sorted(full) if sum(e) > d]
    seed = get_config().seed if seed is None else seed
    tensor = AffinePolynomial(tuple(variables), d, m, full)
    for point in _held_out_points(held_out, dim, seed):
        if evaluate_at(point) != tensor(point):
            violations.append(f"held-out node {tuple(str(x) for x in point)} is not reproduced")
    coefficients = {e: c for e, c in full.items() if sum(e) <= d}
    if violations:
        logger.warning(f"tensor_fit: {len(violations)} violations of degree <= {d}")
    logger.debug(f"tensor_fit: {len(grid)} nodes, {len(coefficients)} coefficients")
    return AffinePolynomial(tuple(variables), d, m, coefficients, not violations, tuple(violations))


def affine_poly_fit(
    Z: Valuation, f: PolyConvexFunction, held_out: int = 5, seed: Optional[int] = None
) -> AffinePolynomial:
    """
    Fit ℓ = (y, c) ↦ Z(f + ℓ) exactly as a polynomial of degree <= Z.d.

    Args:
        Z (Valuation): Valuation with finite degree bound
        f (PolyConvexFunction): Function in the cone of Z
        held_out (int): Number of random validation nodes
        seed (Optional[int]): Seed for the validation nodes

    Returns:
        AffinePolynomial: Coefficients over (y_1, ..., y_n, c)
    """
    n = Z.n

    def evaluate_at(point: Point) -> Vector:
        return Z.evaluate(add_affine(f, AffineForm(point[:n], point[n])))

    variables = tuple(f"y{i + 1}" for i in range(n)) + ("c",)
    return tensor_fit(evaluate_at, variables, Z.d, Z.m, held_out, seed)


def top_part_is_translation_invariant(Z: Valuation, f: PolyConvexFunction, shift: AffineForm) -> bool:
    """Whether the degree-d part of the fit at f equals the one at f + shift."""
    here = affine_poly_fit(Z, f).homogeneous_part(Z.d)
    there = affine_poly_fit(Z, add_affine(f, shift)).homogeneous_part(Z.d)
    return here == there


def epi_translation_fit(
    Z: Valuation, f: PolyConvexFunction, held_out: int = 5, seed: Optional[int] = None
) -> AffinePolynomial:
    """Fit X = (x, t) ↦ Z(τ_X f) exactly as a polynomial of degree <= Z.d."""

    def evaluate_at(point: Point) -> Vector:
        return Z.evaluate(epi_translate(f, point))

    variables = tuple(f"x{i + 1}" for i in range(Z.n)) + ("t",)
    return tensor_fit(evaluate_at, variables, Z.d, Z.m, held_out, seed)
