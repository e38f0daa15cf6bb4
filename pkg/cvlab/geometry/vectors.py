"""
Exact scalars and small vector helpers.

Scalars are ``fractions.Fraction`` everywhere; points are tuples of them.
Rank and determinant computations go through sympy so that they stay exact.
"""

from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple, Union

import sympy

Scalar = Fraction
Point = Tuple[Fraction, ...]
Vector = Tuple[Fraction, ...]
ScalarLike = Union[Fraction, int, str]


def to_scalar(value: ScalarLike) -> Fraction:
    """Parse an int, Fraction or "p/q" string into an exact scalar."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, float):
        # Floats are accepted only when they are exactly representable
        return Fraction(value)
    raise TypeError(f"Cannot interpret {value!r} as a scalar")


def to_point(values: Iterable[ScalarLike]) -> Point:
    return tuple(to_scalar(v) for v in values)


def format_scalar(value: Fraction) -> str:
    return str(value)


def dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def vadd(a: Sequence[Fraction], b: Sequence[Fraction]) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


def vsub(a: Sequence[Fraction], b: Sequence[Fraction]) -> Vector:
    return tuple(x - y for x, y in zip(a, b))


def vscale(a: Sequence[Fraction], t: Fraction) -> Vector:
    return tuple(x * t for x in a)


def zero(dim: int) -> Vector:
    return tuple(Fraction(0) for _ in range(dim))


def unit(dim: int, i: int) -> Vector:
    return tuple(Fraction(1 if j == i else 0) for j in range(dim))


def is_zero(a: Sequence[Fraction]) -> bool:
    return all(x == 0 for x in a)


def normalize_direction(r: Sequence[Fraction]) -> Vector:
    """Scale a nonzero direction so that its largest absolute entry is 1."""
    scale = max(abs(x) for x in r)
    return tuple(x / scale for x in r)


def to_sympy(value: Fraction) -> sympy.Rational:
    return sympy.Rational(value.numerator, value.denominator)


def from_sympy(value) -> Fraction:
    value = sympy.Rational(value)
    return Fraction(int(value.p), int(value.q))


def rank(vectors: Sequence[Sequence[Fraction]]) -> int:
    if not vectors:
        return 0
    return sympy.Matrix([[to_sympy(x) for x in v] for v in vectors]).rank()


def affine_rank(points: Sequence[Sequence[Fraction]], directions: Sequence[Sequence[Fraction]] = ()) -> int:
    """Dimension of the affine hull of ``points`` plus the span of ``directions``."""
    if not points:
        return -1
    base = points[0]
    return rank([vsub(p, base) for p in points[1:]] + [tuple(d) for d in directions])


def determinant(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    matrix = sympy.Matrix([[to_sympy(x) for x in row] for row in rows])
    return from_sympy(matrix.det(method="bareiss"))


def solve_exact(matrix: Sequence[Sequence[Fraction]], columns: Sequence[Sequence[Fraction]]) -> List[Vector]:
    """Solve ``matrix @ x = column`` exactly for each right-hand side column."""
    inverse = sympy.Matrix([[to_sympy(x) for x in row] for row in matrix]).inv()
    solutions = []
    for column in columns:
        rhs = sympy.Matrix([to_sympy(x) for x in column])
        solutions.append(tuple(from_sympy(x) for x in inverse * rhs))
    return solutions


def inverse_exact(matrix: Sequence[Sequence[Fraction]]) -> List[Vector]:
    inverse = sympy.Matrix([[to_sympy(x) for x in row] for row in matrix]).inv()
    return [tuple(from_sympy(inverse[i, j]) for j in range(inverse.cols)) for i in range(inverse.rows)]
