"""
Piecewise-linear convex functions with polyhedral domains.

A ``PolyConvexFunction`` is f(x) = max_i l_i(x) + I_dom(x). Every binary
operation canonicalizes its result: duplicate pieces are merged and pieces that
are not active on a relatively open subset of the domain are dropped.
Comparisons (``less_equal``, ``functions_equal``) are decided exactly on the
common cell refinement, so two different piece lists describing the same
function compare equal.
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property, lru_cache, reduce
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from ..errors import DimensionMismatchError, ImproperFunctionError, OutsideDomainError, ThinDomainError
from ..geometry import Halfspace, HalfspaceSystem, Polyhedron, from_halfspaces, minkowski_sum
from ..geometry.vectors import (
    Point,
    ScalarLike,
    Vector,
    dot,
    to_point,
    to_scalar,
    unit,
    vadd,
    vscale,
    vsub,
    zero,
)

logger = logging.getLogger(__name__)

PLUS_INFINITY = math.inf


class Marker(Enum):
    """Values returned in place of a function when an operation leaves the convex world."""

    NOT_CONVEX = "not convex"


NOT_CONVEX = Marker.NOT_CONVEX


@dataclass(frozen=True, order=True)
class AffineForm:
    """l(x) = <y, x> + c."""

    y: Vector
    c: Fraction

    @classmethod
    def of(cls, y: Sequence[ScalarLike], c: ScalarLike) -> "AffineForm":
        return cls(to_point(y), to_scalar(c))

    @classmethod
    def constant(cls, n: int, c: ScalarLike) -> "AffineForm":
        return cls(zero(n), to_scalar(c))

    @property
    def n(self) -> int:
        return len(self.y)

    def __call__(self, x: Sequence[Fraction]) -> Fraction:
        return dot(self.y, x) + self.c

    def __add__(self, other: "AffineForm") -> "AffineForm":
        return AffineForm(vadd(self.y, other.y), self.c + other.c)

    def __sub__(self, other: "AffineForm") -> "AffineForm":
        return AffineForm(vsub(self.y, other.y), self.c - other.c)

    def scaled(self, t: Fraction) -> "AffineForm":
        return AffineForm(vscale(self.y, t), self.c * t)

    def shifted(self, x: Sequence[Fraction], t: Fraction) -> "AffineForm":
        """The form y -> l(y - x) + t."""
        return AffineForm(self.y, self.c - dot(self.y, x) + t)

    def dominates_on(self, other: "AffineForm", cell: Polyhedron) -> bool:
        """Whether self >= other everywhere on ``cell``."""
        diff = other - self
        return all(diff(v) <= 0 for v in cell.vertices) and all(dot(diff.y, r) <= 0 for r in cell.rays)


def _domain_rows(domain: Optional[Polyhedron]) -> Tuple[Halfspace, ...]:
    return () if domain is None else domain.halfspaces.rows


def _piece_rows(piece: AffineForm, pieces: Sequence[AffineForm]) -> Tuple[Halfspace, ...]:
    # l_j(x) <= l_i(x)  <=>  <y_j - y_i, x> <= c_i - c_j
    return tuple(Halfspace(vsub(other.y, piece.y), piece.c - other.c) for other in pieces if other != piece)


def _solve_rows(n: int, rows: Sequence[Halfspace]) -> Polyhedron:
    return from_halfspaces(HalfspaceSystem(n, tuple(rows)))


def _canonical_domain(domain: Optional[Polyhedron]) -> Optional[Polyhedron]:
    if domain is None:
        return None
    if domain.is_empty:
        raise ImproperFunctionError("The domain is empty")
    return None if domain.is_universe else domain


def canonical_pieces(n: int, pieces: Iterable[AffineForm], domain: Optional[Polyhedron]) -> Tuple[AffineForm, ...]:
    """Drop duplicate pieces and pieces that are never active on a relatively open set."""
    pieces = sorted(set(pieces))
    if len(pieces) <= 1:
        return tuple(pieces)
    base_rows = _domain_rows(domain)
    target = n if domain is None else domain.affine_dim
    kept = [p for p in pieces if _solve_rows(n, base_rows + _piece_rows(p, pieces)).affine_dim == target]
    logger.debug(f"canonical_pieces: {len(pieces)} -> {len(kept)} pieces")
    return tuple(kept)


@dataclass(frozen=True)
class PolyConvexFunction:
    """
    f(x) = max_i pieces[i](x) on ``domain`` and +inf elsewhere.

    ``domain=None`` stands for all of R^n. Use ``PolyConvexFunction.create`` to
    obtain the canonical form; the plain constructor stores its arguments as
    given.
    """

    n: int
    pieces: Tuple[AffineForm, ...]
    domain: Optional[Polyhedron] = None

    def __post_init__(self):
        if not self.pieces:
            raise ImproperFunctionError("A convex function needs at least one affine piece")
        for piece in self.pieces:
            if piece.n != self.n:
                raise DimensionMismatchError(f"Piece of dimension {piece.n} in a function on R^{self.n}")
        if self.domain is not None and self.domain.dim != self.n:
            raise DimensionMismatchError(f"Domain of dimension {self.domain.dim} for a function on R^{self.n}")

    @classmethod
    def create(
        cls, n: int, pieces: Iterable[AffineForm], domain: Optional[Polyhedron] = None
    ) -> "PolyConvexFunction":
        domain = _canonical_domain(domain)
        return cls(n, canonical_pieces(n, list(pieces), domain), domain)

    @cached_property
    def effective_domain(self) -> Polyhedron:
        return Polyhedron.universe(self.n) if self.domain is None else self.domain

    @property
    def has_full_domain(self) -> bool:
        return self.domain is None

    def __call__(self, x: Sequence[ScalarLike]) -> Union[Fraction, float]:
        return evaluate(self, x)

    def value_at(self, x: Sequence[Fraction]) -> Fraction:
        """Finite value at a point known to lie in the domain."""
        return max(piece(x) for piece in self.pieces)

    def active_pieces(self, x: Sequence[Fraction]) -> List[AffineForm]:
        value = self.value_at(x)
        return [piece for piece in self.pieces if piece(x) == value]

    def __add__(self, other: "PolyConvexFunction") -> "PolyConvexFunction":
        return add(self, other)


def _check_same_n(f: PolyConvexFunction, g: PolyConvexFunction) -> None:
    if f.n != g.n:
        raise DimensionMismatchError(f"Functions on R^{f.n} and R^{g.n} cannot be combined")


def evaluate(f: PolyConvexFunction, x: Sequence[ScalarLike]) -> Union[Fraction, float]:
    """max_i l_i(x) inside the domain, ``PLUS_INFINITY`` outside."""
    x = to_point(x)
    if len(x) != f.n:
        raise DimensionMismatchError(f"Point of dimension {len(x)} for a function on R^{f.n}")
    if f.domain is not None and not f.domain.contains_point(x):
        return PLUS_INFINITY
    return f.value_at(x)


def affine_function(y: Sequence[ScalarLike], c: ScalarLike = 0) -> PolyConvexFunction:
    form = AffineForm.of(y, c)
    return PolyConvexFunction(form.n, (form,))


def zero_function(n: int) -> PolyConvexFunction:
    return PolyConvexFunction(n, (AffineForm.constant(n, 0),))


def max_affine(forms: Iterable[AffineForm], domain: Optional[Polyhedron] = None) -> PolyConvexFunction:
    forms = list(forms)
    if not forms:
        raise ImproperFunctionError("max_affine needs at least one form")
    return PolyConvexFunction.create(forms[0].n, forms, domain)


def indicator(polyhedron: Polyhedron, allow_thin: bool = False) -> PolyConvexFunction:
    """I_P: zero on P and +inf elsewhere."""
    if polyhedron.is_empty:
        raise ThinDomainError("The indicator of the empty set is not proper")
    if not allow_thin and not polyhedron.has_interior:
        raise ThinDomainError(
            "The indicator needs a set with nonempty interior", details={"dim": polyhedron.affine_dim}
        )
    domain = None if polyhedron.is_universe else polyhedron
    return PolyConvexFunction(polyhedron.dim, (AffineForm.constant(polyhedron.dim, 0),), domain)


# -- cells ----------------------------------------------------------------------


def cells(
    f: PolyConvexFunction, region: Optional[Polyhedron] = None, full_only: bool = False
) -> List[Tuple[AffineForm, Polyhedron]]:
    """
    Linearity regions of ``f`` intersected with ``region``.

    Args:
        f (PolyConvexFunction): The function
        region (Optional[Polyhedron]): Optional restriction
        full_only (bool): Keep only cells of maximal dimension within dom f ∩ region

    Returns:
        List[Tuple[AffineForm, Polyhedron]]: Nonempty (piece, cell) pairs in piece order
    """
    base_rows = _domain_rows(f.domain) + _domain_rows(region)
    target = f.n
    if full_only and base_rows:
        target = _solve_rows(f.n, base_rows).affine_dim
    found = []
    for piece in f.pieces:
        cell = _solve_rows(f.n, base_rows + _piece_rows(piece, f.pieces))
        if cell.is_empty or (full_only and cell.affine_dim != target):
            continue
        found.append((piece, cell))
    return found


def refinement(
    functions: Sequence[PolyConvexFunction], region: Optional[Polyhedron] = None
) -> List[Tuple[Tuple[AffineForm, ...], Polyhedron]]:
    """Nonempty cells of the common refinement on the intersection of all domains (and ``region``)."""
    if not functions:
        return []
    n = functions[0].n
    base_rows = _domain_rows(region)
    for f in functions:
        if f.n != n:
            raise DimensionMismatchError("refinement needs functions on the same space")
        base_rows += _domain_rows(f.domain)
    found = []

    def expand(index: int, chosen: Tuple[AffineForm, ...], rows: Tuple[Halfspace, ...]) -> None:
        if index == len(functions):
            cell = _solve_rows(n, rows)
            if not cell.is_empty:
                found.append((chosen, cell))
            return
        f = functions[index]
        for piece in f.pieces:
            extended = rows + _piece_rows(piece, f.pieces)
            # prune empty partial intersections early
            if index < len(functions) - 1 and _solve_rows(n, extended).is_empty:
                continue
            expand(index + 1, chosen + (piece,), extended)

    expand(0, (), base_rows)
    return found


def cell_vertices(f: PolyConvexFunction, region: Optional[Polyhedron] = None) -> List[Point]:
    """Sorted vertices of the cell complex of ``f`` restricted to ``region``."""
    return sorted({v for _, cell in cells(f, region) for v in cell.vertices})


def less_equal(f: PolyConvexFunction, g: PolyConvexFunction) -> bool:
    """Exact test of f <= g everywhere (with +inf conventions)."""
    _check_same_n(f, g)
    if not f.effective_domain.contains(g.effective_domain):
        return False
    for (ell, m), cell in refinement([f, g]):
        if not m.dominates_on(ell, cell):
            return False
    return True


def functions_equal(f: PolyConvexFunction, g: PolyConvexFunction) -> bool:
    return f.n == g.n and less_equal(f, g) and less_equal(g, f)


# -- lattice and linear operations ----------------------------------------------------


def _intersect_domains(f: PolyConvexFunction, g: PolyConvexFunction) -> Optional[Polyhedron]:
    if f.domain is None:
        return g.domain
    if g.domain is None:
        return f.domain
    return from_halfspaces(f.domain.halfspaces + g.domain.halfspaces)


def _combined_domain(f: PolyConvexFunction, g: PolyConvexFunction, strict: bool) -> Optional[Polyhedron]:
    domain = _intersect_domains(f, g)
    if domain is None:
        return None
    if domain.is_empty:
        raise ImproperFunctionError("The domains do not intersect")
    if strict and not domain.has_interior and f.effective_domain.has_interior and g.effective_domain.has_interior:
        raise ImproperFunctionError("The domains intersect without interior")
    return domain


def _max(f: PolyConvexFunction, g: PolyConvexFunction, strict: bool) -> PolyConvexFunction:
    _check_same_n(f, g)
    domain = _combined_domain(f, g, strict)
    return PolyConvexFunction.create(f.n, f.pieces + g.pieces, domain)


def pointwise_max(f: PolyConvexFunction, g: PolyConvexFunction) -> PolyConvexFunction:
    """f ∨ g."""
    return _max(f, g, strict=True)


def add(f: PolyConvexFunction, g: PolyConvexFunction) -> PolyConvexFunction:
    """f + g; the sum of two maxima is the maximum of all pairwise sums."""
    _check_same_n(f, g)
    domain = _combined_domain(f, g, strict=True)
    return PolyConvexFunction.create(f.n, [p + q for p in f.pieces for q in g.pieces], domain)


def add_all(functions: Sequence[PolyConvexFunction]) -> PolyConvexFunction:
    return reduce(add, functions)


def scale(f: PolyConvexFunction, t: ScalarLike) -> PolyConvexFunction:
    """t·f for t > 0; the domain is unchanged."""
    t = to_scalar(t)
    if t <= 0:
        raise ValueError(f"scale needs a positive factor, got {t}")
    return PolyConvexFunction(f.n, tuple(sorted(p.scaled(t) for p in f.pieces)), f.domain)


def add_affine(f: PolyConvexFunction, form: AffineForm) -> PolyConvexFunction:
    """f + l for an affine l; cells and domain are unchanged."""
    if form.n != f.n:
        raise DimensionMismatchError("Affine form and function live on different spaces")
    return PolyConvexFunction(f.n, tuple(sorted(p + form for p in f.pieces)), f.domain)


def epi_translate(f: PolyConvexFunction, point: Sequence[ScalarLike]) -> PolyConvexFunction:
    """τ_X f(y) = f(y - x) + t for X = (x, t)."""
    point = to_point(point)
    if len(point) != f.n + 1:
        raise DimensionMismatchError(f"Epi-translation needs a point of R^{f.n + 1}")
    x, t = point[: f.n], point[f.n]
    domain = None if f.domain is None else f.domain.translate(x)
    return PolyConvexFunction(f.n, tuple(sorted(p.shifted(x, t) for p in f.pieces)), domain)


# -- epigraphs and conjugation ----------------------------------------------------------


def vertical(n: int) -> Vector:
    """The upward direction (0, ..., 0, 1) of R^{n+1}."""
    return unit(n + 1, n)


def epigraph(f: PolyConvexFunction) -> Polyhedron:
    """epi f = {(x, t) : f(x) <= t} as an exact polyhedron in R^{n+1}."""
    rows = [Halfspace(p.y + (Fraction(-1),), -p.c) for p in f.pieces]
    rows += [Halfspace(row.a + (Fraction(0),), row.b) for row in _domain_rows(f.domain)]
    return _solve_rows(f.n + 1, rows)


def lower_envelope(upper_closed: Polyhedron) -> PolyConvexFunction:
    """
    The function whose epigraph is ``upper_closed``.

    The polyhedron must be nonempty and contain the upward direction in its
    recession cone. Lower facets become pieces, vertical facets become the
    domain.
    """
    n = upper_closed.dim - 1
    if n < 1:
        raise DimensionMismatchError("lower_envelope needs a polyhedron in R^{n+1} with n >= 1")
    if upper_closed.is_empty:
        raise ImproperFunctionError("The epigraph is empty")
    pieces = []
    domain_rows = []
    for row in upper_closed.halfspaces.rows:
        a_x, a_t = row.a[:n], row.a[n]
        if a_t < 0:
            pieces.append(AffineForm(tuple(x / -a_t for x in a_x), row.b / a_t))
        elif a_t == 0:
            domain_rows.append(Halfspace(a_x, row.b))
        else:
            raise ImproperFunctionError("The set is not closed under upward translation")
    if not pieces:
        raise ImproperFunctionError("The lower envelope is -inf")
    domain = _solve_rows(n, domain_rows) if domain_rows else None
    return PolyConvexFunction.create(n, pieces, domain)


def _support_cone_epigraph(domain: Polyhedron) -> Polyhedron:
    # epi(h_D) = {(z, t) : <z, v> <= t for vertices v, <z, r> <= 0 for rays r}
    n = domain.dim
    rows = [Halfspace(v + (Fraction(-1),), Fraction(0)) for v in domain.vertices]
    rows += [Halfspace(r + (Fraction(0),), Fraction(0)) for r in domain.rays]
    return _solve_rows(n + 1, rows)


@lru_cache(maxsize=4096)
def conjugate(f: PolyConvexFunction) -> PolyConvexFunction:
    """
    Fenchel-Legendre conjugate f*(z) = sup_x <z, x> - f(x).

    epi(f*) = conv{(y_i, -c_i)} + cone{(0, 1)} + epi(h_dom f). Results are
    memoized per function.
    """
    n = f.n
    lifted = Polyhedron.from_generators(n + 1, [p.y + (-p.c,) for p in f.pieces], [vertical(n)])
    if f.domain is not None:
        lifted = minkowski_sum(lifted, _support_cone_epigraph(f.domain))
    return lower_envelope(lifted)


def pointwise_min_checked(
    f: PolyConvexFunction, g: PolyConvexFunction
) -> Union[PolyConvexFunction, Marker]:
    """
    f ∧ g if it is convex, otherwise ``NOT_CONVEX``.

    The candidate is the closed convex envelope h = (f* ∨ g*)*. On every cell C
    of h with form l, C must be covered by {x ∈ C : f(x) <= l(x)} and
    {x ∈ C : g(x) <= l(x)}; both are polyhedra, and the cover is decided row by
    row.
    """
    _check_same_n(f, g)
    try:
        envelope = conjugate(_max(conjugate(f), conjugate(g), strict=False))
    except ImproperFunctionError:
        return NOT_CONVEX
    for ell, cell in cells(envelope, full_only=True):
        below_f = _below(f, ell, cell)
        below_g = _below(g, ell, cell)
        if not _covered(cell, below_f, below_g):
            logger.debug("pointwise_min_checked: envelope cell not covered, minimum is not convex")
            return NOT_CONVEX
    return envelope


def _below(f: PolyConvexFunction, ell: AffineForm, cell: Polyhedron) -> Polyhedron:
    rows = cell.halfspaces.rows + _domain_rows(f.domain)
    rows += tuple(Halfspace(vsub(p.y, ell.y), ell.c - p.c) for p in f.pieces)
    return _solve_rows(f.n, rows)


def _covered(cell: Polyhedron, first: Polyhedron, second: Polyhedron) -> bool:
    if first.contains(cell) or second.contains(cell):
        return True
    if first.is_empty:
        return False
    # cell \ first is the union over rows of cell ∩ {<a, x> > b}; each closure must lie in second
    for row in first.halfspaces.rows:
        outside = _solve_rows(cell.dim, cell.halfspaces.rows + (row.flipped(),))
        if outside.is_empty:
            continue
        strictly = any(dot(row.a, v) > row.b for v in outside.vertices) or any(dot(row.a, r) > 0 for r in outside.rays)
        if strictly and not second.contains(outside):
            return False
    return True


def recession_function(f: PolyConvexFunction) -> PolyConvexFunction:
    """ρ_f(x) = max_i <y_i, x> + I_{rec dom f}(x)."""
    pieces = [AffineForm(p.y, Fraction(0)) for p in f.pieces]
    domain = None if f.domain is None else f.domain.recession_cone()
    return PolyConvexFunction.create(f.n, pieces, domain)


def support_function(polyhedron: Polyhedron) -> PolyConvexFunction:
    """h_P as a PL function: max over vertices plus the indicator of the polar of the recession cone."""
    return conjugate(indicator(polyhedron, allow_thin=True))


def subgradient_points(f: PolyConvexFunction, x: Sequence[ScalarLike]) -> List[Vector]:
    x = to_point(x)
    if f.domain is not None and not f.domain.contains_point(x):
        raise OutsideDomainError(f"{tuple(str(v) for v in x)} is outside dom f")
    return [p.y for p in f.active_pieces(x)]


@dataclass(frozen=True)
class DCPair:
    """A difference g - h of two convex PL functions with full domain."""

    g: PolyConvexFunction
    h: PolyConvexFunction

    def __post_init__(self):
        _check_same_n(self.g, self.h)

    @property
    def n(self) -> int:
        return self.g.n

    def __call__(self, x: Sequence[ScalarLike]) -> Fraction:
        return self.g(x) - self.h(x)

    def __add__(self, other: "DCPair") -> "DCPair":
        return DCPair(add(self.g, other.g), add(self.h, other.h))

    def scaled(self, q: ScalarLike) -> "DCPair":
        q = to_scalar(q)
        if q > 0:
            return DCPair(scale(self.g, q), scale(self.h, q))
        if q < 0:
            return DCPair(scale(self.h, -q), scale(self.g, -q))
        return DCPair(zero_function(self.n), zero_function(self.n))

    def shifted(self, r: PolyConvexFunction) -> "DCPair":
        """The same difference written as (g + r) - (h + r)."""
        return DCPair(add(self.g, r), add(self.h, r))
