"""
Tests for subdifferentials, the order-zero Hessian measure and density integrals.
"""

from fractions import Fraction

import pytest

from cvlab.convex import AffineForm, PolyConvexFunction, add, affine_function, max_affine
from cvlab.errors import NotAPolytopeError, OutsideDomainError, PreconditionError, RegionError, SupportError
from cvlab.errors import UnknownShapeError
from cvlab.geometry import Polyhedron
from cvlab.hessian import (
    DensityCell,
    DensityTerm,
    HingeBump,
    PiecewisePolyDensity,
    bump_pair,
    dc_decompose_catalog,
    integrate_against_theta0,
    subdifferential,
    theta0,
)
from cvlab.valuations import l1_cone_function


class TestSubdifferential:
    """Test suite for subdifferentials."""

    @pytest.fixture(autouse=True)
    def setUp(self, abs_function, unit_interval_indicator):
        """Set up test fixtures."""
        self.abs = abs_function
        self.restricted = add(abs_function, unit_interval_indicator)

    def test_kink_and_smooth_point(self):
        assert subdifferential(self.abs, [0]).same_set(Polyhedron.box([-1], [1]))
        assert subdifferential(self.abs, [2]).same_set(Polyhedron.point([1]))

    def test_boundary_point_is_unbounded(self):
        S = subdifferential(self.restricted, [1])
        assert not S.is_bounded
        assert S.contains_point((Fraction(1),))
        assert S.contains_point((Fraction(7),))
        assert not S.contains_point((Fraction(0),))

    def test_outside_domain(self):
        with pytest.raises(OutsideDomainError):
            subdifferential(self.restricted, [2])


class TestTheta0:
    """Test suite for the atomic Hessian measure."""

    def test_l1_cone_mass(self):
        for n in (1, 2):
            f = l1_cone_function([0] * n, 1)
            atoms = theta0(f, Polyhedron.cube(n, 1))
            assert len(atoms) == 1
            assert atoms.atoms[0].x == (Fraction(0),) * n
            assert atoms.total_mass == 2**n

    def test_affine_function_has_no_mass(self):
        atoms = theta0(affine_function([2, -1], 3), Polyhedron.cube(2, 1))
        assert len(atoms) == 0
        assert atoms.total_mass == 0

    def test_atoms_carry_values(self):
        f = max_affine([AffineForm.of([1], 1), AffineForm.of([-1], 1), AffineForm.of([3], -1)])
        atoms = theta0(f, Polyhedron.box([-2], [2]))
        assert [atom.x for atom in atoms] == [(Fraction(0),), (Fraction(1),)]
        assert [atom.fx for atom in atoms] == [1, 2]
        assert [atom.mass for atom in atoms] == [2, 2]

    def test_mass_is_additive_over_a_subdivision(self):
        f = max_affine([AffineForm.of([1], 1), AffineForm.of([-1], 1), AffineForm.of([3], -1)])
        left = theta0(f, Polyhedron.box([-2], ["1/2"]))
        right = theta0(f, Polyhedron.box(["1/2"], [2]))
        assert (left.total_mass, right.total_mass) == (2, 2)
        assert theta0(f, Polyhedron.box([-2], [2])).total_mass == left.total_mass + right.total_mass

    def test_region_must_sit_inside_the_domain(self, abs_function, unit_interval, unit_interval_indicator):
        restricted = add(abs_function, unit_interval_indicator)
        with pytest.raises(RegionError):
            theta0(restricted, unit_interval)
        assert theta0(restricted, Polyhedron.box(["-1/2"], ["1/2"])).total_mass == 2

    def test_region_must_be_bounded(self, abs_function):
        with pytest.raises(NotAPolytopeError):
            theta0(abs_function, Polyhedron.universe(1))


class TestDensity:
    """Test suite for piecewise polynomial densities."""

    @pytest.fixture(autouse=True)
    def setUp(self):
        """Set up test fixtures."""
        self.tent = PiecewisePolyDensity.tent([0], 1)
        self.square_tent = PiecewisePolyDensity.tent([0], 1, y_exp=(2,))

    def test_tent_values(self):
        assert self.tent.coefficients_at([0]) == {((0,), 0): (Fraction(1),)}
        assert self.tent.coefficients_at(["1/2"]) == {((0,), 0): (Fraction(1, 2),)}
        assert self.tent.coefficients_at([2]) == {}
        plane = PiecewisePolyDensity.tent([0, 0], 1)
        assert plane.value(["1/2", "1/4"], [0, 0], 0) == (Fraction(1, 2),)
        assert plane.value([0, 0], [5, 5], 5) == (Fraction(1),)

    def test_degree_and_homogeneity(self):
        assert self.tent.d == 0
        assert self.square_tent.d == 2
        assert self.square_tent.is_homogeneous
        mixed = PiecewisePolyDensity(
            1,
            1,
            (
                DensityCell(
                    Polyhedron.box([-1], [1]),
                    (DensityTerm((0,), (0,), 0, (Fraction(1),)), DensityTerm((0,), (1,), 0, (Fraction(1),))),
                ),
            ),
        )
        assert mixed.d == 1
        assert not mixed.is_homogeneous

    def test_tent_is_continuous(self):
        assert self.tent.continuity_violations() == []
        assert PiecewisePolyDensity.tent([0, 0], 1).validate().n == 2

    def test_jump_across_shared_facet(self):
        jump = PiecewisePolyDensity(
            1,
            1,
            (
                DensityCell(Polyhedron.box([-1], [0]), (DensityTerm((0,), (0,), 0, (Fraction(1),)),)),
                DensityCell(Polyhedron.box([0], [1]), (DensityTerm((0,), (0,), 0, (Fraction(2),)),)),
            ),
        )
        assert jump.continuity_violations() == [(Fraction(0),)]
        with pytest.raises(PreconditionError):
            jump.validate()

    def test_invalid_radius(self):
        with pytest.raises(PreconditionError):
            PiecewisePolyDensity.tent([0], 0)


class TestIntegration:
    """Test suite for integrals against Θ0."""

    @pytest.fixture(autouse=True)
    def setUp(self, abs_function, unit_interval):
        """Set up test fixtures."""
        self.abs = abs_function
        self.region = unit_interval

    def test_constant_tent(self):
        phi = PiecewisePolyDensity.tent([0], 1)
        assert integrate_against_theta0(self.abs, phi, self.region) == (Fraction(2),)

    def test_moment_in_y(self):
        # ∫_{-1}^{1} y^2 dy over the subdifferential at the kink
        phi = PiecewisePolyDensity.tent([0], 1, y_exp=(2,))
        assert integrate_against_theta0(self.abs, phi, self.region) == (Fraction(2, 3),)

    def test_power_of_the_value(self):
        phi = PiecewisePolyDensity.tent([0], 1, s_exp=1)
        assert integrate_against_theta0(self.abs, phi, self.region) == (Fraction(0),)
        lifted = max_affine([AffineForm.of([1], 1), AffineForm.of([-1], 1)])
        assert integrate_against_theta0(lifted, phi, self.region) == (Fraction(2),)

    def test_vector_valued(self):
        phi = PiecewisePolyDensity.tent([0], 1, coeff=(1, -3))
        assert integrate_against_theta0(self.abs, phi, self.region) == (Fraction(2), Fraction(-6))

    def test_linear_in_the_density(self):
        f = max_affine([AffineForm.of([1], 1), AffineForm.of([-1], 1), AffineForm.of([3], -1)])
        region = Polyhedron.box([-2], [2])
        flat = PiecewisePolyDensity.tent([0], 2)
        square = PiecewisePolyDensity.tent([0], 2, y_exp=(2,))
        both = PiecewisePolyDensity(
            1, 1, tuple(DensityCell(a.cell, a.terms + b.terms) for a, b in zip(flat.cells, square.cells))
        )
        assert integrate_against_theta0(f, flat, region) == (Fraction(3),)
        assert integrate_against_theta0(f, square, region) == (Fraction(5),)
        assert integrate_against_theta0(f, both, region) == (Fraction(8),)
        for c in (3, "-1/2", 0):
            scaled = PiecewisePolyDensity.tent([0], 2, coeff=(c,), y_exp=(2,))
            assert integrate_against_theta0(f, scaled, region) == (5 * Fraction(c),)

    def test_support_must_sit_in_region(self):
        phi = PiecewisePolyDensity.tent([0], 2)
        with pytest.raises(SupportError):
            integrate_against_theta0(self.abs, phi, self.region)


class TestCatalog:
    """Test suite for catalog bumps and their DC decompositions."""

    def test_hinge_bump_values(self):
        bump = HingeBump.of([0], "1/2")
        assert bump([0]) == 1
        assert bump(["1/4"]) == Fraction(1, 2)
        assert bump([1]) == 0

    def test_decomposition_matches_bump(self):
        bump = HingeBump.of([1, -1], "1/2")
        g, h = dc_decompose_catalog(bump)
        assert isinstance(g, PolyConvexFunction) and g.has_full_domain and h.has_full_domain
        for x in ([1, -1], ["5/4", -1], ["3/2", "-3/4"], [3, 3], ["1", "-3/4"]):
            assert g(x) - h(x) == bump(x)

    def test_bump_pair(self):
        pair = bump_pair([0], "1/4")
        assert pair([0]) == 1
        assert pair(["1/8"]) == Fraction(1, 2)
        assert pair([5]) == 0

    def test_dict_shapes(self):
        g, h = dc_decompose_catalog({"kind": "hinge", "center": [0], "delta": "1/2"})
        assert g([0]) - h([0]) == 1
        with pytest.raises(UnknownShapeError):
            dc_decompose_catalog({"kind": "gaussian", "center": [0], "delta": 1})

    def test_nonpositive_radius(self):
        with pytest.raises(PreconditionError):
            HingeBump.of([0], 0)
