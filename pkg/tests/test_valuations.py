"""
Tests for valuations: built-in kinds, decomposition, fits, polarization,
support probing, extension and identity checks.
"""

from fractions import Fraction

import pytest

from cvlab.convex import (
    AffineForm,
    ConeSpec,
    add,
    affine_function,
    indicator,
    max_affine,
    pointwise_max,
    pointwise_min_checked,
    scale,
    support_lift,
)
from cvlab.duality import DualConeSpec, epi_mult
from cvlab.errors import (
    ConeViolationError,
    DuplicateNodesError,
    NotInteriorError,
    OutsideMaximalConeError,
    PreconditionError,
    SupportError,
)
from cvlab.generators import random_body
from cvlab.geometry import Polyhedron
from cvlab.geometry.vectors import vadd
from cvlab.hessian import PiecewisePolyDensity, bump_pair
from cvlab.valuations import (
    DirichletValuation,
    HomogeneousComponent,
    MaxProbeValuation,
    TopDegreeValuation,
    affine_poly_fit,
    check_component_homogeneity,
    decompose_homogeneous,
    dualize_valuation,
    epi_translation_fit,
    extend_valuation,
    gw_evaluate,
    polarize,
    reconstruct_density,
    support_estimate,
    top_part_is_translation_invariant,
    verify_valuation_identity,
)
from cvlab.valuations.builtins import COMPONENT_CACHE_SIZE


def top_degree(n=1, d=0, radius=1):
    y_exp = (d,) + (0,) * (n - 1)
    return TopDegreeValuation(PiecewisePolyDensity.tent((0,) * n, radius, y_exp=y_exp), ConeSpec.full(n))


def dirichlet(n=1):
    return DirichletValuation(Polyhedron.cube(n, 1), ConeSpec.full(n))


class TestBuiltins:
    """Test suite for the built-in valuation kinds."""

    @pytest.fixture(autouse=True)
    def setUp(self, abs_function):
        """Set up test fixtures."""
        self.abs = abs_function

    def test_top_degree_metadata(self):
        Z = top_degree(2, 1)
        assert (Z.n, Z.d, Z.m, Z.homogeneity) == (2, 1, 1, 3)

    def test_top_degree_values(self):
        assert top_degree()(self.abs) == (Fraction(2),)
        assert top_degree()(scale(self.abs, 3)) == (Fraction(6),)
        assert top_degree()(affine_function([5], -2)) == (Fraction(0),)

    def test_dirichlet_values(self):
        Z = dirichlet()
        assert Z(self.abs) == (Fraction(2),)
        assert Z(affine_function([3], 1)) == (Fraction(18),)
        assert Z.homogeneity == 2

    def test_support_must_sit_in_O(self, unit_interval):
        with pytest.raises(SupportError):
            TopDegreeValuation(PiecewisePolyDensity.tent([0], 1), ConeSpec.uniform(unit_interval))
        with pytest.raises(SupportError):
            DirichletValuation(unit_interval, ConeSpec.uniform(unit_interval))

    def test_cone_is_enforced(self, unit_interval_indicator):
        with pytest.raises(ConeViolationError):
            dirichlet()(add(self.abs, unit_interval_indicator))

    def test_max_probe_breaks_the_identity(self):
        Z = MaxProbeValuation([(-1,), (1,)], ConeSpec.full(1))
        f = max_affine([AffineForm.of([-1], 1), AffineForm.of([0], 1)])
        h = max_affine([AffineForm.of([1], 1), AffineForm.of([0], 1)])
        lhs = vadd(Z(pointwise_max(f, h)), Z(pointwise_min_checked(f, h)))
        assert lhs == (Fraction(3),)
        assert vadd(Z(f), Z(h)) == (Fraction(4),)

    def test_max_probe_needs_probes_in_O(self, unit_interval):
        with pytest.raises(SupportError):
            MaxProbeValuation([(2,)], ConeSpec.uniform(unit_interval))
        with pytest.raises(PreconditionError):
            MaxProbeValuation([], ConeSpec.full(1))

    def test_homogeneous_component(self):
        assert HomogeneousComponent(dirichlet(), 2)(self.abs) == (Fraction(2),)
        assert HomogeneousComponent(dirichlet(), 1)(self.abs) == (Fraction(0),)
        with pytest.raises(PreconditionError):
            HomogeneousComponent(dirichlet(), 5)

    def test_component_cache_is_bounded(self):
        Z2 = HomogeneousComponent(dirichlet(), 2)
        assert Z2(self.abs) == Z2(self.abs)
        info = Z2._component.cache_info()
        assert (info.hits, info.misses) == (1, 1)
        assert info.maxsize == COMPONENT_CACHE_SIZE


class TestDualized:
    """Test suite for valuations on dual cones."""

    @pytest.fixture(autouse=True)
    def setUp(self, abs_function, unit_interval_indicator):
        """Set up test fixtures."""
        self.abs = abs_function
        self.box = unit_interval_indicator
        self.Z = dirichlet()
        self.dual = dualize_valuation(self.Z)

    def test_evaluates_on_conjugates(self):
        assert isinstance(self.dual.cone, DualConeSpec)
        assert self.dual(self.box) == self.Z(self.abs)

    def test_dualizing_twice(self):
        twice = dualize_valuation(self.dual)
        assert twice.cone is self.Z.cone
        assert twice(self.abs) == self.Z(self.abs)

    def test_epi_homogeneity(self):
        # (2 ⋆ f)* = 2 f*
        assert self.dual.epi_homogeneity == 2
        assert self.dual(epi_mult(self.box, 2)) == tuple(4 * x for x in self.dual(self.box))

    def test_epi_translation_fit(self):
        fit = epi_translation_fit(self.dual, self.box)
        assert fit.exact
        assert fit.variables == ("x1", "t")

    def test_outside_dual_cone(self):
        with pytest.raises(ConeViolationError):
            self.dual(self.abs)


class TestDecomposition:
    """Test suite for homogeneous decomposition."""

    def test_top_degree_is_homogeneous(self, abs_function):
        result = decompose_homogeneous(top_degree(), abs_function)
        assert result.exact
        assert [k for k, _ in result.components] == [0, 1, 2]
        assert result.component(1) == (Fraction(2),)
        assert result.component(0) == (Fraction(0),)
        assert result.top_slot_zero
        assert result.sums_to_value

    def test_random_lifts(self, rng):
        for Z in (top_degree(1, 1), dirichlet(), top_degree(2, 0)):
            f = support_lift(random_body(Z.n + 1, rng))
            result = decompose_homogeneous(Z, f)
            assert result.sums_to_value
            assert result.top_slot_zero

    def test_component_homogeneity(self, rng):
        f = support_lift(random_body(2, rng))
        assert all(check.ok for check in check_component_homogeneity(dirichlet(), f))
        reused = check_component_homogeneity(dirichlet(), f, base=decompose_homogeneous(dirichlet(), f))
        assert reused == check_component_homogeneity(dirichlet(), f)

    def test_explicit_nodes(self, abs_function):
        result = decompose_homogeneous(top_degree(), abs_function, nodes=["1/2", 2, 3])
        assert result.component(1) == (Fraction(2),)
        assert result.nodes == (Fraction(1, 2), Fraction(2), Fraction(3))

    def test_bad_nodes(self, abs_function):
        with pytest.raises(DuplicateNodesError):
            decompose_homogeneous(top_degree(), abs_function, nodes=[1, 1, 2])
        with pytest.raises(PreconditionError):
            decompose_homogeneous(top_degree(), abs_function, nodes=[1, 2])
        with pytest.raises(PreconditionError):
            decompose_homogeneous(top_degree(), abs_function, nodes=[-1, 1, 2])

    def test_max_probe_has_no_extra_slot(self, abs_function):
        Z = MaxProbeValuation([(0,)], ConeSpec.full(1))
        result = decompose_homogeneous(Z, abs_function)
        assert result.top_slot_zero
        assert result.sums_to_value


class TestFitting:
    """Test suite for polynomial fits over affine functions and epi-translations."""

    def test_dirichlet_of_abs(self, abs_function):
        fit = affine_poly_fit(dirichlet(), abs_function)
        assert fit.exact
        assert fit.variables == ("y1", "c")
        assert fit.coefficients == {(0, 0): (Fraction(2),), (2, 0): (Fraction(2),)}
        assert fit.homogeneous_part(2) == {(2, 0): (Fraction(2),)}
        assert fit((Fraction(3), Fraction(5))) == (Fraction(20),)

    def test_top_degree_fits(self, rng):
        for Z in (top_degree(1, 2), top_degree(2, 1)):
            fit = affine_poly_fit(Z, support_lift(random_body(Z.n + 1, rng)))
            assert fit.exact, fit.violations

    def test_translation_invariant_top_part(self, abs_function):
        assert top_part_is_translation_invariant(dirichlet(), abs_function, AffineForm.of([1], 2))


class TestPolarization:
    """Test suite for polarization and Goodey-Weil pairings."""

    @pytest.fixture(autouse=True)
    def setUp(self):
        """Set up test fixtures."""
        self.Z = dirichlet()
        self.x = affine_function([1])

    def test_polarization_of_linear_functions(self):
        # ∫_{-1}^{1} f' g' dx
        assert polarize(self.Z, [self.x, scale(self.x, 2)]) == (Fraction(4),)
        assert polarize(self.Z, [self.x, self.x]) == self.Z(self.x)

    def test_symmetry(self, abs_function):
        assert polarize(self.Z, [abs_function, self.x]) == polarize(self.Z, [self.x, abs_function])

    def test_homogeneity_mismatch(self):
        with pytest.raises(PreconditionError):
            polarize(self.Z, [self.x])

    def test_bump_pairing(self):
        for delta in (Fraction(1, 4), Fraction(1, 8)):
            pair = bump_pair([0], delta)
            assert gw_evaluate(self.Z, [pair, pair]) == (2 / delta,)

    def test_disjoint_bumps(self):
        left, right = bump_pair(["-1/2"], "1/4"), bump_pair(["1/2"], "1/4")
        assert gw_evaluate(self.Z, [left, right]) == (Fraction(0),)

    def test_convex_shift_is_ignored(self, abs_function):
        pair = bump_pair(["1/4"], "1/4")
        assert gw_evaluate(self.Z, [pair.shifted(abs_function), pair]) == gw_evaluate(self.Z, [pair, pair])

    def test_pairing_is_symmetric_in_different_pairs(self):
        p, q = bump_pair([0], "1/4"), bump_pair(["1/8"], "1/4")
        assert gw_evaluate(self.Z, [p, q]) == gw_evaluate(self.Z, [q, p])
        assert gw_evaluate(self.Z, [p, q]) != (Fraction(0),)

    def test_pairing_is_linear_in_one_slot(self):
        p1, p2, q = bump_pair([0], "1/4"), bump_pair(["1/8"], "1/8"), bump_pair(["1/16"], "1/4")
        base = gw_evaluate(self.Z, [p1, q])
        assert gw_evaluate(self.Z, [p1 + p2, q]) == vadd(base, gw_evaluate(self.Z, [p2, q]))
        assert gw_evaluate(self.Z, [p1.scaled(3), q]) == (3 * base[0],)
        assert gw_evaluate(self.Z, [p1.scaled("-1/2"), q]) == (-base[0] / 2,)
        assert gw_evaluate(self.Z, [p1.scaled(0), q]) == (Fraction(0),)


class TestSupport:
    """Test suite for bump probing of supports."""

    def test_only_the_inner_probe_is_flagged(self):
        estimate = support_estimate(top_degree(), [(-2,), (0,), (2,)], Fraction(1, 4))
        assert estimate.flagged == ((Fraction(0),),)
        certificates = {probe.center: probe.certificates for probe in estimate.probes}
        assert certificates[(Fraction(0),)] == ((1, (Fraction(-2),)),)
        assert certificates[(Fraction(2),)] == ((1, (Fraction(0),)),)

    def test_region_widens_the_flagged_cells(self):
        estimate = support_estimate(top_degree(), [(-2,), (0,), (2,)], Fraction(1, 4))
        assert estimate.region().same_set(Polyhedron.cube(1, "3/4"))
        assert estimate.region(widen=0).same_set(Polyhedron.cube(1, "1/4"))
        with pytest.raises(SupportError):
            support_estimate(top_degree(), [(-2,), (2,)], Fraction(1, 4)).region()
        assert "lower bound" in estimate.label

    def test_probe_must_stay_in_O(self, unit_interval):
        Z = TopDegreeValuation(PiecewisePolyDensity.tent([0], "1/2"), ConeSpec.uniform(unit_interval))
        with pytest.raises(SupportError):
            support_estimate(Z, [(1,)], Fraction(1, 4))

    def test_dual_cone_is_rejected(self):
        with pytest.raises(PreconditionError):
            support_estimate(dualize_valuation(dirichlet()), [(0,)], Fraction(1, 4))


class TestExtension:
    """Test suite for extension to the maximal cone and density reconstruction."""

    @pytest.fixture(autouse=True)
    def setUp(self, abs_function, unit_interval):
        """Set up test fixtures."""
        self.abs = abs_function
        self.region = unit_interval
        self.target = ConeSpec(1, Polyhedron.universe(1), Polyhedron.cube(1, 2))
        self.Z = top_degree()

    def test_restricted_function(self):
        extended = extend_valuation(self.Z, self.region, self.target, Fraction(1, 2))
        assert extended(add(self.abs, indicator(Polyhedron.cube(1, 2)))) == self.Z(self.abs)

    def test_margin_shrinks_to_fit(self):
        extended = extend_valuation(self.Z, self.region, self.target, Fraction(1, 2))
        tight = add(self.abs, indicator(Polyhedron.cube(1, "5/4")))
        assert extended.margin_for(tight) == Fraction(1, 8)
        assert extended(tight) == (Fraction(2),)

    def test_outside_maximal_cone(self):
        extended = extend_valuation(self.Z, self.region, self.target, Fraction(1, 2))
        with pytest.raises(OutsideMaximalConeError):
            extended(add(self.abs, indicator(Polyhedron.cube(1, "1/2"))))

    def test_invalid_arguments(self):
        with pytest.raises(PreconditionError):
            extend_valuation(self.Z, self.region, self.target, 0)
        with pytest.raises(NotInteriorError):
            extend_valuation(self.Z, self.region, ConeSpec.uniform(self.region), Fraction(1, 2))

    def test_reconstruct_density(self):
        phi = PiecewisePolyDensity.tent([0], 2, y_exp=(1,))
        Z = TopDegreeValuation(phi, ConeSpec.full(1))
        for point in ([0], ["1/2"], [-1]):
            assert reconstruct_density(Z, point) == phi.coefficients_at(point)
        assert reconstruct_density(Z, ["1/2"]) == {((1,), 0): (Fraction(3, 4),)}

    def test_reconstruct_density_in_the_plane(self):
        phi = PiecewisePolyDensity.tent([0, 0], 2)
        Z = TopDegreeValuation(phi, ConeSpec.full(2))
        assert reconstruct_density(Z, ["1/2", "1/2"], radius="1/4") == phi.coefficients_at(["1/2", "1/2"])


class TestIdentity:
    """Test suite for randomized valuation identity checks."""

    def test_builtins_pass(self):
        for Z in (top_degree(), dirichlet(), top_degree(2, 0)):
            report = verify_valuation_identity(Z, 8, seed=3)
            assert report.passed, report.violations
            assert report.trials == 8 and report.seed == 3

    def test_dual_valuation_passes(self):
        assert verify_valuation_identity(dualize_valuation(dirichlet()), 8, seed=3).passed

    def test_reports_are_reproducible(self):
        Z = MaxProbeValuation([(-1,), (1,)], ConeSpec.full(1))
        first = verify_valuation_identity(Z, 40, seed=5)
        second = verify_valuation_identity(Z, 40, seed=5)
        assert first == second
        assert first.violations
        assert first.checked == 40 - len(first.skipped)
        for violation in first.violations:
            assert violation.lhs != violation.rhs
            assert violation.reproducer["seed"] == 5
