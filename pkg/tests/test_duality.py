"""
Tests for infimal convolution, epi-multiplication, the epigraph distance and dual cones.
"""

import math
from fractions import Fraction

import pytest

from cvlab.convex import (
    AffineForm,
    ConeSpec,
    add,
    affine_function,
    conjugate,
    functions_equal,
    indicator,
    max_affine,
    recession_function,
    scale,
)
from cvlab.duality import DualConeSpec, cone_contains, dual_cone, epi_distance, epi_mult, inf_conv, require_in_cone
from cvlab.errors import ConeViolationError, DimensionMismatchError, IncreaseRhoError, PreconditionError
from cvlab.generators import random_function
from cvlab.geometry import Polyhedron


def f_of(*pieces, domain=None):
    return max_affine([AffineForm.of([y], c) for y, c in pieces], domain)


class TestInfConv:
    """Test suite for infimal convolution."""

    @pytest.fixture(autouse=True)
    def setUp(self, abs_function, unit_interval_indicator):
        """Set up test fixtures."""
        self.abs = abs_function
        self.box = unit_interval_indicator
        self.origin = indicator(Polyhedron.point([0]), allow_thin=True)

    def test_origin_indicator_is_identity(self):
        assert functions_equal(inf_conv(self.abs, self.origin), self.abs)
        assert functions_equal(inf_conv(self.origin, self.box), self.box)

    def test_indicators_add_their_sets(self):
        shifted = indicator(Polyhedron.box([0], [2]))
        assert functions_equal(inf_conv(self.box, shifted), indicator(Polyhedron.box([-1], [3])))

    def test_distance_to_interval(self):
        # |x| □ I_[-1,1] is the distance to [-1, 1]
        result = inf_conv(self.abs, self.box)
        assert result([0]) == 0
        assert result([3]) == 2
        assert result(["-5/2"]) == Fraction(3, 2)

    def test_commutative_and_associative(self, rng):
        for _ in range(5):
            f, g, h = (random_function(1, rng, bounded_domain=True) for _ in range(3))
            assert functions_equal(inf_conv(f, g), inf_conv(g, f))
            assert functions_equal(inf_conv(inf_conv(f, g), h), inf_conv(f, inf_conv(g, h)))

    def test_conjugate_of_sum(self, rng):
        for _ in range(5):
            f = random_function(1, rng, bounded_domain=True)
            g = random_function(1, rng, bounded_domain=False)
            assert functions_equal(conjugate(add(f, g)), inf_conv(conjugate(f), conjugate(g)))

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            inf_conv(self.abs, affine_function([1, 1]))


class TestEpiMult:
    """Test suite for epi-multiplication."""

    @pytest.fixture(autouse=True)
    def setUp(self, abs_function, unit_interval_indicator):
        """Set up test fixtures."""
        self.abs = abs_function
        self.box = unit_interval_indicator
        self.kinked = f_of((1, -1), (-1, 0))

    def test_homogeneous_function_is_fixed(self):
        assert functions_equal(epi_mult(self.abs, 2), self.abs)

    def test_indicator_scales_its_set(self):
        assert functions_equal(epi_mult(self.box, 2), indicator(Polyhedron.box([-2], [2])))

    def test_zero_factor_is_recession(self):
        assert functions_equal(epi_mult(self.kinked, 0), recession_function(self.kinked))
        assert functions_equal(epi_mult(self.box, 0), indicator(Polyhedron.point([0]), allow_thin=True))

    def test_dual_to_scaling(self):
        for t in (Fraction(1, 3), 2, 3):
            assert functions_equal(conjugate(scale(self.kinked, t)), epi_mult(conjugate(self.kinked), t))

    def test_values(self):
        # 2 ⋆ f (x) = 2 f(x / 2)
        doubled = epi_mult(self.kinked, 2)
        assert doubled([4]) == 2 * self.kinked([2])
        assert doubled([-1]) == 2 * self.kinked(["-1/2"])

    def test_negative_factor(self):
        with pytest.raises(PreconditionError):
            epi_mult(self.abs, -1)


class TestEpiDistance:
    """Test suite for the truncated epigraph distance."""

    @pytest.fixture(autouse=True)
    def setUp(self, abs_function, unit_interval_indicator):
        """Set up test fixtures."""
        self.abs = abs_function
        self.target = add(abs_function, unit_interval_indicator)

    def test_identical_functions(self):
        assert epi_distance(self.abs, self.abs, 10) == 0

    def test_vertical_shift(self):
        for eps in (Fraction(1, 10), Fraction(1, 4)):
            shifted = f_of((1, eps), (-1, eps))
            assert epi_distance(self.abs, shifted, 10) == pytest.approx(float(eps))

    def test_steep_walls_approach_the_indicator(self):
        distances = [epi_distance(f_of((1, 0), (-1, 0), (k, -k), (-k, -k)), self.target, 10) for k in (5, 10, 20)]
        assert distances == pytest.approx([2.0, 1.0, 0.5])
        assert distances[0] > distances[1] > distances[2]

    def test_one_truncation_empty(self):
        high = affine_function([0], 20)
        assert math.isinf(epi_distance(self.abs, high, 10))

    def test_both_truncations_empty(self):
        high = affine_function([0], 20)
        with pytest.raises(IncreaseRhoError):
            epi_distance(high, affine_function([0], 30), 10)

    def test_rho_must_be_positive(self):
        with pytest.raises(PreconditionError):
            epi_distance(self.abs, self.abs, 0)


class TestDualCones:
    """Test suite for dual cone descriptions and membership."""

    @pytest.fixture(autouse=True)
    def setUp(self, abs_function, unit_interval, unit_interval_indicator, full_cone):
        """Set up test fixtures."""
        self.abs = abs_function
        self.box = unit_interval_indicator
        self.uniform = ConeSpec.uniform(unit_interval)
        self.full = full_cone

    def test_dualizing_twice(self):
        assert dual_cone(dual_cone(self.uniform)) is self.uniform
        assert isinstance(dual_cone(self.full), DualConeSpec)

    def test_conjugate_domain_membership(self):
        dual = dual_cone(self.uniform)
        # |x|* = I_[-1,1] while (2|x|)* = I_[-2,2]
        assert cone_contains(dual, self.abs)
        assert not cone_contains(dual, scale(self.abs, 2))
        assert not cone_contains(dual, self.box)

    def test_dual_of_full_cone(self):
        dual = dual_cone(self.full)
        # conjugates with full domain come from functions with bounded domain
        assert cone_contains(dual, self.box)
        assert not cone_contains(dual, self.abs)

    def test_nested_dual_description(self):
        nested = DualConeSpec(DualConeSpec(self.uniform))
        assert cone_contains(nested, self.box)
        assert not cone_contains(nested, self.abs)

    def test_conjugates_land_in_the_dual(self, rng):
        for _ in range(5):
            f = random_function(1, rng, bounded_domain=True)
            dual = dual_cone(ConeSpec.uniform(f.domain))
            assert cone_contains(dual, conjugate(f))

    def test_require_in_cone(self):
        require_in_cone(dual_cone(self.uniform), self.abs)
        with pytest.raises(ConeViolationError):
            require_in_cone(dual_cone(self.uniform), self.box)

    def test_dimension_mismatch_is_not_member(self):
        result = cone_contains(dual_cone(self.uniform), affine_function([1, 0]))
        assert not result
        assert "R^2" in result.reason
