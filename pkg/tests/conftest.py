"""
Shared fixtures for the cvlab tests.
"""

from fractions import Fraction

import numpy as np
import pytest

from cvlab.config import LabConfig, set_config
from cvlab.convex import AffineForm, ConeSpec, indicator, max_affine
from cvlab.geometry import Polyhedron


@pytest.fixture(autouse=True)
def reset_config():
    """Every test starts from the default configuration."""
    set_config(LabConfig())
    yield
    set_config(LabConfig())


@pytest.fixture
def abs_function():
    """|x| on R."""
    return max_affine([AffineForm.of([1], 0), AffineForm.of([-1], 0)])


@pytest.fixture
def unit_interval():
    return Polyhedron.box([-1], [1])


@pytest.fixture
def unit_interval_indicator(unit_interval):
    return indicator(unit_interval)


@pytest.fixture
def full_cone():
    return ConeSpec.full(1)


@pytest.fixture
def rng():
    return np.random.default_rng(7)


@pytest.fixture
def half():
    return Fraction(1, 2)
