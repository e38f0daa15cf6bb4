"""
Tests for the named acceptance suites.
"""

from fractions import Fraction

import pytest

from cvlab import suites
from cvlab.config import get_config
from cvlab.errors import ImproperFunctionError, PreconditionError
from cvlab.suites import SUITES, run_suite, tangent_sample
from cvlab.valuations import IdentityReport, IdentityViolation


class TestSuites:
    """Test suite for suite reports."""

    def test_tangent_sample(self):
        f = tangent_sample(4)
        assert len(f.pieces) == 4
        # tangent of x²/2 at a = 1/4
        assert f([Fraction(1, 4)]) == Fraction(1, 32)

    def test_hessian_suite(self):
        report = run_suite("hessian", trials=3)
        assert report["passed"] and not report["falsified"]
        ids = [c["id"] for c in report["criteria"]]
        assert ids[:3] == ["theta0-l1-n1", "theta0-l1-n2", "theta0-l1-n3"]
        assert "theta0-smooth-consistency" in ids

    def test_report_carries_the_seed(self):
        assert run_suite("uniqueness")["seed"] == get_config().seed

    def test_unknown_suite(self):
        with pytest.raises(PreconditionError) as exc_info:
            run_suite("nonsense")
        assert exc_info.value.details["suites"] == list(SUITES)

    @pytest.mark.slow
    def test_all_suites_pass(self):
        report = run_suite("all", trials=2)
        assert [r["suite"] for r in report["suites"]] == list(SUITES)
        failed = [c["id"] for r in report["suites"] for c in r["criteria"] if not c["passed"]]
        assert failed == []
        assert not report["falsified"]


class TestGating:
    """Test suite for how criteria count checked, skipped and failed trials."""

    @pytest.fixture(autouse=True)
    def setUp(self, monkeypatch):
        """Set up test fixtures."""
        self.monkeypatch = monkeypatch

    def fake_verify(self, skipped=(), violations=()):
        def verify(Z, trials, seed=None):
            return IdentityReport(Z.kind, trials, 0, tuple(violations), tuple(skipped))

        self.monkeypatch.setattr(suites, "verify_valuation_identity", verify)

    def test_homogeneity_is_checked_on_every_trial(self):
        seen = []

        def check(Z, f, factors=(2, 3, 5), base=None):
            seen.append(base)
            return []

        self.monkeypatch.setattr(suites, "check_component_homogeneity", check)
        criteria = {c.id: c for c in suites.decomposition_suite(trials=3)}
        assert len(seen) == 3 and all(base is not None for base in seen)
        assert criteria["decomposition-homogeneity"].passed

    def test_skipped_duality_trials_fail_the_criterion(self):
        def conjugate(f):
            raise ImproperFunctionError("The epigraph is empty")

        self.monkeypatch.setattr(suites, "conjugate", conjugate)
        for criterion in suites.duality_suite(trials=2):
            assert not criterion.passed, criterion.id
            assert criterion.details["checked"] == 0
            assert criterion.details["required"] == 2

    def test_skipped_identity_trials_fail_the_criterion(self):
        self.fake_verify(skipped=[(0, "minimum is not convex")])
        identity = [c for c in suites.valuation_identity_suite(trials=3) if c.id != "identity-negative-control"]
        assert identity
        for criterion in identity:
            assert not criterion.passed
            assert criterion.details["checked"] == 2

    def test_negative_control_needs_random_violations(self):
        self.fake_verify()
        criteria = {c.id: c for c in suites.valuation_identity_suite(trials=3)}
        assert not criteria["identity-negative-control"].passed
        assert criteria["identity-negative-control"].details["random_violations"] == 0
        assert all(c.passed for cid, c in criteria.items() if cid != "identity-negative-control")

    def test_negative_control_passes_on_a_violation(self):
        violation = IdentityViolation(0, (Fraction(3),), (Fraction(4),), {"seed": 0, "trial": 0})
        self.fake_verify(violations=[violation])
        criteria = {c.id: c for c in suites.valuation_identity_suite(trials=3)}
        assert criteria["identity-negative-control"].passed
