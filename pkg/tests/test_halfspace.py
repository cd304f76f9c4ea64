"""Half-space and Siegel kernels, the Hessian determinant, and the bridge."""

import math

import pytest

from berglab.halfspace_kernel import (
    SiegelPoint,
    halfspace_siegel_bridge_check,
    harmonic_halfspace_diag,
    siegel_hessian_det,
    siegel_holo_diag,
)
from berglab.oracles import OracleSelector, oracle_harm_diag
from berglab.weights import parse_weight


@pytest.fixture(scope="module")
def linear():
    return parse_weight("vert-power:1")


@pytest.fixture(scope="module")
def decay():
    return parse_weight("vert-expdecay")


class TestHalfspaceDiag:
    def test_unweighted(self, linear):
        ev = harmonic_halfspace_diag(linear, 0.0, 3, 1.0)
        assert ev.value == pytest.approx(1.0 / (4 * math.pi), rel=1e-10)

    def test_linear_weight(self, linear):
        ev = harmonic_halfspace_diag(linear, 1.0, 3, 1.0)
        assert ev.value == pytest.approx(3.0 / (4 * math.pi), rel=1e-10)

    def test_decay_weight(self, decay):
        ev = harmonic_halfspace_diag(decay, 1.0, 3, 1.0)
        assert ev.value == pytest.approx(3.0 / (8 * math.pi), rel=1e-10)

    @pytest.mark.parametrize("n", [2, 3, 4])
    @pytest.mark.parametrize("alpha", [0.0, 1.0, 3.0])
    def test_power_closed_form_grid(self, linear, n, alpha):
        for y in (0.5, 1.0, 2.0):
            oracle = oracle_harm_diag(
                OracleSelector("halfspace", "harmonic", alpha, n, y)
            )
            closed = harmonic_halfspace_diag(linear, alpha, n, y, tol=1e-10)
            assert abs(math.expm1(closed.log_value - oracle.log_value)) < 1e-8

    def test_fully_numeric_inner(self, linear):
        oracle = oracle_harm_diag(OracleSelector("halfspace", "harmonic", 1.0, 3, 1.0))
        numeric = harmonic_halfspace_diag(linear, 1.0, 3, 1.0, tol=1e-6, inner="numeric")
        assert abs(math.expm1(numeric.log_value - oracle.log_value)) < 1e-4

    def test_homogeneity_in_height(self, linear):
        # for rho = y the kernel scales as y^(-n-alpha)
        alpha, n, lam = 2.0, 3.0, 2.0
        base = harmonic_halfspace_diag(linear, alpha, 3, 1.0)
        stretched = harmonic_halfspace_diag(linear, alpha, 3, lam)
        got = stretched.log_value - base.log_value
        want = -(n + alpha) * math.log(lam)
        assert abs(math.expm1(got - want)) < 1e-9

    def test_validation(self, linear):
        with pytest.raises(ValueError):
            harmonic_halfspace_diag(linear, 1.0, 3, 0.0)
        with pytest.raises(ValueError):
            harmonic_halfspace_diag(linear, 1.0, 1, 1.0)
        with pytest.raises(ValueError):
            harmonic_halfspace_diag(
                parse_weight("vert-power:1*vert-invpow:1"), 1.0, 3, 1.0, inner="closed"
            )


class TestSiegelDiag:
    def test_unweighted_plane(self):
        one = parse_weight("vert-power:0")
        ev = siegel_holo_diag(one, 0.0, 1, 1.0)
        assert ev.value == pytest.approx(1.0 / (4 * math.pi), rel=1e-10)

    def test_linear_weight_plane(self, linear):
        ev = siegel_holo_diag(linear, 1.0, 1, 1.0)
        assert ev.value == pytest.approx(1.0 / (2 * math.pi), rel=1e-10)

    def test_two_dims(self):
        one = parse_weight("vert-power:0")
        ev = siegel_holo_diag(one, 0.0, 2, 2.0)
        assert ev.value == pytest.approx(1.0 / (16 * math.pi**2), rel=1e-10)

    def test_point_validation(self):
        with pytest.raises(ValueError):
            SiegelPoint(0.0, 1)
        with pytest.raises(ValueError):
            SiegelPoint(1.0, 0)
        assert SiegelPoint(0.5, 2).s == 0.5


class TestHessianDet:
    def test_log_linear_weight_is_flat(self, decay):
        assert siegel_hessian_det(decay, 3, 1.0) == pytest.approx(0.0, abs=1e-15)

    def test_linear_weight(self, linear):
        assert siegel_hessian_det(linear, 1, 0.5) == pytest.approx(1.0, rel=1e-14)
        assert siegel_hessian_det(linear, 2, 1.0) == pytest.approx(0.25, rel=1e-14)

    def test_callable_source(self):
        phi = lambda t: (-math.log(t), -1.0 / t, 1.0 / t**2)
        assert siegel_hessian_det(phi, 2, 1.0) == pytest.approx(0.25, rel=1e-14)

    @pytest.mark.parametrize("spec_text", ["vert-power:1", "vert-power:2", "vert-power:1*vert-invpow:1"])
    def test_positive_under_hypotheses(self, spec_text):
        from berglab.weights import check_vertical_hypotheses

        profile = parse_weight(spec_text)
        assert check_vertical_hypotheses(profile)
        for t in (0.3, 1.0, 3.0):
            assert siegel_hessian_det(profile, 3, t) > 0.0


class TestBridge:
    def test_linear_unweighted(self, linear):
        report = halfspace_siegel_bridge_check(linear, 0.0, 3, 1.0)
        assert report.relative_gap <= 1e-9

    def test_decay_weight(self, decay):
        report = halfspace_siegel_bridge_check(decay, 1.0, 3, 1.0)
        assert report.relative_gap <= 1e-8

    def test_linear_n4(self, linear):
        report = halfspace_siegel_bridge_check(linear, 2.0, 4, 0.5)
        assert report.relative_gap <= 1e-8

    def test_numeric_inner_family(self):
        profile = parse_weight("vert-power:1*vert-invpow:1")
        report = halfspace_siegel_bridge_check(profile, 1.0, 3, 1.0, inner="numeric")
        assert report.relative_gap <= 1e-8
