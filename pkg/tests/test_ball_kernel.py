"""Series kernels on the ball and full space against their closed forms."""

import math

import pytest

from berglab.ball_kernel import harmonic_ball_diag, holomorphic_ball_diag
from berglab.errors import NoDecay
from berglab.oracles import OracleSelector, oracle_harm_diag, oracle_holo_diag
from berglab.weights import parse_weight


@pytest.fixture(scope="module")
def first_order():
    return parse_weight("power:1")


@pytest.fixture(scope="module")
def gaussian():
    return parse_weight("exp:1")


class TestHarmonicBall:
    def test_unweighted_origin(self, first_order):
        ev = harmonic_ball_diag(first_order, 0.0, 3, 0.0)
        assert ev.value == pytest.approx(3.0 / (4 * math.pi), rel=1e-12)
        assert ev.terms_used == 1

    def test_weighted_origin(self, first_order):
        ev = harmonic_ball_diag(first_order, 1.0, 3, 0.0)
        assert ev.value == pytest.approx(15.0 / (8 * math.pi), rel=1e-12)

    def test_matches_hypergeometric_inside(self, first_order):
        ev = harmonic_ball_diag(first_order, 2.0, 4, 0.25, tol=1e-10)
        oracle = oracle_harm_diag(OracleSelector("real_ball", "harmonic", 2.0, 4, 0.25))
        assert ev.value == pytest.approx(oracle.value, rel=1e-8)

    @pytest.mark.parametrize("alpha", [0.0, 1.0, 5.0])
    @pytest.mark.parametrize("n", [3, 5])
    def test_oracle_grid(self, first_order, alpha, n):
        for t in (0.0, 0.25, 0.49):
            ev = harmonic_ball_diag(first_order, alpha, n, t, tol=1e-11)
            oracle = oracle_harm_diag(
                OracleSelector("real_ball", "harmonic", alpha, n, t)
            )
            assert abs(math.expm1(ev.log_value - oracle.log_value)) < 1e-8

    def test_planar_convention_matches_series(self, first_order):
        ev = harmonic_ball_diag(first_order, 3.0, 2, 0.3, tol=1e-11)
        oracle = oracle_harm_diag(OracleSelector("real_ball", "harmonic", 3.0, 2, 0.3))
        assert ev.value == pytest.approx(oracle.value, rel=1e-8)

    def test_monotone_in_radius(self, first_order):
        values = [
            harmonic_ball_diag(first_order, 3.0, 3, t).value
            for t in (0.0, 0.1, 0.2, 0.3, 0.4)
        ]
        assert all(b > a for a, b in zip(values, values[1:]))

    def test_large_alpha_log_domain(self, first_order):
        ev = harmonic_ball_diag(first_order, 500.0, 3, 0.25, tol=1e-10)
        oracle = oracle_harm_diag(OracleSelector("real_ball", "harmonic", 500.0, 3, 0.25))
        assert abs(math.expm1(ev.log_value - oracle.log_value)) < 1e-8

    def test_refuses_uncertifiable_tail(self, first_order):
        with pytest.raises(NoDecay):
            harmonic_ball_diag(first_order, 0.0, 3, 0.999, tol=1e-12)

    def test_domain_validation(self, first_order):
        with pytest.raises(ValueError):
            harmonic_ball_diag(first_order, 1.0, 3, 1.0)
        with pytest.raises(ValueError):
            harmonic_ball_diag(first_order, 1.0, 1, 0.2)


class TestFullSpace:
    @pytest.mark.parametrize("alpha", [1.0, 4.0])
    @pytest.mark.parametrize("n", [3, 4])
    def test_confluent_oracle_grid(self, gaussian, alpha, n):
        for t in (0.0, 0.5, 1.0):
            ev = harmonic_ball_diag(gaussian, alpha, n, t, tol=1e-11)
            oracle = oracle_harm_diag(OracleSelector("fock", "harmonic", alpha, n, t))
            assert abs(math.expm1(ev.log_value - oracle.log_value)) < 1e-8

    def test_needs_positive_alpha(self, gaussian):
        with pytest.raises(ValueError):
            harmonic_ball_diag(gaussian, 0.0, 3, 0.5)


class TestHolomorphicBall:
    def test_disc_weighted(self, first_order):
        ev = holomorphic_ball_diag(first_order, 1.0, 1, 0.0)
        assert ev.value == pytest.approx(2.0 / math.pi, rel=1e-12)

    def test_disc_unweighted(self, first_order):
        ev = holomorphic_ball_diag(first_order, 0.0, 1, 0.0)
        assert ev.value == pytest.approx(1.0 / math.pi, rel=1e-12)

    def test_two_complex_dims(self, first_order):
        ev = holomorphic_ball_diag(first_order, 0.0, 2, 0.5, tol=1e-11)
        assert ev.value == pytest.approx(16.0 / math.pi**2, rel=1e-9)

    @pytest.mark.parametrize("m", [1, 2])
    @pytest.mark.parametrize("alpha", [0.0, 1.0, 5.0])
    def test_closed_form_grid(self, first_order, m, alpha):
        for t in (0.0, 0.25, 0.5):
            ev = holomorphic_ball_diag(first_order, alpha, m, t, tol=1e-11)
            oracle = oracle_holo_diag(
                OracleSelector("complex_ball", "holomorphic", alpha, m, t)
            )
            assert abs(math.expm1(ev.log_value - oracle.log_value)) < 1e-9


class TestWeightScaling:
    @pytest.mark.parametrize("alpha", [1.0, 10.0])
    def test_scaling_invariance(self, first_order, alpha):
        from berglab.quadrature import scaled_profile

        doubled = scaled_profile(first_order, 2.0)
        base = harmonic_ball_diag(first_order, alpha, 3, 0.25, tol=1e-11)
        scaled = harmonic_ball_diag(doubled, alpha, 3, 0.25, tol=1e-11)
        log_lhs = alpha * math.log(2.0 * first_order.value(0.25)) + scaled.log_value
        log_rhs = alpha * math.log(first_order.value(0.25)) + base.log_value
        assert abs(math.expm1(log_lhs - log_rhs)) < 1e-9
