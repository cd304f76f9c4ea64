"""Adaptive integration, moments against Beta/Gamma closed forms, transforms."""

import math

import pytest

from berglab.errors import NoConvergence
from berglab.quadrature import (
    QuadratureSpec,
    integrate_adaptive,
    laplace_transform_rho,
    moment,
    moment_table,
    scaled_profile,
)
from berglab.weights import parse_weight


def beta_moment_log(k, alpha):
    # rho_k(alpha) = B((k+1)/2, alpha+1) / 2 for the first-order weight
    return (
        math.log(0.5)
        + math.lgamma(0.5 * (k + 1))
        + math.lgamma(alpha + 1.0)
        - math.lgamma(0.5 * (k + 1) + alpha + 1.0)
    )


class TestIntegrateAdaptive:
    def test_constant(self):
        res = integrate_adaptive(lambda r: 1.0, (0.0, 1.0))
        assert res.value == pytest.approx(1.0, rel=1e-13)
        assert res.converged

    def test_cubic(self):
        res = integrate_adaptive(lambda r: r**3, (0.0, 1.0))
        assert res.value == pytest.approx(0.25, rel=1e-13)

    def test_semi_infinite_decay(self):
        res = integrate_adaptive(lambda r: math.exp(-r), (0.0, math.inf))
        assert res.value == pytest.approx(1.0, rel=1e-12)

    def test_depth_cap_flags_not_converged(self):
        spec = QuadratureSpec(rel_tol=1e-14, max_depth=2)
        res = integrate_adaptive(lambda r: abs(r - 0.313) ** -0.5, (0.0, 1.0), spec)
        assert not res.converged
        assert res.value > 0.0

    def test_spec_validation(self):
        with pytest.raises(ValueError):
            QuadratureSpec(rel_tol=0.0)
        with pytest.raises(ValueError):
            QuadratureSpec(panel_order=21)


class TestMoment:
    def test_first_order_k1(self):
        assert moment(parse_weight("power:1"), 1, 1.0).value == pytest.approx(0.25, rel=1e-12)

    def test_unweighted_k0(self):
        assert moment(parse_weight("power:1"), 0, 0.0).value == pytest.approx(1.0, rel=1e-13)

    def test_first_order_k2(self):
        assert moment(parse_weight("power:1"), 2, 1.0).value == pytest.approx(2.0 / 15.0, rel=1e-12)

    @pytest.mark.parametrize("alpha", [0.0, 1.0, 5.0, 20.0, 100.0])
    def test_beta_closed_form_grid(self, alpha):
        phi = parse_weight("power:1")
        for k in range(51):
            got = moment(phi, k, alpha)
            want = beta_moment_log(k, alpha)
            assert abs(math.expm1(got.log_value - want)) < 1e-10

    def test_gaussian_moments(self):
        gauss = parse_weight("exp:1")
        assert moment(gauss, 1, 2.0).value == pytest.approx(0.25, rel=1e-12)
        # rho_k(alpha) = Gamma((k+1)/2) alpha^(-(k+1)/2) / 2
        got = moment(gauss, 0, 2.0).value
        assert got == pytest.approx(0.5 * math.sqrt(math.pi / 2.0), rel=1e-12)

    def test_scaling_in_weight_constant(self):
        phi = parse_weight("power:1")
        base = moment(phi, 5, 3.0).value
        doubled = moment(scaled_profile(phi, 2.0), 5, 3.0).value
        assert doubled == pytest.approx(2.0**3 * base, rel=1e-10)

    def test_underflow_switches_to_log(self):
        got = moment(parse_weight("power:1"), 3000, 1000.0)
        assert got.underflow
        assert abs(got.log_value - beta_moment_log(3000, 1000.0)) < 1e-9

    def test_full_space_needs_positive_alpha(self):
        with pytest.raises(ValueError):
            moment(parse_weight("exp:1"), 2, 0.0)


class TestMomentTable:
    def test_unweighted_values(self):
        table = moment_table(parse_weight("power:1"), 0.0, 3)
        for k, want in enumerate([1.0, 0.5, 1.0 / 3.0, 0.25]):
            assert table.values[k] == pytest.approx(want, rel=1e-12)

    def test_first_order_values(self):
        table = moment_table(parse_weight("power:1"), 1.0, 2)
        for k, want in enumerate([2.0 / 3.0, 0.25, 2.0 / 15.0]):
            assert table.values[k] == pytest.approx(want, rel=1e-12)

    @pytest.mark.parametrize(
        "spec_text,alpha,k_max",
        [
            ("power:1", 0.0, 50),
            ("power:1", 100.0, 40),
            ("poly:1,0,-1", 12.0, 30),
            ("exp:1", 3.0, 30),
            ("power:1*poly:1,0.5", 7.0, 25),
        ],
    )
    def test_invariants(self, spec_text, alpha, k_max):
        table = moment_table(parse_weight(spec_text), alpha, k_max)
        assert table.validate()

    def test_determinism(self):
        phi = parse_weight("poly:1,0,-1")
        first = moment_table(phi, 7.0, 20)
        second = moment_table(phi, 7.0, 20)
        assert first.log_values == second.log_values


class TestLaplaceTransform:
    def test_constant_weight(self):
        assert laplace_transform_rho(parse_weight("vert-power:0"), 1.0) == pytest.approx(0.5, rel=1e-12)

    def test_linear_weight(self):
        assert laplace_transform_rho(parse_weight("vert-power:1"), 1.0) == pytest.approx(0.25, rel=1e-12)

    def test_decay_weight(self):
        assert laplace_transform_rho(parse_weight("vert-expdecay"), 0.5) == pytest.approx(0.5, rel=1e-12)

    @pytest.mark.parametrize("p", [0.0, 1.0, 2.5])
    @pytest.mark.parametrize("t", [0.1, 1.0, 10.0])
    def test_power_family_closed_form(self, p, t):
        profile = parse_weight(f"vert-power:{p}")
        want = math.gamma(p + 1.0) / (2.0 * t) ** (p + 1.0)
        numeric = laplace_transform_rho(profile, t, use_closed_form=False)
        closed = laplace_transform_rho(profile, t, use_closed_form=True)
        assert numeric == pytest.approx(want, rel=1e-10)
        assert closed == pytest.approx(want, rel=1e-14)

    def test_exponent_folding(self):
        # transform of rho^alpha for rho = e^-y is 1/(alpha + 2t)
        got = laplace_transform_rho(parse_weight("vert-expdecay"), 1.5, alpha=3.0)
        assert got == pytest.approx(1.0 / 6.0, rel=1e-12)

    def test_argument_validation(self):
        with pytest.raises(ValueError):
            laplace_transform_rho(parse_weight("vert-power:1"), 0.0)


class TestErrorPaths:
    def test_moment_no_convergence_cap(self):
        spec = QuadratureSpec(rel_tol=1e-13, max_depth=1)
        with pytest.raises(NoConvergence):
            moment(parse_weight("poly:1,0,-1"), 9, 60.0, spec)
