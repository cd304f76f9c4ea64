"""Jet arithmetic and the smooth-function combinators."""

import math

import pytest

from berglab.taylor import Jet, Smooth, jet_from_provider, polynomial


class TestJet:
    def test_product_rule(self):
        # (x^2) * (x^3) around x=2 -> x^5: f''(2) = 20 * 8
        x2 = Jet.from_derivatives([4.0, 4.0, 2.0, 0.0])
        x3 = Jet.from_derivatives([8.0, 12.0, 12.0, 6.0])
        prod = x2 * x3
        assert prod.derivative_list()[2] == pytest.approx(20.0 * 8.0)

    def test_quotient(self):
        # 1/(1+x) at x=0: derivatives (-1)^k k!
        one = Jet((1.0, 0.0, 0.0, 0.0))
        denom = Jet((1.0, 1.0, 0.0, 0.0))
        inv = one / denom
        assert inv.derivative_list() == pytest.approx([1.0, -1.0, 2.0, -6.0])

    def test_exp_log_inverse(self):
        j = Jet((0.7, 1.3, -0.4, 0.2))
        back = j.exp().log()
        assert back.coef == pytest.approx(j.coef, rel=1e-13)

    def test_deriv_shift(self):
        j = Jet((5.0, 3.0, 1.0))
        assert j.deriv().derivative_list() == pytest.approx([3.0, 2.0])

    def test_real_power(self):
        j = Jet((4.0, 1.0, 0.0))
        half = j**0.5
        assert half.coef[0] == pytest.approx(2.0)
        assert half.derivative_list()[1] == pytest.approx(0.25)


class TestSmooth:
    def test_identity(self):
        x = Smooth.x()
        assert x.derivatives(3.0, 2) == [3.0, 1.0, 0.0]

    def test_rational_combination(self):
        x = Smooth.x()
        f = (1.0 + x * x) / (2.0 - x)
        x0 = 0.5
        h = 1e-6
        numeric = (f(x0 + h) - f(x0 - h)) / (2 * h)
        assert f.derivatives(x0, 1)[1] == pytest.approx(numeric, rel=1e-8)

    def test_exp_composition(self):
        x = Smooth.x()
        g = (x * x).exp()
        x0 = 0.7
        want = 2 * x0 * math.exp(x0**2)
        assert g.derivatives(x0, 1)[1] == pytest.approx(want, rel=1e-13)

    def test_polynomial_factory(self):
        p = polynomial([1.0, -2.0, 3.0])
        assert p(2.0) == pytest.approx(9.0)
        assert p.derivatives(2.0, 2) == pytest.approx([9.0, 10.0, 6.0])


class TestProviderAdapter:
    def test_weight_profile_is_a_provider(self):
        from berglab.weights import parse_weight

        jet = jet_from_provider(parse_weight("poly:1,0,-1"), 0.5, 2)
        assert jet.derivative_list() == pytest.approx([0.75, -1.0, -2.0])
