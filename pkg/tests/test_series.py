"""Power series, zonal dimensions, and the dual-path coefficient transforms."""

import math
import random
from fractions import Fraction

import pytest

from berglab.errors import NoDecay
from berglab.series import (
    TruncatedPowerSeries,
    harm_coeff_transform,
    harm_transform_by_calculus,
    holo_coeff_transform,
    holo_transform_by_calculus,
    series_eval_with_tail,
    zonal_dimension,
)


class TestZonalDimension:
    def test_constants(self):
        assert zonal_dimension(0, 5) == 1

    def test_known_values(self):
        assert zonal_dimension(2, 3) == 5
        assert zonal_dimension(2, 4) == 9
        assert zonal_dimension(1, 3) == 3

    def test_planar_limit(self):
        assert zonal_dimension(0, 2) == 1
        assert all(zonal_dimension(k, 2) == 2 for k in range(1, 10))

    def test_addition_recurrence(self):
        for n in range(2, 9):
            for k in range(21):
                assert zonal_dimension(k, n) == zonal_dimension(k, n - 1) + zonal_dimension(k - 1, n)


class TestSeriesEval:
    def test_single_coefficient(self):
        got = series_eval_with_tail(TruncatedPowerSeries((1.0,)), 0.5)
        assert got.value == 1.0
        assert got.tail_bound == 0.0
        assert got.terms_used == 1

    def test_geometric(self):
        series = TruncatedPowerSeries((1.0,) * 200)
        got = series_eval_with_tail(series, 0.5, tol=1e-12)
        assert got.value == pytest.approx(2.0, rel=1e-11)
        assert got.terms_used < 200

    def test_exponential(self):
        series = TruncatedPowerSeries(tuple(1.0 / math.factorial(k) for k in range(40)))
        got = series_eval_with_tail(series, 1.0, tol=1e-12)
        assert got.value == pytest.approx(math.e, rel=1e-12)

    @pytest.mark.parametrize("tol", [1e-4, 1e-8, 1e-12])
    def test_tail_bound_covers_true_tail(self, tol):
        series = TruncatedPowerSeries((1.0,) * 400)
        t = 0.5
        got = series_eval_with_tail(series, t, tol=tol)
        true_tail = sum(t**k for k in range(got.terms_used, 400))
        assert got.tail_bound >= true_tail * (1.0 - 1e-12)

    def test_no_decay(self):
        series = TruncatedPowerSeries(tuple(float(2**k) for k in range(30)))
        with pytest.raises(NoDecay):
            series_eval_with_tail(series, 1.0)


class TestHoloTransform:
    def test_constant(self):
        got = holo_coeff_transform(TruncatedPowerSeries((1,)), 2)
        assert got == TruncatedPowerSeries((1,))

    def test_linear(self):
        got = holo_coeff_transform(TruncatedPowerSeries((0, 1)), 2)
        assert got == TruncatedPowerSeries((0, 2))

    def test_quadratic(self):
        got = holo_coeff_transform(TruncatedPowerSeries((0, 0, 1)), 2)
        assert got == TruncatedPowerSeries((0, 0, 3))

    def test_calculus_route_matches(self):
        series = TruncatedPowerSeries((Fraction(2), Fraction(-1), Fraction(5)))
        for m in (1, 2, 3, 4):
            assert holo_coeff_transform(series, m) == holo_transform_by_calculus(series, m)


class TestHarmTransform:
    def test_constant_n3(self):
        assert harm_coeff_transform(TruncatedPowerSeries((1,)), 3) == TruncatedPowerSeries((1,))
        assert harm_transform_by_calculus(TruncatedPowerSeries((1,)), 3) == TruncatedPowerSeries((1,))

    def test_linear_n3(self):
        got = harm_transform_by_calculus(TruncatedPowerSeries((0, 1)), 3)
        assert got == TruncatedPowerSeries((0, 3))

    def test_quadratic_n4(self):
        got = harm_transform_by_calculus(TruncatedPowerSeries((0, 0, 1)), 4)
        assert got == TruncatedPowerSeries((0, 0, 9))

    def test_planar_direct(self):
        got = harm_coeff_transform(TruncatedPowerSeries((1, 1, 1)), 2)
        assert got == TruncatedPowerSeries((1, 2, 2))


class TestDualPathAgreement:
    def test_exact_rational_mode(self):
        rng = random.Random(991)
        for _ in range(50):
            degree = rng.randint(0, 12)
            series = TruncatedPowerSeries(
                tuple(Fraction(rng.randint(-9, 9)) for _ in range(degree + 1))
            )
            for m in (1, 2, 3, 4):
                assert holo_coeff_transform(series, m) == holo_transform_by_calculus(series, m)
            for n in (3, 4, 5, 6):
                assert harm_coeff_transform(series, n) == harm_transform_by_calculus(series, n)

    def test_float_mode_close(self):
        rng = random.Random(17)
        for _ in range(50):
            degree = rng.randint(0, 12)
            series = TruncatedPowerSeries(
                tuple(float(rng.randint(-9, 9)) for _ in range(degree + 1))
            )
            for n in (3, 4, 5, 6):
                a = harm_coeff_transform(series, n).coefficients
                b = harm_transform_by_calculus(series, n).coefficients
                width = max(len(a), len(b))
                for i in range(width):
                    x = a[i] if i < len(a) else 0.0
                    y = b[i] if i < len(b) else 0.0
                    assert x == pytest.approx(y, rel=1e-13, abs=1e-13)
