"""Cauchy primitives: pointwise values, inverses, and likelihood-ratio ties."""

import numpy as np
import pytest

from cauchyprod import (
    CauchyParams,
    InputError,
    cdf,
    density,
    quantile,
    rn_additive,
    rn_multiplicative,
    sample,
    standardize,
)
from cauchyprod.quadrature import integrate_real_line

STD = CauchyParams(0.0, 1.0)


class TestConstruction:
    def test_scale_must_be_positive(self):
        with pytest.raises(InputError):
            CauchyParams(0.0, 0.0)
        with pytest.raises(InputError):
            CauchyParams(0.0, -1.0)

    def test_non_finite_rejected(self):
        with pytest.raises(InputError):
            CauchyParams(np.nan, 1.0)
        with pytest.raises(InputError):
            CauchyParams(0.0, np.inf)


class TestDensity:
    def test_peak_values(self):
        assert density(STD, 0.0) == pytest.approx(1.0 / np.pi, abs=1e-15)
        assert density(CauchyParams(2.0, 3.0), 2.0) == pytest.approx(1.0 / (3.0 * np.pi), abs=1e-15)

    def test_unit_offset(self):
        assert density(STD, 1.0) == pytest.approx(1.0 / (2.0 * np.pi), abs=1e-15)

    def test_rejects_non_finite_x(self):
        with pytest.raises(InputError):
            density(STD, np.inf)

    @pytest.mark.parametrize(
        "loc,scale", [(0.0, 1.0), (2.0, 3.0), (-5.0, 0.25), (100.0, 1e3), (0.0, 1e-3)]
    )
    def test_integrates_to_one(self, loc, scale):
        params = CauchyParams(loc, scale)
        res = integrate_real_line(lambda x: density(params, x), tol=1e-12)
        assert abs(res.value - 1.0) < 1e-10

    def test_positive_everywhere(self):
        x = np.linspace(-1e6, 1e6, 1001)
        assert np.all(density(CauchyParams(3.0, 0.5), x) > 0.0)


class TestCdfQuantile:
    def test_cdf_anchors(self):
        assert cdf(STD, 0.0) == pytest.approx(0.5, abs=1e-15)
        assert cdf(STD, 1.0) == pytest.approx(0.75, abs=1e-15)
        assert cdf(CauchyParams(5.0, 2.0), 3.0) == pytest.approx(0.25, abs=1e-15)

    def test_quantile_anchors(self):
        assert quantile(STD, 0.5) == pytest.approx(0.0, abs=1e-15)
        assert quantile(STD, 0.75) == pytest.approx(1.0, rel=1e-15)
        assert quantile(CauchyParams(3.0, 2.0), 0.25) == pytest.approx(1.0, rel=1e-14)

    def test_quantile_domain(self):
        for u in (0.0, 1.0, -0.1, 1.5):
            with pytest.raises(InputError):
                quantile(STD, u)

    @pytest.mark.parametrize("loc,scale", [(0.0, 1.0), (2.0, 3.0), (-1.0, 0.1)])
    def test_quantile_inverts_cdf(self, loc, scale):
        params = CauchyParams(loc, scale)
        y = np.concatenate([-np.logspace(3, -3, 40), [0.0], np.logspace(-3, 3, 40)])
        x = loc + scale * y
        back = quantile(params, cdf(params, x))
        np.testing.assert_allclose(back, x, rtol=1e-9, atol=1e-12 * scale)

    def test_cdf_strictly_increasing(self):
        x = np.linspace(-50.0, 50.0, 2001)
        assert np.all(np.diff(cdf(STD, x)) > 0.0)


class TestSample:
    def test_first_draw_is_quantile_of_first_uniform(self):
        rng = np.random.default_rng(1234)
        u1 = np.random.default_rng(1234).random()
        assert sample(STD, rng) == quantile(STD, u1)

    def test_median_of_seeded_stream(self):
        rng = np.random.default_rng(987654321)
        draws = sample(STD, rng, size=10**5)
        assert abs(np.median(draws)) < 0.02

    def test_interquartile_mass(self):
        params = CauchyParams(2.0, 3.0)
        rng = np.random.default_rng(24680)
        draws = sample(params, rng, size=10**5)
        frac = np.mean((draws >= -1.0) & (draws <= 5.0))
        assert abs(frac - 0.5) < 0.01


class TestStandardize:
    def test_anchors(self):
        assert standardize(CauchyParams(2.0, 3.0), 2.0) == 0.0
        assert standardize(STD, 7.0) == 7.0
        assert standardize(CauchyParams(1.0, 2.0), 5.0) == 2.0


class TestRadonNikodym:
    def test_additive_anchors(self):
        x = np.linspace(-5, 5, 11)
        np.testing.assert_array_equal(rn_additive(STD, 0.0, x), np.ones_like(x))
        assert rn_additive(STD, 1.0, 0.0) == pytest.approx(0.5, abs=1e-15)
        assert rn_additive(STD, 1.0, 1.0) == pytest.approx(2.0, abs=1e-15)

    def test_multiplicative_anchors(self):
        x = np.linspace(-5, 5, 11)
        np.testing.assert_array_equal(rn_multiplicative(STD, 1.0, x), np.ones_like(x))
        assert rn_multiplicative(STD, 2.0, 0.0) == pytest.approx(0.5, abs=1e-15)
        # limit x -> infinity is sigma
        assert rn_multiplicative(STD, 2.0, 1e12) == pytest.approx(2.0, rel=1e-9)

    def test_multiplicative_domain(self):
        with pytest.raises(InputError):
            rn_multiplicative(STD, 0.0, 1.0)
        with pytest.raises(InputError):
            rn_multiplicative(STD, -2.0, 1.0)

    @pytest.mark.parametrize("loc,scale,h", [(0.0, 1.0, 0.7), (2.0, 3.0, -1.3), (-4.0, 0.5, 2.0)])
    def test_additive_matches_density_ratio(self, loc, scale, h):
        params = CauchyParams(loc, scale)
        shifted = CauchyParams(loc + h, scale)
        x = np.linspace(loc - 20 * scale, loc + 20 * scale, 101)
        ratio = density(shifted, x) / density(params, x)
        np.testing.assert_allclose(rn_additive(params, h, x), ratio, rtol=1e-12)

    @pytest.mark.parametrize("loc,scale,sig", [(0.0, 1.0, 2.0), (2.0, 3.0, 0.4), (-4.0, 0.5, 5.0)])
    def test_multiplicative_matches_density_ratio(self, loc, scale, sig):
        params = CauchyParams(loc, scale)
        dilated = CauchyParams(loc, sig * scale)
        x = np.linspace(loc - 20 * scale, loc + 20 * scale, 101)
        ratio = density(dilated, x) / density(params, x)
        np.testing.assert_allclose(rn_multiplicative(params, sig, x), ratio, rtol=1e-12)

    @pytest.mark.parametrize("scale", [0.5, 1.0, 2.0, 1024.0])
    def test_scale_covariance_exact_for_pow2_scales(self, scale):
        # shift/scale enter only through (y, zeta); with power-of-two scales
        # every intermediate rounds identically, so equality is bitwise
        params = CauchyParams(1.75, scale)
        h = 0.3
        x = np.linspace(-7.0, 9.0, 57)
        y = standardize(params, x)
        zeta = h / scale
        np.testing.assert_array_equal(
            rn_additive(params, h, x), rn_additive(STD, zeta, y)
        )

    def test_scale_covariance_general(self):
        params = CauchyParams(-2.0, 3.7)
        h = 1.1
        x = np.linspace(-30.0, 30.0, 101)
        lhs = rn_additive(params, h, x)
        rhs = rn_additive(STD, h / 3.7, standardize(params, x))
        np.testing.assert_allclose(lhs, rhs, rtol=1e-13)

    def test_sqrt_ratio_bounded(self):
        # finite sup over a wide grid plus the analytic limits at +-infinity
        y = np.concatenate([-np.logspace(12, -12, 300), [0.0], np.logspace(-12, 12, 300)])
        for h in (0.5, 3.0, -7.0):
            vals = np.sqrt(rn_additive(STD, h, y))
            assert np.all(np.isfinite(vals))
            assert abs(rn_additive(STD, h, 1e300) - 1.0) < 1e-6
        for sig in (0.1, 2.0, 50.0):
            vals = np.sqrt(rn_multiplicative(STD, sig, y))
            assert np.all(np.isfinite(vals))
            assert abs(rn_multiplicative(STD, sig, 1e300) - sig) < 1e-6 * sig
