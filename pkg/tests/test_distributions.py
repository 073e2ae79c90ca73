"""Null-law checks against independent oracles.

* ``series_oracle`` evaluates the finite Poisson series in 50-digit mpmath;
* ``integral_oracle`` integrates the chi-square density by quadrature;
* quantiles are checked against plain bisection on the oracle.
"""

import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from cyclodetect import DomainError
from cyclodetect.distributions import (
    chi2_cdf_even,
    chi2_quantile_even,
    chi2_sf_even,
    max_cdf,
    max_pdf,
    max_quantile,
    max_sf,
)

mpmath.mp.dps = 50


def series_oracle(x, dof):
    h = mpmath.mpf(x) / 2
    n_half = dof // 2
    return float(1 - mpmath.e ** (-h) * mpmath.fsum(h**n / mpmath.factorial(n) for n in range(n_half)))


def integral_oracle(x, dof):
    k = dof / 2
    pdf = lambda u: u ** (k - 1) * math.exp(-u / 2) / (2**k * math.gamma(k))  # noqa: E731
    return quad(pdf, 0, x, epsabs=1e-13, epsrel=1e-13, limit=200)[0]


def bisect(fn, target, lo=0.0, hi=200.0, tol=1e-12):
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        lo, hi = (mid, hi) if fn(mid) < target else (lo, mid)
    return 0.5 * (lo + hi)


def literal_max_pdf(x, dof, d):
    """Density written term by term as the derivative of the max CDF."""
    h = mpmath.mpf(x) / 2
    n_half = dof // 2
    first = mpmath.fsum(h**n / mpmath.factorial(n) for n in range(n_half))
    second = mpmath.fsum(h ** (n - 1) / mpmath.factorial(n - 1) for n in range(1, n_half))
    cdf = 1 - mpmath.e ** (-h) * first
    return float(mpmath.mpf(d) / 2 * cdf ** (d - 1) * mpmath.e ** (-h) * (first - second))


class TestChi2Cdf:
    @pytest.mark.parametrize("dof", [2, 4, 8, 20, 40])
    def test_matches_series_oracle(self, dof):
        xs = np.linspace(0, 100, 201)
        got = chi2_cdf_even(xs, dof)
        want = np.array([series_oracle(x, dof) for x in xs])
        np.testing.assert_allclose(got, want, atol=1e-10, rtol=0)

    @pytest.mark.parametrize("dof", [2, 4, 8, 20])
    def test_matches_quadrature(self, dof):
        for x in [0.3, 2.0, 7.5, 19.0, 42.0]:
            assert chi2_cdf_even(x, dof) == pytest.approx(integral_oracle(x, dof), abs=1e-10)

    def test_zero(self):
        for dof in (2, 4, 40):
            assert chi2_cdf_even(0.0, dof) == 0.0

    def test_dof2_closed_form(self):
        assert chi2_cdf_even(2 * math.log(20), 2) == pytest.approx(0.95, abs=1e-14)

    def test_dof4_95_percent(self):
        assert chi2_cdf_even(9.4877, 4) == pytest.approx(0.95, abs=1e-4)

    def test_large_x_limit(self):
        assert chi2_cdf_even(1e4, 8) == 1.0

    def test_survival_tail_has_no_cancellation(self):
        # the mpmath series gives ~ exp(-250) * poly; far below double epsilon of 1 - cdf
        want = mpmath.e ** (-250) * mpmath.fsum(mpmath.mpf(250) ** n / mpmath.factorial(n) for n in range(4))
        assert chi2_sf_even(500.0, 8) == pytest.approx(float(want), rel=1e-10)

    def test_lower_tail_relative_accuracy(self):
        want = series_oracle(1e-3, 40)
        h = mpmath.mpf(1e-3) / 2
        exact = mpmath.fsum(mpmath.e ** (-h) * h**n / mpmath.factorial(n) for n in range(20, 60))
        assert chi2_cdf_even(1e-3, 40) == pytest.approx(float(exact), rel=1e-10)
        assert want == pytest.approx(0.0, abs=1e-15)

    @pytest.mark.parametrize("bad", [(-1.0, 4), (1.0, 3), (1.0, 0), (1.0, 2.5), (float("nan"), 2)])
    def test_domain_errors(self, bad):
        with pytest.raises(DomainError):
            chi2_cdf_even(*bad)

    @given(st.floats(0, 300), st.floats(0, 300), st.sampled_from([2, 4, 6, 20, 40]))
    def test_monotone(self, a, b, dof):
        lo, hi = sorted((a, b))
        assert chi2_cdf_even(lo, dof) <= chi2_cdf_even(hi, dof)


class TestMaxLaw:
    def test_d1_equals_chi2(self):
        xs = np.linspace(0, 80, 321)
        for dof in (2, 4, 8, 20):
            np.testing.assert_allclose(max_cdf(xs, dof, 1), chi2_cdf_even(xs, dof), atol=1e-12, rtol=0)

    def test_squared_95(self):
        assert max_cdf(5.9915, 2, 2) == pytest.approx(0.9025, abs=1e-5)
        assert max_cdf(2 * math.log(20), 2, 2) == pytest.approx(0.9025, abs=1e-14)

    def test_zero(self):
        for d in (1, 2, 5):
            assert max_cdf(0.0, 4, d) == 0.0

    def test_pdf_dof2_d1(self):
        xs = np.linspace(0, 30, 61)
        np.testing.assert_allclose(max_pdf(xs, 2, 1), 0.5 * np.exp(-xs / 2), rtol=1e-13, atol=0)

    @pytest.mark.parametrize("dof,d", [(4, 3), (2, 1), (8, 2), (20, 5)])
    def test_pdf_integrates_to_one(self, dof, d):
        total = quad(lambda u: max_pdf(u, dof, d), 0, 200, epsabs=1e-12, epsrel=1e-12, limit=400)[0]
        assert total == pytest.approx(1.0, abs=1e-6)

    @pytest.mark.parametrize("dof,d", [(4, 3), (2, 2), (8, 1), (20, 4)])
    def test_pdf_matches_finite_difference(self, dof, d):
        step = 1e-4
        for x in np.linspace(0.05, 60, 120):
            fd = (max_cdf(x + step, dof, d) - max_cdf(x - step, dof, d)) / (2 * step)
            assert max_pdf(x, dof, d) == pytest.approx(fd, abs=1e-6)

    @pytest.mark.parametrize("dof,d", [(4, 3), (6, 2), (40, 2)])
    def test_pdf_matches_term_by_term_derivative(self, dof, d):
        for x in np.linspace(0.0, 50, 26):
            assert max_pdf(x, dof, d) == pytest.approx(literal_max_pdf(x, dof, d), rel=1e-11, abs=1e-300)

    @given(st.floats(0, 100), st.integers(1, 6), st.sampled_from([2, 4, 8]))
    def test_nonincreasing_in_d(self, x, d, dof):
        assert max_cdf(x, dof, d + 1) <= max_cdf(x, dof, d)

    def test_sf_complements_cdf(self):
        xs = np.linspace(0, 40, 41)
        np.testing.assert_allclose(max_sf(xs, 4, 3) + max_cdf(xs, 4, 3), 1.0, atol=1e-14)

    def test_invalid_count(self):
        with pytest.raises(DomainError):
            max_cdf(1.0, 4, 0)


class TestQuantile:
    def test_dof2(self):
        assert chi2_quantile_even(0.95, 2) == pytest.approx(-2 * math.log(0.05), abs=1e-6)
        assert chi2_quantile_even(0.95, 2) == pytest.approx(5.9915, abs=1e-4)

    def test_dof4_against_bisection_oracle(self):
        oracle = bisect(lambda x: series_oracle(x, 4), 0.95)
        # the oracle itself agrees with quadrature of the density
        assert integral_oracle(oracle, 4) == pytest.approx(0.95, abs=1e-10)
        assert chi2_quantile_even(0.95, 4) == pytest.approx(oracle, abs=1e-8)
        assert chi2_quantile_even(0.95, 4) == pytest.approx(9.4877, abs=1e-3)

    @pytest.mark.parametrize("dof", [2, 4, 8, 20, 40])
    def test_round_trip(self, dof):
        for p in np.arange(0.01, 1.0, 0.01):
            assert chi2_cdf_even(chi2_quantile_even(p, dof), dof) == pytest.approx(p, abs=1e-9)

    def test_strictly_increasing(self):
        qs = [chi2_quantile_even(p, 8) for p in np.linspace(0.001, 0.999, 50)]
        assert np.all(np.diff(qs) > 0)

    def test_extreme_upper(self):
        x = chi2_quantile_even(1 - 1e-12, 4)
        assert chi2_sf_even(x, 4) == pytest.approx(1e-12, rel=1e-6)

    @pytest.mark.parametrize("p", [0.0, 1.0, -0.1, 1.5])
    def test_out_of_range(self, p):
        with pytest.raises(DomainError):
            chi2_quantile_even(p, 4)

    def test_max_quantile_inverts(self):
        x = max_quantile(0.95, 4, 2)
        assert max_cdf(x, 4, 2) == pytest.approx(0.95, abs=1e-12)

    @settings(max_examples=50)
    @given(st.floats(1e-6, 1 - 1e-6), st.sampled_from([2, 4, 8, 20]))
    def test_round_trip_property(self, p, dof):
        assert chi2_cdf_even(chi2_quantile_even(p, dof), dof) == pytest.approx(p, abs=1e-9)
