import math

import numpy as np
import pytest

from cyclodetect import ConfigurationError
from cyclodetect.signal_model import (
    ChannelParams,
    OfdmParams,
    apply_awgn,
    draw_shadowed_snrs,
    generate_ofdm,
    generate_qam_symbols,
    noise_variance,
    qam_constellation,
)


def rng(seed=0):
    return np.random.default_rng(seed)


class TestQam:
    def test_qpsk_unit_energy(self):
        s = generate_qam_symbols(4, 4, rng())
        assert s.shape == (4,)
        np.testing.assert_allclose(np.abs(s) ** 2, 1.0)
        np.testing.assert_allclose(np.abs(s.real), 1 / math.sqrt(2))
        np.testing.assert_allclose(np.abs(s.imag), 1 / math.sqrt(2))

    def test_16qam_average_power(self):
        s = generate_qam_symbols(100_000, 16, rng(1))
        assert abs(np.mean(np.abs(s) ** 2) - 1.0) < 0.01

    @pytest.mark.parametrize("order", [4, 16, 64, 256])
    def test_constellation_exact_unit_energy(self, order):
        pts = qam_constellation(order)
        assert pts.size == order
        assert np.mean(np.abs(pts) ** 2) == pytest.approx(1.0, abs=1e-12)

    @pytest.mark.parametrize("order", [15, 2, 1, 0, 8])
    def test_invalid_order(self, order):
        with pytest.raises(ConfigurationError):
            generate_qam_symbols(1, order, rng())


class TestOfdm:
    def test_paper_length(self):
        x = generate_ofdm(OfdmParams(32, 32, 8, 16, 100), rng())
        assert x.shape == (4000,)

    @pytest.mark.parametrize(
        "params", [OfdmParams(), OfdmParams(12, 16, 4, 4, 7), OfdmParams(64, 64, 16, 64, 3), OfdmParams(5, 8, 0, 4, 2)]
    )
    def test_cyclic_prefix_equals_tail(self, params):
        x = generate_ofdm(params, rng(3)).reshape(params.num_symbols, params.symbol_len)
        cp, td = params.cp_len, params.useful_len
        np.testing.assert_array_equal(x[:, :cp], x[:, cp + td - cp :])

    def test_single_subcarrier_constant_magnitude(self):
        x = generate_ofdm(OfdmParams(1, 4, 1, 4, 1), rng(7))
        assert x.shape == (5,)
        np.testing.assert_allclose(np.abs(x), np.abs(x[0]))

    def test_unit_power(self):
        x = generate_ofdm(OfdmParams(), rng(11))
        assert abs(np.mean(np.abs(x) ** 2) - 1.0) <= 0.05

    def test_reproducible(self):
        a = generate_ofdm(OfdmParams(), rng(5))
        b = generate_ofdm(OfdmParams(), rng(5))
        assert a.tobytes() == b.tobytes()

    def test_symbol_len_derived(self):
        p = OfdmParams(32, 32, 8)
        assert p.symbol_len == 40

    @pytest.mark.parametrize(
        "kwargs",
        [dict(num_subcarriers=40, useful_len=32), dict(qam_order=12), dict(cp_len=-1), dict(num_symbols=0)],
    )
    def test_invalid_params(self, kwargs):
        with pytest.raises(ConfigurationError):
            OfdmParams(**kwargs)


class TestAwgn:
    def test_infinite_snr_is_identity(self):
        x = generate_ofdm(OfdmParams(num_symbols=3), rng())
        y = apply_awgn(x, math.inf, rng(1))
        np.testing.assert_array_equal(x, y)

    def test_noise_power_zero_db(self):
        y = apply_awgn(np.zeros(100_000, complex), 0.0, rng(2))
        assert abs(np.mean(np.abs(y) ** 2) - 1.0) < 0.05

    def test_noise_variance_minus_7db(self):
        assert noise_variance(-7.0) == pytest.approx(10**0.7, rel=1e-12)
        assert noise_variance(-7.0) == pytest.approx(5.0119, abs=1e-4)

    def test_quadrature_components_split_variance(self):
        y = apply_awgn(np.zeros(100_000, complex), -7.0, rng(3))
        var = noise_variance(-7.0)
        assert np.var(y.real) == pytest.approx(var / 2, rel=0.05)
        assert np.var(y.imag) == pytest.approx(var / 2, rel=0.05)

    def test_length_preserved_and_reproducible(self):
        x = np.ones(17, complex)
        a = apply_awgn(x, 3.0, rng(9))
        b = apply_awgn(x, 3.0, rng(9))
        assert a.shape == x.shape
        assert a.tobytes() == b.tobytes()


class TestShadowing:
    def test_degenerate(self):
        snrs = draw_shadowed_snrs(ChannelParams(shadow_mean_db=-9, shadow_std_db=0), 5, rng())
        np.testing.assert_array_equal(snrs, [-9.0] * 5)

    def test_moments(self):
        snrs = draw_shadowed_snrs(ChannelParams(shadow_mean_db=-9, shadow_std_db=10), 100_000, rng(4))
        assert abs(snrs.mean() + 9) < 0.1
        assert abs(snrs.std() - 10) < 0.15

    def test_single_user(self):
        assert draw_shadowed_snrs(ChannelParams(), 1, rng()).shape == (1,)

    def test_negative_std_rejected(self):
        with pytest.raises(ConfigurationError):
            ChannelParams(shadow_std_db=-1)
