"""Cyclic-prefix OFDM test signals, AWGN and log-normal shadowing.

All generators take an explicit ``numpy.random.Generator`` so that a caller
can key every random draw to a reproducible substream.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError


@dataclass(frozen=True)
class OfdmParams:
    """Cyclic-prefix OFDM waveform parameters, all lengths in samples."""

    num_subcarriers: int = 32
    useful_len: int = 32
    cp_len: int = 8
    qam_order: int = 16
    num_symbols: int = 100

    def __post_init__(self):
        if self.num_subcarriers < 1 or self.useful_len < 1 or self.num_symbols < 1:
            raise ConfigurationError("OFDM lengths and counts must be positive")
        if self.cp_len < 0 or self.cp_len > self.useful_len:
            raise ConfigurationError("cp_len must lie in [0, useful_len]")
        if self.num_subcarriers > self.useful_len:
            raise ConfigurationError("num_subcarriers cannot exceed useful_len")
        _check_qam_order(self.qam_order)

    @property
    def symbol_len(self) -> int:
        return self.useful_len + self.cp_len

    @property
    def num_samples(self) -> int:
        return self.num_symbols * self.symbol_len


@dataclass(frozen=True)
class ChannelParams:
    """AWGN level and per-user shadowing law, in dB."""

    snr_db: float = -7.0
    shadow_mean_db: float = -9.0
    shadow_std_db: float = 10.0

    def __post_init__(self):
        if self.shadow_std_db < 0:
            raise ConfigurationError("shadow_std_db must be nonnegative")


def _check_qam_order(order: int) -> int:
    side = math.isqrt(order) if order > 0 else 0
    if order < 4 or side * side != order:
        raise ConfigurationError(f"QAM order must be a perfect square >= 4, got {order}")
    return side


def qam_constellation(order: int) -> np.ndarray:
    """Square QAM constellation scaled to unit average energy."""
    side = _check_qam_order(order)
    levels = np.arange(-(side - 1), side, 2, dtype=float)
    points = (levels[:, None] + 1j * levels[None, :]).ravel()
    # mean |s|^2 of a square grid with odd levels is 2 (side^2 - 1) / 3
    return points / math.sqrt(2.0 * (order - 1) / 3.0)


def generate_qam_symbols(count: int, order: int, rng: np.random.Generator) -> np.ndarray:
    """Draw ``count`` i.i.d. uniform symbols from a unit-energy square QAM."""
    if count < 1:
        raise ConfigurationError("count must be >= 1")
    constellation = qam_constellation(order)
    return constellation[rng.integers(0, order, size=count)]


def generate_ofdm(params: OfdmParams, rng: np.random.Generator) -> np.ndarray:
    """Generate a baseband cyclic-prefix OFDM record with unit average power.

    Each symbol carries ``num_subcarriers`` QAM symbols on the lowest DFT
    bins of a ``useful_len``-point inverse DFT; the last ``cp_len`` samples
    are copied in front as the cyclic prefix.

    Returns:
        Complex array of length ``num_symbols * symbol_len``.
    """
    data = generate_qam_symbols(params.num_symbols * params.num_subcarriers, params.qam_order, rng)
    data = data.reshape(params.num_symbols, params.num_subcarriers)
    grid = np.zeros((params.num_symbols, params.useful_len), dtype=complex)
    grid[:, : params.num_subcarriers] = data
    # ifft carries 1/useful_len; rescale to (1/sqrt(Nc)) * sum_n c_n exp(j 2 pi n t / Td)
    body = np.fft.ifft(grid, axis=1) * (params.useful_len / math.sqrt(params.num_subcarriers))
    prefix = body[:, params.useful_len - params.cp_len :]
    return np.concatenate([prefix, body], axis=1).ravel()


def noise_variance(snr_db: float, signal_power: float = 1.0) -> float:
    """Per-sample noise variance giving ``snr_db`` for the stated signal power."""
    if math.isinf(snr_db) and snr_db > 0:
        return 0.0
    return signal_power * 10.0 ** (-snr_db / 10.0)


def complex_noise(size, rng: np.random.Generator) -> np.ndarray:
    """Unit-variance circularly-symmetric complex Gaussian samples."""
    return (rng.standard_normal(size) + 1j * rng.standard_normal(size)) / math.sqrt(2.0)


def apply_awgn(
    signal: np.ndarray,
    snr_db: float,
    rng: np.random.Generator,
    signal_power: float = 1.0,
) -> np.ndarray:
    """Add complex white Gaussian noise at ``snr_db`` relative to ``signal_power``.

    ``snr_db=inf`` returns an unchanged copy and consumes no random numbers.
    """
    signal = np.asarray(signal, dtype=complex)
    if signal.size == 0:
        raise ConfigurationError("signal must be nonempty")
    variance = noise_variance(snr_db, signal_power)
    if variance == 0.0:
        return signal.copy()
    return signal + math.sqrt(variance) * complex_noise(signal.shape, rng)


def draw_shadowed_snrs(channel: ChannelParams, num_users: int, rng: np.random.Generator) -> np.ndarray:
    """Independent Normal(shadow_mean_db, shadow_std_db^2) SNRs, one per user."""
    if num_users < 1:
        raise ConfigurationError("num_users must be >= 1")
    if channel.shadow_std_db == 0:
        return np.full(num_users, float(channel.shadow_mean_db))
    return rng.normal(channel.shadow_mean_db, channel.shadow_std_db, size=num_users)
