"""Cyclic autocorrelation estimates and their asymptotic covariance.

Conventions used throughout:

* time index ``t`` runs over ``0 .. M-1`` (sample ``x[t]``);
* cyclic frequencies are in cycles/sample, angular frequencies in rad/sample;
* the lag product ``f(t, tau) = x(t) x^(*)(t + tau)`` is zero wherever
  ``t + tau`` falls outside the record (truncated sum, ``1/M`` kept).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import ConfigurationError, DomainError


@dataclass(frozen=True)
class LagSet:
    """Ordered distinct lags and whether the second factor is conjugated."""

    lags: tuple[int, ...]
    conjugate: bool = True

    def __post_init__(self):
        lags = tuple(int(t) for t in self.lags)
        if not lags:
            raise ConfigurationError("lag set must be nonempty")
        if len(set(lags)) != len(lags):
            raise ConfigurationError(f"lags must be distinct, got {lags}")
        object.__setattr__(self, "lags", lags)

    def __len__(self) -> int:
        return len(self.lags)


@dataclass(frozen=True)
class CyclicFrequencySet:
    """Ordered distinct nonzero cyclic frequencies (cycles/sample)."""

    frequencies: tuple[float, ...]

    def __post_init__(self):
        freqs = tuple(float(a) for a in self.frequencies)
        if not freqs:
            raise ConfigurationError("frequency set must be nonempty")
        if any(a == 0.0 for a in freqs):
            raise ConfigurationError("cyclic frequency 0 is not a valid test frequency")
        if len(set(freqs)) != len(freqs):
            raise ConfigurationError(f"cyclic frequencies must be distinct, got {freqs}")
        object.__setattr__(self, "frequencies", freqs)

    def __len__(self) -> int:
        return len(self.frequencies)

    def __iter__(self):
        return iter(self.frequencies)


@dataclass(frozen=True, eq=False)
class SmootherSpec:
    """Odd-length spectral window, rescaled so that its values sum to its length."""

    window: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.window, dtype=float).ravel()
        if w.size % 2 == 0:
            raise ConfigurationError(f"smoothing window length must be odd, got {w.size}")
        total = w.sum()
        if not np.isfinite(total) or total <= 0:
            raise ConfigurationError("smoothing window must have a positive finite sum")
        w = w * (w.size / total)
        w.setflags(write=False)
        object.__setattr__(self, "window", w)

    @classmethod
    def kaiser(cls, length: int = 2049, beta: float = 10.0) -> "SmootherSpec":
        return cls(np.kaiser(length, beta))

    @classmethod
    def rectangular(cls, length: int) -> "SmootherSpec":
        return cls(np.ones(length))

    @property
    def length(self) -> int:
        return self.window.size

    @property
    def offsets(self) -> np.ndarray:
        half = (self.length - 1) // 2
        return np.arange(-half, half + 1)


@dataclass(frozen=True, eq=False)
class CyclicFeatureVector:
    """Real/imaginary stacking ``[Re R(tau_1..N), Im R(tau_1..N)]`` at one ``alpha``."""

    alpha: float
    values: np.ndarray
    sample_count: int
    lag_set: LagSet

    def __post_init__(self):
        if np.shape(self.values) != (2 * len(self.lag_set),):
            raise DomainError("feature vector length must be twice the number of lags")

    @property
    def complex_values(self) -> np.ndarray:
        n = len(self.lag_set)
        return self.values[:n] + 1j * self.values[n:]


@dataclass(frozen=True, eq=False)
class FeatureCovariance:
    """Real ``2N x 2N`` covariance together with the complex blocks it was built from."""

    sigma: np.ndarray
    q: np.ndarray = field(repr=False)
    q_star: np.ndarray = field(repr=False)

    @property
    def dim(self) -> int:
        return self.sigma.shape[-1]


def _as_series(x) -> np.ndarray:
    x = np.asarray(x, dtype=complex)
    if x.ndim < 1 or x.shape[-1] < 1:
        raise DomainError("series must contain at least one sample")
    return x


def _check_lag(tau: int, m: int) -> int:
    tau = int(tau)
    if abs(tau) >= m:
        raise DomainError(f"|tau|={abs(tau)} must be smaller than the record length {m}")
    return tau


def lag_product(x, tau: int, conjugate: bool = True) -> np.ndarray:
    """``x(t) x^(*)(t + tau)`` along the last axis, zero where ``t + tau`` is out of range."""
    x = _as_series(x)
    m = x.shape[-1]
    tau = _check_lag(tau, m)
    other = np.conj(x) if conjugate else x
    out = np.zeros_like(x)
    if tau >= 0:
        out[..., : m - tau] = x[..., : m - tau] * other[..., tau:]
    else:
        out[..., -tau:] = x[..., -tau:] * other[..., : m + tau]
    return out


def cyclic_periodogram_transform(x, tau: int, omega: float, conjugate: bool = True) -> complex:
    """Unnormalized DFT of the lag product at angular frequency ``omega``, by direct summation."""
    f = lag_product(x, tau, conjugate)
    t = np.arange(f.shape[-1])
    return complex(np.sum(f * np.exp(-1j * omega * t)))


def cyclic_autocorrelation(x, alpha: float, tau: int, conjugate: bool = True) -> complex:
    """Estimate ``(1/M) sum_t x(t) x^(*)(t + tau) exp(-j 2 pi alpha t)``."""
    x = _as_series(x)
    return cyclic_periodogram_transform(x, tau, 2 * np.pi * alpha, conjugate) / x.shape[-1]


def feature_vector(x, alpha: float, lag_set: LagSet) -> CyclicFeatureVector:
    x = _as_series(x)
    est = np.array([cyclic_autocorrelation(x, alpha, tau, lag_set.conjugate) for tau in lag_set.lags])
    return CyclicFeatureVector(
        alpha=float(alpha),
        values=np.concatenate([est.real, est.imag]),
        sample_count=x.shape[-1],
        lag_set=lag_set,
    )


def cyclic_periodogram_grid(x, tau: int, alpha: float, conjugate: bool = True) -> np.ndarray:
    """Evaluate the lag-product DFT at ``2 pi alpha + 2 pi k / M`` for ``k = 0..M-1``.

    The lag product is demodulated by ``alpha`` before an ``M``-point FFT, so
    every grid point is exact rather than a nearest-bin approximation. Works
    on stacked records (any leading axes).
    """
    f = lag_product(x, tau, conjugate)
    t = np.arange(f.shape[-1])
    return np.fft.fft(f * np.exp(-2j * np.pi * alpha * t), axis=-1)


def _periodogram_stack(x: np.ndarray, alphas: Sequence[float], lag_set: LagSet) -> np.ndarray:
    """Grid transforms with shape ``(..., N_alpha, N, M)``."""
    m = x.shape[-1]
    t = np.arange(m)
    products = np.stack([lag_product(x, tau, lag_set.conjugate) for tau in lag_set.lags], axis=-2)
    demod = np.exp(-2j * np.pi * np.asarray(alphas, dtype=float)[:, None] * t[None, :])
    return np.fft.fft(products[..., None, :, :] * demod[:, None, :], axis=-1)


def _smooth(grid: np.ndarray, smoother: SmootherSpec) -> tuple[np.ndarray, np.ndarray]:
    """Frequency-smoothed ``Q`` and ``Q*`` from grid transforms of shape ``(..., N, M)``."""
    m = grid.shape[-1]
    offsets = smoother.offsets
    plus = grid[..., offsets % m]
    minus = grid[..., (-offsets) % m]
    weighted = plus * smoother.window
    scale = 1.0 / (m * smoother.length)
    # Q[m, n] = sum_s W(s) F_m(w + s) F_n(w - s);  Q*[m, n] = sum_s W(s) F_m(w + s) conj(F_n(w + s))
    q = scale * (weighted @ np.swapaxes(minus, -1, -2))
    q_star = scale * (weighted @ np.swapaxes(plus, -1, -2).conj())
    return q, q_star


def smoothed_cyclic_spectra(
    x, alpha: float, lag_set: LagSet, smoother: SmootherSpec
) -> tuple[np.ndarray, np.ndarray]:
    """Frequency-smoothed cyclic periodogram estimates of ``Q`` and ``Q*``.

    Returns:
        ``(Q, Q_star)``, both complex ``N x N`` with ``N = len(lag_set)``.
    """
    x = _as_series(x)
    if x.ndim != 1:
        raise DomainError("expected a single one-dimensional record")
    for tau in lag_set.lags:
        _check_lag(tau, x.shape[-1])
    grid = _periodogram_stack(x, [alpha], lag_set)[0]
    return _smooth(grid, smoother)


def _assemble_sigma(q: np.ndarray, q_star: np.ndarray) -> np.ndarray:
    top = np.concatenate([((q + q_star) / 2).real, ((q - q_star) / 2).imag], axis=-1)
    bottom = np.concatenate([((q + q_star) / 2).imag, ((q_star - q) / 2).real], axis=-1)
    return np.concatenate([top, bottom], axis=-2)


def feature_covariance(q, q_star) -> FeatureCovariance:
    """Assemble the real block covariance of ``[Re r, Im r]`` from ``Q`` and ``Q*``."""
    q = np.asarray(q, dtype=complex)
    q_star = np.asarray(q_star, dtype=complex)
    if q.ndim != 2 or q.shape[0] != q.shape[1] or q.shape != q_star.shape:
        raise DomainError(f"Q and Q* must be equal square matrices, got {q.shape} and {q_star.shape}")
    return FeatureCovariance(sigma=_assemble_sigma(q, q_star), q=q, q_star=q_star)


def cyclic_features(
    x, alphas: Sequence[float], lag_set: LagSet, smoother: SmootherSpec
) -> tuple[np.ndarray, np.ndarray]:
    """Feature vectors and covariances for every frequency in one pass.

    ``x`` may carry leading batch axes; for ``x`` of shape ``(..., M)`` the
    result is ``r`` with shape ``(..., N_alpha, 2N)`` and ``sigma`` with shape
    ``(..., N_alpha, 2N, 2N)``.
    """
    x = _as_series(x)
    m = x.shape[-1]
    for tau in lag_set.lags:
        _check_lag(tau, m)
    grid = _periodogram_stack(x, alphas, lag_set)
    est = grid[..., 0] / m
    r = np.concatenate([est.real, est.imag], axis=-1)
    q, q_star = _smooth(grid, smoother)
    return r, _assemble_sigma(q, q_star)
