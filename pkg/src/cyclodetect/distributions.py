"""Closed-form null laws for even-dof chi-square statistics and their maxima.

For ``dof = 2N`` the chi-square survival function is the finite Poisson sum
``exp(-x/2) * sum_{n<N} (x/2)^n / n!``.  Terms are accumulated in the log
domain so large ``x`` neither overflows nor cancels; the CDF switches to the
complementary (upper Poisson tail) series whenever it is the smaller of the
two, which keeps both tails accurate.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.optimize import brentq
from scipy.special import gammaln, logsumexp

from .errors import DomainError


def _half_dof(dof) -> int:
    if isinstance(dof, (bool, np.bool_)) or int(dof) != dof:
        raise DomainError(f"dof must be an integer, got {dof!r}")
    dof = int(dof)
    if dof < 2 or dof % 2:
        raise DomainError(f"dof must be an even integer >= 2, got {dof}")
    return dof // 2


def _check_x(x) -> np.ndarray:
    arr = np.asarray(x, dtype=float)
    if np.any(np.isnan(arr)):
        raise DomainError("x must not be NaN")
    if np.any(arr < 0):
        raise DomainError("x must be nonnegative")
    return arr


def _log_poisson_terms(h: np.ndarray, n: np.ndarray) -> np.ndarray:
    """``log(exp(-h) h^n / n!)`` broadcast as ``h[..., None]`` against ``n``."""
    h = h[..., None]
    with np.errstate(divide="ignore", invalid="ignore"):
        log_h = np.log(h)
        terms = -h + n * log_h - gammaln(n + 1.0)
    # 0 * log(0): the n = 0 term is exp(-h) even at h = 0
    return np.where(n == 0, -h, terms)


def _log_sf(h: np.ndarray, half: int) -> np.ndarray:
    return logsumexp(_log_poisson_terms(h, np.arange(half, dtype=float)), axis=-1)


def _log_cdf_tail(h: np.ndarray, half: int) -> np.ndarray:
    """``log sum_{n >= half} Poisson(n; h)``, used only where that sum is <= 1/2 (so ``h`` ≲ half)."""
    hmax = float(np.max(h)) if h.size else 0.0
    upper = half + int(math.ceil(hmax + 12.0 * math.sqrt(hmax + 1.0) + 40.0))
    return logsumexp(_log_poisson_terms(h, np.arange(half, upper, dtype=float)), axis=-1)


def _split_tails(x, dof) -> tuple[np.ndarray, np.ndarray]:
    """Return ``(cdf, sf)`` each computed without cancellation."""
    half = _half_dof(dof)
    arr = _check_x(x)
    h = np.atleast_1d(arr / 2.0).ravel()
    sf = np.exp(_log_sf(h, half))
    cdf = 1.0 - sf
    small = sf > 0.5
    if np.any(small):
        cdf[small] = np.exp(_log_cdf_tail(h[small], half))
        sf[small] = 1.0 - cdf[small]
    cdf[h == 0] = 0.0
    sf[h == 0] = 1.0
    return cdf.reshape(arr.shape), sf.reshape(arr.shape)


def _out(value: np.ndarray, like):
    return float(value) if np.ndim(like) == 0 else value


def chi2_cdf_even(x, dof: int):
    """CDF of a chi-square law with even ``dof``; accepts scalars or arrays."""
    cdf, _ = _split_tails(x, dof)
    return _out(cdf, x)


def chi2_sf_even(x, dof: int):
    """Survival function ``1 - chi2_cdf_even``, accurate in the far upper tail."""
    _, sf = _split_tails(x, dof)
    return _out(sf, x)


def max_cdf(x, dof: int, d: int):
    """CDF of the maximum of ``d`` independent chi-square(``dof``) variables."""
    d = _check_count(d)
    cdf, _ = _split_tails(x, dof)
    return _out(cdf**d, x)


def max_sf(x, dof: int, d: int):
    """``1 - max_cdf`` evaluated as ``-expm1(d * log1p(-sf))`` to keep small p-values."""
    d = _check_count(d)
    _, sf = _split_tails(x, dof)
    with np.errstate(divide="ignore"):
        out = -np.expm1(d * np.log1p(-sf))
    return _out(out, x)


def max_pdf(x, dof: int, d: int):
    """Density of the maximum of ``d`` i.i.d. chi-square(``dof``) variables.

    The difference of the two partial Poisson sums obtained by
    differentiating the CDF telescopes to its last term, so the density is
    ``(d/2) F^(d-1) exp(-x/2) (x/2)^(N-1) / (N-1)!``.
    """
    d = _check_count(d)
    half = _half_dof(dof)
    cdf, _ = _split_tails(x, dof)
    h = np.atleast_1d(np.asarray(x, dtype=float) / 2.0).ravel()
    last = np.exp(_log_poisson_terms(h, np.array([half - 1.0]))[..., 0]).reshape(cdf.shape)
    return _out(0.5 * d * cdf ** (d - 1) * last, x)


def _check_count(d) -> int:
    if int(d) != d or int(d) < 1:
        raise DomainError(f"number of maximized statistics must be a positive integer, got {d!r}")
    return int(d)


def chi2_quantile_even(prob: float, dof: int) -> float:
    """Inverse of :func:`chi2_cdf_even` for ``0 < prob < 1``."""
    if not 0.0 < prob < 1.0:
        raise DomainError(f"prob must lie in (0, 1), got {prob}")
    half = _half_dof(dof)
    upper = 2.0 * half + 10.0
    while chi2_cdf_even(upper, dof) < prob:
        upper *= 2.0
    if prob > 0.5:
        # match on the survival side so probabilities near 1 keep resolution
        target = 1.0 - prob
        fn = lambda x: chi2_sf_even(x, dof) - target  # noqa: E731
    else:
        fn = lambda x: chi2_cdf_even(x, dof) - prob  # noqa: E731
    return brentq(fn, 0.0, upper, xtol=1e-14, rtol=4 * np.finfo(float).eps, maxiter=500)


def max_quantile(prob: float, dof: int, d: int) -> float:
    """Threshold ``x`` with ``max_cdf(x, dof, d) = prob``."""
    d = _check_count(d)
    if not 0.0 < prob < 1.0:
        raise DomainError(f"prob must lie in (0, 1), got {prob}")
    return chi2_quantile_even(prob ** (1.0 / d), dof)
