"""Fusion-center rules combining local statistics from K secondary users.

Local GLRT statistics are combined by summation (the log-domain form of
multiplying generalized likelihood ratios); sums of independent chi-square
statistics stay chi-square with the dof added up.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .detectors import CyclicStatistic, StatisticKind
from .distributions import chi2_quantile_even
from .errors import ConfigurationError, DomainError


class FusionRule(str, enum.Enum):
    SUM_SINGLE = "sum_single"
    MULTI_MAX = "multi_max"
    MULTI_SUM = "multi_sum"
    BINARY_COUNT = "binary_count"


@dataclass(frozen=True)
class QuantizerSpec:
    """Uniform mid-rise quantizer over ``[0, clip_max]``; ``num_bits=None`` reports exactly."""

    num_bits: int | None = None
    clip_max: float = 1.0

    def __post_init__(self):
        if self.num_bits is not None and int(self.num_bits) < 1:
            raise ConfigurationError("num_bits must be >= 1 (or None for exact reporting)")
        if not self.clip_max > 0:
            raise ConfigurationError("clip_max must be positive")

    @property
    def exact(self) -> bool:
        return self.num_bits is None

    @classmethod
    def for_dof(cls, dof: int, num_bits: int | None = 8, coverage: float = 0.9999) -> "QuantizerSpec":
        """Default quantizer saturating at the ``coverage`` quantile of chi-square(``dof``)."""
        return cls(num_bits=num_bits, clip_max=chi2_quantile_even(coverage, dof))


def quantize_statistic(value, spec: QuantizerSpec):
    """Map a nonnegative statistic to the nearest level center (identity in exact mode)."""
    arr = np.asarray(value, dtype=float)
    if np.any(arr < 0):
        raise DomainError("statistics must be nonnegative")
    if spec.exact:
        out = arr.copy()
    else:
        levels = 2 ** int(spec.num_bits)
        step = spec.clip_max / levels
        index = np.clip(np.floor(arr / step), 0, levels - 1)
        out = (index + 0.5) * step
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True, eq=False)
class FusionReport:
    per_user_stats: np.ndarray
    fused: CyclicStatistic
    rule: FusionRule

    def __post_init__(self):
        stats = np.asarray(self.per_user_stats, dtype=float)
        if stats.ndim != 2:
            raise DomainError("per-user statistics must be a K x N_alpha matrix")
        object.__setattr__(self, "per_user_stats", stats)

    @property
    def num_users(self) -> int:
        return self.per_user_stats.shape[0]


def _user_matrix(per_user_per_freq) -> np.ndarray:
    stats = np.asarray(per_user_per_freq, dtype=float)
    if stats.ndim == 1:
        stats = stats[:, None]
    if stats.ndim != 2 or stats.size == 0:
        raise DomainError(f"expected a nonempty K x N_alpha matrix, got shape {stats.shape}")
    if not np.all(np.isfinite(stats)) or np.any(stats < 0):
        raise DomainError("local statistics must be finite and nonnegative")
    return stats


def fuse_single_cycle(stats: Sequence[float], dof_per_user: int) -> CyclicStatistic:
    """Sum of the users' single-cycle statistics, null law chi-square(``K * dof_per_user``)."""
    values = _user_matrix(stats)
    if values.shape[1] != 1:
        raise DomainError("single-cycle fusion takes one statistic per user")
    k = values.shape[0]
    return CyclicStatistic(
        value=float(values.sum()),
        dof=dof_per_user * k,
        kind=StatisticKind.SINGLE_CYCLE,
        num_users=k,
    )


def fuse_multicycle(per_user_per_freq, mode: str, dof_per_user: int) -> CyclicStatistic:
    """Fuse a ``K x N_alpha`` matrix of local statistics.

    ``mode="max"`` sums over users then maximizes over frequencies, with null
    law ``max_cdf(., K * dof_per_user, N_alpha)``; ``mode="sum"`` takes the
    grand total with chi-square(``K * N_alpha * dof_per_user``).
    """
    stats = _user_matrix(per_user_per_freq)
    k, n_freqs = stats.shape
    per_freq = stats.sum(axis=0)
    if mode == "max":
        return CyclicStatistic(
            value=float(per_freq.max()),
            dof=dof_per_user * k,
            kind=StatisticKind.MULTI_MAX,
            num_freqs=n_freqs,
            num_users=k,
        )
    if mode == "sum":
        return CyclicStatistic(
            value=float(per_freq.sum()),
            dof=dof_per_user * k * n_freqs,
            kind=StatisticKind.MULTI_SUM,
            num_freqs=n_freqs,
            num_users=k,
        )
    raise ConfigurationError(f"fusion mode must be 'max' or 'sum', got {mode!r}")


def fuse_binary(decisions: Sequence[bool], min_votes: int) -> bool:
    """Counting rule: declare presence when at least ``min_votes`` users do."""
    decisions = list(decisions)
    if not 1 <= min_votes <= len(decisions):
        raise ConfigurationError(f"min_votes must lie in [1, {len(decisions)}], got {min_votes}")
    return sum(bool(d) for d in decisions) >= min_votes
