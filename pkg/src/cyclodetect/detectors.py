"""GLRT statistics for cyclostationarity at one or several cyclic frequencies."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .distributions import chi2_cdf_even, chi2_sf_even, max_cdf, max_sf
from .errors import ConfigurationError, DomainError
from .estimation import (
    CyclicFeatureVector,
    CyclicFrequencySet,
    FeatureCovariance,
    LagSet,
    SmootherSpec,
    cyclic_features,
)

RIDGE_CONDITION = 1e12
RIDGE_SCALE = 1e-8


class StatisticKind(str, enum.Enum):
    SINGLE_CYCLE = "single_cycle"
    MULTI_MAX = "multi_max"
    MULTI_SUM = "multi_sum"


@dataclass(frozen=True)
class CyclicStatistic:
    """A test statistic with its asymptotic null law and p-value.

    ``dof`` is the chi-square dof of the null law (for ``multi_max`` the dof
    of each maximized term) and ``num_freqs`` the number of maximized terms.
    """

    value: float
    dof: int
    kind: StatisticKind
    num_freqs: int = 1
    num_users: int = 1
    p_value: float = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        if not np.isfinite(self.value) or self.value < 0:
            raise DomainError(f"statistic value must be finite and nonnegative, got {self.value}")
        object.__setattr__(self, "kind", StatisticKind(self.kind))
        if self.p_value is None:
            object.__setattr__(self, "p_value", null_sf(self.value, self.dof, self.kind, self.num_freqs))

    def null_cdf(self) -> float:
        if self.kind is StatisticKind.MULTI_MAX:
            return max_cdf(self.value, self.dof, self.num_freqs)
        return chi2_cdf_even(self.value, self.dof)


def null_sf(value, dof: int, kind: StatisticKind | str, num_freqs: int = 1):
    """P-value(s) of ``value`` under the asymptotic null law of ``kind``."""
    if StatisticKind(kind) is StatisticKind.MULTI_MAX:
        return max_sf(value, dof, num_freqs)
    return chi2_sf_even(value, dof)


@dataclass(frozen=True)
class DetectorSpec:
    freq_set: CyclicFrequencySet
    lag_set: LagSet
    smoother: SmootherSpec
    false_alarm_rate: float = 0.05
    statistic_kind: StatisticKind = StatisticKind.MULTI_SUM

    def __post_init__(self):
        if not 0.0 < self.false_alarm_rate < 1.0:
            raise ConfigurationError(f"false_alarm_rate must lie in (0, 1), got {self.false_alarm_rate}")
        object.__setattr__(self, "statistic_kind", StatisticKind(self.statistic_kind))

    @property
    def features_dof(self) -> int:
        return 2 * len(self.lag_set)


def quadratic_forms(r: np.ndarray, sigma: np.ndarray, sample_count: int) -> np.ndarray:
    """``M r Sigma^-1 r^T`` over any leading batch axes.

    Systems whose 2-norm condition number exceeds ``RIDGE_CONDITION`` get a
    ridge of ``RIDGE_SCALE * trace / dim`` on the diagonal before solving.
    Slightly negative results from an indefinite estimate are clipped to 0.
    """
    r = np.asarray(r, dtype=float)
    sigma = np.asarray(sigma, dtype=float)
    if not (np.all(np.isfinite(r)) and np.all(np.isfinite(sigma))):
        raise DomainError("feature vector and covariance must be finite")
    dim = r.shape[-1]
    cond = np.linalg.cond(sigma)
    bad = ~np.isfinite(cond) | (cond > RIDGE_CONDITION)
    if np.any(bad):
        trace = np.trace(sigma, axis1=-2, axis2=-1)
        delta = np.where(bad, RIDGE_SCALE * np.abs(trace) / dim, 0.0)
        # an all-zero covariance still needs a usable ridge
        delta = np.where(bad & (delta == 0), RIDGE_SCALE, delta)
        sigma = sigma + delta[..., None, None] * np.eye(dim)
    solved = np.linalg.solve(sigma, r[..., None])[..., 0]
    values = sample_count * np.einsum("...i,...i->...", r, solved)
    return np.maximum(values, 0.0)


def single_cycle_statistic(r: CyclicFeatureVector, cov: FeatureCovariance) -> CyclicStatistic:
    """GLRT statistic ``M r Sigma^-1 r^T`` for one cyclic frequency."""
    if cov.dim != r.values.size:
        raise DomainError(f"covariance dimension {cov.dim} does not match feature length {r.values.size}")
    value = float(quadratic_forms(r.values, cov.sigma, r.sample_count))
    return CyclicStatistic(value=value, dof=r.values.size, kind=StatisticKind.SINGLE_CYCLE)


def _common_dof(per_freq: Sequence[CyclicStatistic]) -> int:
    if not per_freq:
        raise DomainError("at least one per-frequency statistic is required")
    dofs = {s.dof for s in per_freq}
    if len(dofs) != 1:
        raise DomainError(f"per-frequency statistics have mismatched dof {sorted(dofs)}")
    if any(s.kind is not StatisticKind.SINGLE_CYCLE for s in per_freq):
        raise DomainError("multicycle statistics combine single-cycle statistics only")
    return dofs.pop()


def multicycle_max(per_freq: Sequence[CyclicStatistic]) -> CyclicStatistic:
    dof = _common_dof(per_freq)
    return CyclicStatistic(
        value=max(s.value for s in per_freq),
        dof=dof,
        kind=StatisticKind.MULTI_MAX,
        num_freqs=len(per_freq),
        num_users=per_freq[0].num_users,
    )


def multicycle_sum(per_freq: Sequence[CyclicStatistic]) -> CyclicStatistic:
    dof = _common_dof(per_freq)
    return CyclicStatistic(
        value=float(sum(s.value for s in per_freq)),
        dof=dof * len(per_freq),
        kind=StatisticKind.MULTI_SUM,
        num_freqs=len(per_freq),
        num_users=per_freq[0].num_users,
    )


def per_frequency_statistics(x, spec: DetectorSpec) -> list[CyclicStatistic]:
    """Single-cycle statistics of one record at every frequency in ``spec.freq_set``."""
    x = np.asarray(x, dtype=complex)
    r, sigma = cyclic_features(x, spec.freq_set.frequencies, spec.lag_set, spec.smoother)
    values = quadratic_forms(r, sigma, x.shape[-1])
    return [
        CyclicStatistic(value=float(v), dof=spec.features_dof, kind=StatisticKind.SINGLE_CYCLE)
        for v in values
    ]


def detect(x, spec: DetectorSpec) -> CyclicStatistic:
    """Evaluate the statistic selected by ``spec.statistic_kind`` on one record.

    ``single_cycle`` uses the first frequency of the set.
    """
    per_freq = per_frequency_statistics(x, spec)
    if spec.statistic_kind is StatisticKind.SINGLE_CYCLE:
        return per_freq[0]
    if spec.statistic_kind is StatisticKind.MULTI_MAX:
        return multicycle_max(per_freq)
    return multicycle_sum(per_freq)


def decide(stat: CyclicStatistic, spec: DetectorSpec) -> bool:
    """True when H0 is rejected, i.e. the null CDF at ``stat.value`` exceeds ``1 - p``."""
    if stat.kind is not spec.statistic_kind:
        raise DomainError(f"statistic kind {stat.kind.value} does not match detector {spec.statistic_kind.value}")
    base = spec.features_dof
    if stat.kind is StatisticKind.SINGLE_CYCLE:
        expected_freqs = 1
    else:
        expected_freqs = len(spec.freq_set)
    if stat.num_freqs != expected_freqs:
        raise DomainError(f"statistic covers {stat.num_freqs} frequencies, detector expects {expected_freqs}")
    per_term = stat.dof if stat.kind is not StatisticKind.MULTI_SUM else stat.dof // max(stat.num_freqs, 1)
    if per_term % base or stat.dof % base:
        raise DomainError(f"statistic dof {stat.dof} is inconsistent with {base} features per frequency")
    return bool(stat.null_cdf() > 1.0 - spec.false_alarm_rate)
