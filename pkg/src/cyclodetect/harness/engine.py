"""Seedable Monte Carlo engine for the OFDM detection experiments.

Every random draw comes from a substream keyed by
``(master_seed, trial_index, user_index, role)``, so results do not depend
on the order in which trials are executed or on the number of workers.
Within a trial all SNR grid points reuse the same OFDM realization and the
same unit-variance noise draws (scaled), which keeps Pd curves smooth.
Under H1 each trial draws a fresh OFDM realization shared by all users.
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from ..detectors import CyclicStatistic, StatisticKind, decide, quadratic_forms
from ..distributions import chi2_cdf_even, max_cdf
from ..errors import ConfigurationError, NumericalError
from ..estimation import cyclic_features
from ..fusion import fuse_binary, fuse_multicycle, fuse_single_cycle, quantize_statistic
from ..signal_model import complex_noise, draw_shadowed_snrs, generate_ofdm, noise_variance
from .config import ScenarioConfig
from .tables import ResultRow, ResultTable

BINARY_COUNT = "binary_count"


class Hypothesis(str, enum.Enum):
    H0 = "H0"
    H1 = "H1"


class Role(enum.IntEnum):
    SIGNAL = 0
    NOISE_H0 = 1
    NOISE_H1 = 2
    SHADOW = 3


def substream(master_seed: int, trial_index: int, user_index: int, role: Role) -> np.random.Generator:
    seq = np.random.SeedSequence(master_seed, spawn_key=(int(trial_index), int(user_index), int(role)))
    return np.random.default_rng(seq)


def detector_kinds(config: ScenarioConfig, k: int) -> list[str]:
    kinds = [kind.value for kind in StatisticKind]
    if k > 1 and 0 < config.min_votes <= k:
        kinds.append(BINARY_COUNT)
    return kinds


def _user_snrs(config: ScenarioConfig, trial_index: int, snrs_db: Sequence[float] | None) -> np.ndarray:
    """Per-user SNRs with shape ``(n_snr, K)``; shadowing draws one row per trial."""
    k = config.num_users
    if config.shadowing:
        row = [
            draw_shadowed_snrs(config.channel, 1, substream(config.master_seed, trial_index, u, Role.SHADOW))[0]
            for u in range(k)
        ]
        return np.array([row], dtype=float)
    grid = np.atleast_1d(np.asarray(config.channel.snr_db if snrs_db is None else snrs_db, dtype=float))
    return np.repeat(grid[:, None], k, axis=1)


def user_statistics(
    config: ScenarioConfig,
    hypothesis: Hypothesis,
    trial_index: int,
    snrs_db: Sequence[float] | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """Local single-cycle statistics of every user in one trial.

    Returns:
        ``(stats, snrs)`` where ``stats`` has shape ``(n_snr, K, N_alpha)``
        and ``snrs`` shape ``(n_snr, K)``. Under H0 the received records are
        pure noise, so ``n_snr`` is 1 whatever the grid.
    """
    hypothesis = Hypothesis(hypothesis)
    spec = config.detector_spec
    ofdm = config.ofdm
    m = ofdm.num_samples
    k = config.num_users
    snrs = _user_snrs(config, trial_index, snrs_db)
    role = Role.NOISE_H1 if hypothesis is Hypothesis.H1 else Role.NOISE_H0
    noise = np.stack([complex_noise(m, substream(config.master_seed, trial_index, u, role)) for u in range(k)])
    if hypothesis is Hypothesis.H0:
        received = noise[None]
        if not config.shadowing:
            snrs = snrs[:1]
    else:
        signal = generate_ofdm(ofdm, substream(config.master_seed, trial_index, 0, Role.SIGNAL))
        scale = np.sqrt(np.vectorize(noise_variance)(snrs))
        received = signal + scale[..., None] * noise[None]
    r, sigma = cyclic_features(received, spec.freq_set.frequencies, spec.lag_set, spec.smoother)
    stats = quadratic_forms(r, sigma, m)
    if not np.all(np.isfinite(stats)):
        raise NumericalError(f"non-finite statistic in trial {trial_index}")
    return stats, snrs


def _simulate_chunk(args) -> tuple[np.ndarray, np.ndarray]:
    config, hypothesis, snrs_db, indices = args
    pairs = [user_statistics(config, hypothesis, i, snrs_db) for i in indices]
    return np.stack([p[0] for p in pairs]), np.stack([p[1] for p in pairs])


def simulate(
    config: ScenarioConfig,
    hypothesis: Hypothesis,
    snrs_db: Sequence[float] | None = None,
    trial_indices: Sequence[int] | None = None,
    workers: int = 1,
) -> tuple[np.ndarray, np.ndarray]:
    """Stack :func:`user_statistics` over trials: shapes ``(T, n_snr, K, N_alpha)`` and ``(T, n_snr, K)``."""
    indices = list(range(config.num_trials) if trial_indices is None else trial_indices)
    if not indices:
        raise ConfigurationError("at least one trial is required")
    if workers <= 1 or len(indices) < 2:
        return _simulate_chunk((config, hypothesis, snrs_db, indices))
    n_chunks = min(len(indices), 4 * workers)
    chunks = [c.tolist() for c in np.array_split(indices, n_chunks)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(_simulate_chunk, [(config, hypothesis, snrs_db, c) for c in chunks]))
    return np.concatenate([p[0] for p in parts]), np.concatenate([p[1] for p in parts])


@dataclass(frozen=True)
class ScoredDetector:
    """Null-CDF values of one detector over a batch; ``reject(p)`` gives decisions."""

    kind: str
    values: np.ndarray
    cdf: np.ndarray
    min_votes: int = 0

    def reject(self, p: float) -> np.ndarray:
        if self.kind == BINARY_COUNT:
            return (self.cdf > 1.0 - p).sum(axis=-1) >= self.min_votes
        return self.cdf > 1.0 - p


def score_bank(stats: np.ndarray, config: ScenarioConfig, k: int) -> dict[str, ScoredDetector]:
    """Fused statistics of the first ``k`` users for every detector in the bank.

    ``stats`` has shape ``(..., K, N_alpha)``; quantization (if configured)
    is applied to the local statistics before fusion.
    """
    dof = config.detector_spec.features_dof
    local = quantize_statistic(stats[..., :k, :], config.quantizer_spec)
    n_freqs = local.shape[-1]
    per_freq = local.sum(axis=-2)
    out = {}
    single = per_freq[..., 0]
    out["single_cycle"] = ScoredDetector("single_cycle", single, chi2_cdf_even(single, dof * k))
    top = per_freq.max(axis=-1)
    out["multi_max"] = ScoredDetector("multi_max", top, max_cdf(top, dof * k, n_freqs))
    total = per_freq.sum(axis=-1)
    out["multi_sum"] = ScoredDetector("multi_sum", total, chi2_cdf_even(total, dof * k * n_freqs))
    if BINARY_COUNT in detector_kinds(config, k):
        local_sum = local.sum(axis=-1)
        out[BINARY_COUNT] = ScoredDetector(
            BINARY_COUNT, local_sum, chi2_cdf_even(local_sum, dof * n_freqs), config.min_votes
        )
    return out


@dataclass(frozen=True)
class TrialOutcome:
    hypothesis: Hypothesis
    trial_index: int
    per_user_stats: np.ndarray
    per_user_snrs_db: tuple[float, ...]
    statistics: dict[str, CyclicStatistic]
    decisions: dict[str, bool]


def run_trial(config: ScenarioConfig, hypothesis: Hypothesis, trial_index: int) -> TrialOutcome:
    """One trial at ``config.channel.snr_db`` (or shadowed SNRs) with the full detector bank.

    With several users the bank is evaluated on the fused statistics; the
    binary counting rule (when enabled) counts local ``multi_sum`` decisions.
    """
    hypothesis = Hypothesis(hypothesis)
    stats, snrs = user_statistics(config, hypothesis, trial_index)
    local = quantize_statistic(stats[0], config.quantizer_spec)
    spec = config.detector_spec
    dof = spec.features_dof
    statistics = {
        "single_cycle": fuse_single_cycle(local[:, 0], dof),
        "multi_max": fuse_multicycle(local, "max", dof),
        "multi_sum": fuse_multicycle(local, "sum", dof),
    }
    decisions = {}
    for kind, stat in statistics.items():
        decisions[kind] = decide(stat, _spec_for(spec, kind))
    if BINARY_COUNT in detector_kinds(config, config.num_users):
        sum_spec = _spec_for(spec, "multi_sum")
        votes = [decide(fuse_multicycle(row[None], "sum", dof), sum_spec) for row in local]
        decisions[BINARY_COUNT] = fuse_binary(votes, config.min_votes)
    return TrialOutcome(
        hypothesis=hypothesis,
        trial_index=int(trial_index),
        per_user_stats=stats[0],
        per_user_snrs_db=tuple(float(s) for s in snrs[0]),
        statistics=statistics,
        decisions=decisions,
    )


def _spec_for(spec, kind: str):
    return replace(spec, statistic_kind=StatisticKind(kind))


def _user_counts(config: ScenarioConfig, user_counts: Sequence[int] | None) -> list[int]:
    counts = sorted(set(user_counts or [config.num_users]))
    if counts[0] < 1 or counts[-1] > config.num_users:
        raise ConfigurationError(f"user counts must lie in [1, {config.num_users}], got {counts}")
    return counts


def estimate_detection_curve(
    config: ScenarioConfig, user_counts: Sequence[int] | None = None, workers: int = 1
) -> ResultTable:
    """Empirical Pd over ``config.snr_grid_db`` at the configured false alarm rate.

    ``empirical_far`` comes from the same number of H0 trials and is shared
    by all SNR rows of a detector. ``user_counts`` selects the fused network
    sizes to report (the first ``k`` users of each trial).
    """
    if not config.snr_grid_db:
        raise ConfigurationError("snr_grid_db must be nonempty")
    p = config.detector.false_alarm_rate
    n = config.num_trials
    h1, _ = simulate(config, Hypothesis.H1, config.snr_grid_db, workers=workers)
    h0, _ = simulate(config, Hypothesis.H0, workers=workers)
    table = ResultTable(axis="snr_db")
    for k in _user_counts(config, user_counts):
        scored1 = score_bank(h1, config, k)
        scored0 = score_bank(h0, config, k)
        for kind in detector_kinds(config, k):
            detections = scored1[kind].reject(p).sum(axis=0)
            false_alarms = int(scored0[kind].reject(p).sum())
            for j, snr in enumerate(config.snr_grid_db):
                table.rows.append(ResultRow.from_counts(kind, k, snr, int(detections[j]), false_alarms, n, n))
    _sort(table, config)
    return table


def estimate_roc(config: ScenarioConfig, user_counts: Sequence[int] | None = None, workers: int = 1) -> ResultTable:
    """Empirical Pd and FAR for every nominal false alarm rate in ``config.far_grid``.

    H1 trials use ``config.channel.snr_db``, or per-user shadowed SNRs when
    ``config.shadowing`` is set.
    """
    if not config.far_grid:
        raise ConfigurationError("far_grid must be nonempty")
    n = config.num_trials
    h1, _ = simulate(config, Hypothesis.H1, [config.channel.snr_db], workers=workers)
    h0, _ = simulate(config, Hypothesis.H0, workers=workers)
    table = ResultTable(axis="far")
    for k in _user_counts(config, user_counts):
        scored1 = score_bank(h1[:, 0], config, k)
        scored0 = score_bank(h0[:, 0], config, k)
        for kind in detector_kinds(config, k):
            for p in config.far_grid:
                detections = int(scored1[kind].reject(p).sum())
                false_alarms = int(scored0[kind].reject(p).sum())
                table.rows.append(ResultRow.from_counts(kind, k, p, detections, false_alarms, n, n))
    _sort(table, config)
    return table


def run_shadowing_experiment(config: ScenarioConfig, workers: int = 1) -> ResultTable:
    """ROC under per-user log-normal shadowing, single user and full network side by side."""
    if not config.shadowing:
        raise ConfigurationError("the shadowing experiment requires shadowing = true")
    return estimate_roc(config, user_counts=(1, config.num_users), workers=workers)


def _sort(table: ResultTable, config: ScenarioConfig) -> None:
    order = {kind: i for i, kind in enumerate(detector_kinds(config, config.num_users))}
    table.rows.sort(key=lambda r: (order[r.detector_kind], r.K, r.x))


def crossing_snr(snrs: np.ndarray, pd: np.ndarray, level: float = 0.5) -> float:
    """SNR where a Pd curve first reaches ``level``, by linear interpolation."""
    above = np.nonzero(pd >= level)[0]
    if above.size == 0 or above[0] == 0:
        raise NumericalError(f"Pd curve does not cross {level} inside the SNR grid")
    i = above[0]
    x0, x1, y0, y1 = snrs[i - 1], snrs[i], pd[i - 1], pd[i]
    return float(x0 + (level - y0) * (x1 - x0) / (y1 - y0))


def cooperation_gain(
    table: ResultTable, detector_kind: str = "multi_sum", k_ref: int = 1, k: int | None = None, level: float = 0.5
) -> float:
    """Horizontal shift (dB) between the ``k_ref``-user and ``k``-user Pd curves at ``level``."""
    if k is None:
        k = max(r.K for r in table.rows)
    ref = crossing_snr(*table.curve(detector_kind, k_ref), level=level)
    coop = crossing_snr(*table.curve(detector_kind, k), level=level)
    return ref - coop


RAW_HEADER = ("trial_index", "hypothesis", "user_id", "snr_db", "alpha", "statistic", "quantized_statistic")


def raw_trial_rows(config: ScenarioConfig, hypothesis: Hypothesis, trial_indices: Sequence[int]) -> list[tuple]:
    """Per-user, per-frequency reports of the given trials at the configured SNR."""
    hypothesis = Hypothesis(hypothesis)
    freqs = config.detector_spec.freq_set.frequencies
    quantizer = config.quantizer_spec
    rows = []
    for i in trial_indices:
        stats, snrs = user_statistics(config, hypothesis, i)
        for u in range(config.num_users):
            for a, alpha in enumerate(freqs):
                value = float(stats[0, u, a])
                rows.append(
                    (int(i), hypothesis.value, u, float(snrs[0, u]), alpha, value, quantize_statistic(value, quantizer))
                )
    return rows


def lag1_autocorrelation(values: np.ndarray) -> float:
    v = np.asarray(values, dtype=float)
    v = v - v.mean()
    denom = float(np.dot(v, v))
    return float(np.dot(v[:-1], v[1:]) / denom) if denom > 0 else math.nan
