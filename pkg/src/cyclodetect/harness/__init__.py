"""Monte Carlo reproduction of the OFDM detection experiments."""

from .config import DESK_TRIALS, PAPER_TRIALS, DetectorConfig, QuantizerConfig, ScenarioConfig, dump_config, load_config
from .engine import (
    Hypothesis,
    TrialOutcome,
    cooperation_gain,
    crossing_snr,
    estimate_detection_curve,
    estimate_roc,
    raw_trial_rows,
    run_shadowing_experiment,
    run_trial,
    score_bank,
    simulate,
    user_statistics,
)
from .samples import read_samples, write_samples
from .tables import ResultRow, ResultTable, wilson_interval

__all__ = [
    "DESK_TRIALS",
    "DetectorConfig",
    "Hypothesis",
    "PAPER_TRIALS",
    "QuantizerConfig",
    "ResultRow",
    "ResultTable",
    "ScenarioConfig",
    "TrialOutcome",
    "cooperation_gain",
    "crossing_snr",
    "dump_config",
    "estimate_detection_curve",
    "estimate_roc",
    "load_config",
    "raw_trial_rows",
    "read_samples",
    "run_shadowing_experiment",
    "run_trial",
    "score_bank",
    "simulate",
    "user_statistics",
    "wilson_interval",
    "write_samples",
]
