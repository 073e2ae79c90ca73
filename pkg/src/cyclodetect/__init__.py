"""Cyclostationarity detection at multiple cyclic frequencies with cooperative fusion."""

from .detectors import (
    CyclicStatistic,
    DetectorSpec,
    StatisticKind,
    decide,
    detect,
    multicycle_max,
    multicycle_sum,
    per_frequency_statistics,
    single_cycle_statistic,
)
from .distributions import chi2_cdf_even, chi2_quantile_even, chi2_sf_even, max_cdf, max_pdf, max_quantile, max_sf
from .errors import ConfigurationError, CyclodetectError, DomainError, NumericalError
from .estimation import (
    CyclicFeatureVector,
    CyclicFrequencySet,
    FeatureCovariance,
    LagSet,
    SmootherSpec,
    cyclic_autocorrelation,
    cyclic_features,
    cyclic_periodogram_grid,
    cyclic_periodogram_transform,
    feature_covariance,
    feature_vector,
    smoothed_cyclic_spectra,
)
from .fusion import FusionReport, FusionRule, QuantizerSpec, fuse_binary, fuse_multicycle, fuse_single_cycle, quantize_statistic
from .signal_model import (
    ChannelParams,
    OfdmParams,
    apply_awgn,
    draw_shadowed_snrs,
    generate_ofdm,
    generate_qam_symbols,
    noise_variance,
)

__version__ = "0.1.0"

__all__ = [
    "ChannelParams",
    "ConfigurationError",
    "CyclicFeatureVector",
    "CyclicFrequencySet",
    "CyclicStatistic",
    "CyclodetectError",
    "DetectorSpec",
    "DomainError",
    "FeatureCovariance",
    "FusionReport",
    "FusionRule",
    "LagSet",
    "NumericalError",
    "OfdmParams",
    "QuantizerSpec",
    "SmootherSpec",
    "StatisticKind",
    "apply_awgn",
    "chi2_cdf_even",
    "chi2_quantile_even",
    "chi2_sf_even",
    "cyclic_autocorrelation",
    "cyclic_features",
    "cyclic_periodogram_grid",
    "cyclic_periodogram_transform",
    "decide",
    "detect",
    "draw_shadowed_snrs",
    "feature_covariance",
    "feature_vector",
    "fuse_binary",
    "fuse_multicycle",
    "fuse_single_cycle",
    "generate_ofdm",
    "generate_qam_symbols",
    "max_cdf",
    "max_pdf",
    "max_quantile",
    "max_sf",
    "multicycle_max",
    "multicycle_sum",
    "noise_variance",
    "per_frequency_statistics",
    "quantize_statistic",
    "single_cycle_statistic",
    "smoothed_cyclic_spectra",
]
