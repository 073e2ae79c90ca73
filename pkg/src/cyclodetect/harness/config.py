"""Scenario configuration: dataclass, INI-style file format and overrides.

A config file is ``key = value`` pairs grouped in sections named after the
nested parts of :class:`ScenarioConfig`::

    [ofdm]
    num_subcarriers = 32
    useful_len = 32
    cp_len = 8

    [detector]
    freq_set = auto          ; k / symbol_len for k = 1, 2
    lag_set = auto           ; +useful_len, -useful_len
    false_alarm_rate = 0.05

    [scenario]
    num_trials = 1000
    snr_grid_db = -14, -12, -10

Leaf key names are unique across sections, so every field can also be
overridden by a flat ``name -> value`` mapping (the CLI uses this).
"""

from __future__ import annotations

import configparser
import dataclasses
import functools
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping

from ..detectors import DetectorSpec, StatisticKind
from ..errors import ConfigurationError
from ..estimation import CyclicFrequencySet, LagSet, SmootherSpec
from ..fusion import QuantizerSpec
from ..signal_model import ChannelParams, OfdmParams

DESK_TRIALS = 1000
PAPER_TRIALS = 10000
DEFAULT_SEED = 20080331


@dataclass(frozen=True)
class DetectorConfig:
    """Serializable detector description; ``None`` frequencies/lags follow the OFDM symbol timing."""

    freq_set: tuple[float, ...] | None = None
    lag_set: tuple[int, ...] | None = None
    conjugate: bool = True
    smoother_length: int = 2049
    smoother_beta: float = 10.0
    false_alarm_rate: float = 0.05
    statistic_kind: StatisticKind = StatisticKind.MULTI_SUM

    def build(self, ofdm: OfdmParams) -> DetectorSpec:
        return _build_detector(self, ofdm)


@functools.lru_cache(maxsize=64)
def _build_detector(detector: DetectorConfig, ofdm: OfdmParams) -> DetectorSpec:
    freqs = detector.freq_set or (1.0 / ofdm.symbol_len, 2.0 / ofdm.symbol_len)
    lags = detector.lag_set or (ofdm.useful_len, -ofdm.useful_len)
    return DetectorSpec(
        freq_set=CyclicFrequencySet(tuple(freqs)),
        lag_set=LagSet(tuple(lags), conjugate=detector.conjugate),
        smoother=SmootherSpec.kaiser(detector.smoother_length, detector.smoother_beta),
        false_alarm_rate=detector.false_alarm_rate,
        statistic_kind=detector.statistic_kind,
    )


@dataclass(frozen=True)
class QuantizerConfig:
    """``num_bits=None`` is exact reporting; ``clip_max=None`` saturates at the 0.9999 null quantile."""

    num_bits: int | None = None
    clip_max: float | None = None

    def build(self, dof: int) -> QuantizerSpec:
        if self.clip_max is None:
            return QuantizerSpec.for_dof(dof, num_bits=self.num_bits)
        return QuantizerSpec(num_bits=self.num_bits, clip_max=self.clip_max)


@dataclass(frozen=True)
class ScenarioConfig:
    ofdm: OfdmParams = field(default_factory=OfdmParams)
    channel: ChannelParams = field(default_factory=ChannelParams)
    detector: DetectorConfig = field(default_factory=DetectorConfig)
    quantizer: QuantizerConfig = field(default_factory=QuantizerConfig)
    num_users: int = 1
    num_trials: int = DESK_TRIALS
    snr_grid_db: tuple[float, ...] = tuple(float(s) for s in range(-16, 1, 2))
    far_grid: tuple[float, ...] = (0.01, 0.02, 0.05, 0.1, 0.2, 0.5)
    shadowing: bool = False
    master_seed: int = DEFAULT_SEED
    min_votes: int = 0

    def __post_init__(self):
        if self.num_users < 1:
            raise ConfigurationError("num_users must be >= 1")
        if self.num_trials < 1:
            raise ConfigurationError("num_trials must be >= 1")
        if not 0 <= self.master_seed < 2**64:
            raise ConfigurationError("master_seed must be a 64-bit unsigned integer")
        if any(not 0.0 < p < 1.0 for p in self.far_grid):
            raise ConfigurationError("far_grid entries must lie in (0, 1)")
        if not 0 <= self.min_votes <= self.num_users:
            raise ConfigurationError("min_votes must lie in [0, num_users] (0 disables the counting rule)")
        # fail early on inconsistent detector settings
        self.detector_spec

    @property
    def detector_spec(self) -> DetectorSpec:
        return self.detector.build(self.ofdm)

    @property
    def quantizer_spec(self) -> QuantizerSpec:
        return self.quantizer.build(self.detector_spec.features_dof)

    def replace(self, **overrides: Any) -> "ScenarioConfig":
        """Return a copy with flat leaf-field overrides applied (see :data:`FIELD_SECTIONS`)."""
        return apply_overrides(self, overrides)


SECTION_TYPES = {
    "ofdm": OfdmParams,
    "channel": ChannelParams,
    "detector": DetectorConfig,
    "quantizer": QuantizerConfig,
}
SCENARIO_SECTION = "scenario"
FIELD_SECTIONS: dict[str, str] = {
    f.name: section for section, cls in SECTION_TYPES.items() for f in dataclasses.fields(cls)
}
FIELD_SECTIONS.update(
    {f.name: SCENARIO_SECTION for f in dataclasses.fields(ScenarioConfig) if f.name not in SECTION_TYPES}
)

_AUTO = {"", "auto", "none", "exact", "default"}
_TRUE = {"1", "true", "yes", "on"}
_FALSE = {"0", "false", "no", "off"}


def _field_type(name: str):
    section = FIELD_SECTIONS[name]
    cls = ScenarioConfig if section == SCENARIO_SECTION else SECTION_TYPES[section]
    return next(f for f in dataclasses.fields(cls) if f.name == name)


def parse_value(name: str, raw: Any) -> Any:
    """Convert a text value to the type of field ``name``; non-strings pass through."""
    if name not in FIELD_SECTIONS:
        raise ConfigurationError(f"unknown configuration field {name!r}")
    if not isinstance(raw, str):
        return tuple(raw) if isinstance(raw, list) else raw
    text = raw.strip()
    ftype = str(_field_type(name).type)
    try:
        if "tuple" in ftype:
            if text.lower() in _AUTO:
                return None
            conv = int if "int" in ftype else float
            return tuple(conv(item) for item in text.replace(";", ",").split(",") if item.strip())
        if "None" in ftype and text.lower() in _AUTO:
            return None
        if ftype.startswith("bool"):
            if text.lower() in _TRUE:
                return True
            if text.lower() in _FALSE:
                return False
            raise ValueError(text)
        if ftype.startswith("int"):
            return int(text, 0)
        if ftype.startswith("float"):
            return float(text)
        if "StatisticKind" in ftype:
            return StatisticKind(text)
    except ValueError as exc:
        raise ConfigurationError(f"invalid value {raw!r} for {name}") from exc
    raise ConfigurationError(f"cannot parse field {name!r} of type {ftype}")


def apply_overrides(config: ScenarioConfig, overrides: Mapping[str, Any]) -> ScenarioConfig:
    grouped: dict[str, dict[str, Any]] = {}
    for name, raw in overrides.items():
        grouped.setdefault(FIELD_SECTIONS.get(name, "?"), {})[name] = parse_value(name, raw)
    top = dict(grouped.pop(SCENARIO_SECTION, {}))
    for section, values in grouped.items():
        top[section] = dataclasses.replace(getattr(config, section), **values)
    try:
        return dataclasses.replace(config, **top)
    except TypeError as exc:
        raise ConfigurationError(str(exc)) from exc


def load_config(path: str | Path, base: ScenarioConfig | None = None) -> ScenarioConfig:
    parser = configparser.ConfigParser(inline_comment_prefixes=(";", "#"))
    parser.optionxform = str
    try:
        with open(path, encoding="utf-8") as fh:
            parser.read_file(fh)
    except (OSError, configparser.Error) as exc:
        raise ConfigurationError(f"cannot read config {path}: {exc}") from exc
    overrides: dict[str, Any] = {}
    for section in parser.sections():
        if section not in SECTION_TYPES and section != SCENARIO_SECTION:
            raise ConfigurationError(f"unknown config section [{section}]")
        for key, value in parser.items(section):
            if FIELD_SECTIONS.get(key) != section:
                raise ConfigurationError(f"unknown key {key!r} in section [{section}]")
            overrides[key] = value
    return apply_overrides(base or ScenarioConfig(), overrides)


def _format(value: Any) -> str:
    if value is None:
        return "auto"
    if isinstance(value, tuple):
        return ", ".join(repr(v) for v in value)
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, StatisticKind):
        return value.value
    return repr(value) if isinstance(value, float) else str(value)


def dump_config(config: ScenarioConfig) -> str:
    """Render ``config`` in the file format accepted by :func:`load_config`."""
    lines = []
    for section, cls in SECTION_TYPES.items():
        lines.append(f"[{section}]")
        obj = getattr(config, section)
        lines += [f"{f.name} = {_format(getattr(obj, f.name))}" for f in dataclasses.fields(cls)]
        lines.append("")
    lines.append(f"[{SCENARIO_SECTION}]")
    for f in dataclasses.fields(ScenarioConfig):
        if f.name not in SECTION_TYPES:
            lines.append(f"{f.name} = {_format(getattr(config, f.name))}")
    return "\n".join(lines) + "\n"
