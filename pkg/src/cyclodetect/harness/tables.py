"""Result tables with Wilson intervals and their CSV form."""

from __future__ import annotations

import csv
import io
from dataclasses import astuple, dataclass, field, fields
from pathlib import Path
from typing import Iterable, TextIO

import numpy as np
from scipy.stats import binomtest

from ..errors import DomainError

AXES = ("snr_db", "far")


def wilson_interval(successes: int, trials: int, confidence: float = 0.95) -> tuple[float, float]:
    if trials < 1:
        raise DomainError("a proportion needs at least one trial")
    ci = binomtest(int(successes), int(trials)).proportion_ci(confidence_level=confidence, method="wilson")
    return float(ci.low), float(ci.high)


@dataclass(frozen=True)
class ResultRow:
    detector_kind: str
    K: int
    x: float
    num_trials: int
    empirical_pd: float
    empirical_far: float
    wilson_ci_low: float
    wilson_ci_high: float

    @classmethod
    def from_counts(cls, kind: str, k: int, x: float, detections: int, false_alarms: int, num_trials: int, num_null: int):
        low, high = wilson_interval(detections, num_trials)
        return cls(
            detector_kind=kind,
            K=int(k),
            x=float(x),
            num_trials=int(num_trials),
            empirical_pd=detections / num_trials,
            empirical_far=false_alarms / num_null,
            wilson_ci_low=low,
            wilson_ci_high=high,
        )


@dataclass
class ResultTable:
    """Rows of empirical detection / false-alarm rates.

    ``axis`` names the swept quantity stored in each row's ``x`` and used as
    the CSV column header (``snr_db`` or ``far``). Wilson intervals are for
    the detection probability.
    """

    axis: str
    rows: list[ResultRow] = field(default_factory=list)

    def __post_init__(self):
        if self.axis not in AXES:
            raise DomainError(f"axis must be one of {AXES}")

    @property
    def header(self) -> list[str]:
        return [self.axis if f.name == "x" else f.name for f in fields(ResultRow)]

    def select(self, detector_kind: str, k: int) -> list[ResultRow]:
        return [r for r in self.rows if r.detector_kind == detector_kind and r.K == k]

    def curve(self, detector_kind: str, k: int) -> tuple[np.ndarray, np.ndarray]:
        rows = sorted(self.select(detector_kind, k), key=lambda r: r.x)
        return np.array([r.x for r in rows]), np.array([r.empirical_pd for r in rows])

    def write_csv(self, out: TextIO) -> None:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(self.header)
        for row in self.rows:
            writer.writerow([repr(v) if isinstance(v, float) else v for v in astuple(row)])

    def to_csv(self) -> str:
        buf = io.StringIO()
        self.write_csv(buf)
        return buf.getvalue()

    def save(self, path: str | Path) -> None:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            self.write_csv(fh)

    @classmethod
    def from_csv(cls, lines: Iterable[str]) -> "ResultTable":
        reader = csv.reader(lines)
        header = next(reader)
        table = cls(axis=header[2])
        for rec in reader:
            kind, k, x, n, pd, far, lo, hi = rec
            table.rows.append(ResultRow(kind, int(k), float(x), int(n), float(pd), float(far), float(lo), float(hi)))
        return table
