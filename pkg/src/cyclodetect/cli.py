"""Command line interface.

Subcommands: ``generate``, ``detect``, ``mc``, ``roc``, ``fuse``, ``shadow``.
Every scenario field can be set in a ``--config`` file and overridden by a
flag of the same name, e.g. ``--snr_grid_db=-12,-10,-8 --num_users 5``.

Exit codes: 0 success, 2 configuration error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import logging
import sys
from typing import Sequence

import numpy as np

from .detectors import decide, multicycle_max, multicycle_sum, per_frequency_statistics
from .errors import ConfigurationError, DomainError, NumericalError
from .harness.config import FIELD_SECTIONS, PAPER_TRIALS, ScenarioConfig, apply_overrides, load_config
from .harness.engine import (
    RAW_HEADER,
    Hypothesis,
    Role,
    cooperation_gain,
    estimate_detection_curve,
    estimate_roc,
    raw_trial_rows,
    run_shadowing_experiment,
    substream,
)
from .harness.samples import read_samples, write_samples
from .signal_model import apply_awgn, generate_ofdm

log = logging.getLogger("cyclodetect")

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3

COOPERATIVE_USERS = 5


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-c", "--config", help="scenario config file (INI-style sections)")
    common.add_argument("--seed", type=int, help="master seed (alias of --master_seed)")
    common.add_argument("--trials", type=int, help="Monte Carlo trials per point (alias of --num_trials)")
    common.add_argument("--paper", action="store_true", help=f"use the paper's {PAPER_TRIALS} trials per point")
    common.add_argument("--workers", type=int, default=1, help="worker processes (results do not depend on it)")
    common.add_argument("-o", "--output", help="output file (default: stdout)")
    common.add_argument("-v", "--verbose", action="store_true")
    fields = common.add_argument_group("scenario fields")
    for name in FIELD_SECTIONS:
        fields.add_argument(f"--{name}", dest=f"field_{name}", metavar="VALUE", help=f"[{FIELD_SECTIONS[name]}] {name}")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    parser = argparse.ArgumentParser(prog="cyclodetect", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", parents=[common], help="write an OFDM record (noisy if --snr_db is given)")
    gen.add_argument("--text", action="store_true", help="two-column text instead of binary CYCS")

    det = sub.add_parser("detect", parents=[common], help="run the detector bank on a sample file")
    det.add_argument("input", help="CYCS binary or two-column text sample file")

    sub.add_parser("mc", parents=[common], help="Pd vs SNR at the configured false alarm rate")
    sub.add_parser("roc", parents=[common], help="Pd and FAR vs nominal false alarm rate")
    sub.add_parser("fuse", parents=[common], help=f"Pd vs SNR for one user and K users (default K={COOPERATIVE_USERS})")
    shadow = sub.add_parser("shadow", parents=[common], help="ROC under per-user log-normal shadowing")
    shadow.add_argument("--raw", help="also dump per-user H1 reports (trial, user, snr, alpha, statistic) as CSV")
    return parser


def resolve_config(args: argparse.Namespace, defaults: dict | None = None) -> ScenarioConfig:
    config = load_config(args.config) if args.config else ScenarioConfig()
    overrides = dict(defaults or {})
    if args.paper:
        overrides["num_trials"] = PAPER_TRIALS
    for name in FIELD_SECTIONS:
        value = getattr(args, f"field_{name}")
        if value is not None:
            overrides[name] = value
    if args.trials is not None:
        overrides["num_trials"] = args.trials
    if args.seed is not None:
        overrides["master_seed"] = args.seed
    return apply_overrides(config, overrides)


def _open_output(path: str | None):
    return open(path, "w", newline="", encoding="utf-8") if path else sys.stdout


def cmd_generate(args, config: ScenarioConfig) -> None:
    if not args.output:
        raise ConfigurationError("generate needs --output")
    x = generate_ofdm(config.ofdm, substream(config.master_seed, 0, 0, Role.SIGNAL))
    if args.field_snr_db is not None:
        x = apply_awgn(x, config.channel.snr_db, substream(config.master_seed, 0, 0, Role.NOISE_H1))
    write_samples(args.output, x, text=args.text)
    log.info("wrote %d samples to %s", x.size, args.output)


def cmd_detect(args, config: ScenarioConfig) -> None:
    x = read_samples(args.input)
    spec = config.detector_spec
    if any(abs(t) >= x.size for t in spec.lag_set.lags):
        raise ConfigurationError(f"record of {x.size} samples is too short for lags {spec.lag_set.lags}")
    per_freq = per_frequency_statistics(x, spec)
    bank = {"single_cycle": per_freq[0], "multi_max": multicycle_max(per_freq), "multi_sum": multicycle_sum(per_freq)}
    out = _open_output(args.output)
    try:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["detector_kind", "value", "dof", "num_freqs", "p_value", "reject"])
        for kind, stat in bank.items():
            reject = decide(stat, dataclasses.replace(spec, statistic_kind=kind))
            writer.writerow([kind, repr(stat.value), stat.dof, stat.num_freqs, repr(stat.p_value), int(reject)])
    finally:
        if out is not sys.stdout:
            out.close()


def _emit(table, args) -> None:
    out = _open_output(args.output)
    try:
        table.write_csv(out)
    finally:
        if out is not sys.stdout:
            out.close()


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    defaults = {}
    if args.command in ("fuse", "shadow"):
        defaults["num_users"] = COOPERATIVE_USERS
    if args.command == "shadow":
        defaults["shadowing"] = True
    try:
        config = resolve_config(args, defaults)
        if args.command == "generate":
            cmd_generate(args, config)
        elif args.command == "detect":
            cmd_detect(args, config)
        elif args.command == "mc":
            _emit(estimate_detection_curve(config, workers=args.workers), args)
        elif args.command == "roc":
            _emit(estimate_roc(config, workers=args.workers), args)
        elif args.command == "fuse":
            table = estimate_detection_curve(config, user_counts=(1, config.num_users), workers=args.workers)
            _emit(table, args)
            if config.num_users > 1:
                try:
                    gain = cooperation_gain(table, "multi_sum", 1, config.num_users)
                    print(f"cooperation gain (multi_sum, Pd=0.5): {gain:.2f} dB", file=sys.stderr)
                except NumericalError as exc:
                    log.warning("cooperation gain unavailable: %s", exc)
        elif args.command == "shadow":
            _emit(run_shadowing_experiment(config, workers=args.workers), args)
            if args.raw:
                rows = raw_trial_rows(config, Hypothesis.H1, range(config.num_trials))
                with open(args.raw, "w", newline="", encoding="utf-8") as fh:
                    writer = csv.writer(fh, lineterminator="\n")
                    writer.writerow(RAW_HEADER)
                    writer.writerows(rows)
    except ConfigurationError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (NumericalError, DomainError, np.linalg.LinAlgError, FloatingPointError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
