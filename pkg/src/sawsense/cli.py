"""Command-line interface.

Verbs: scenario (replay an experiment to CSV/JSONL), linkbudget (budget
table and max read range), fit (resonance detection on a spectrum CSV),
calibrate-noise (fit the noise scale to precision targets).

Exit codes are stable API: 0 success, 1 runtime failure, 2 bad config or
input, 3 no resonance found, 4 calibration targets infeasible.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from pathlib import Path

from .calibrate import CalibrationInfeasibleError, calibrate_noise
from .config import (
    ConfigError,
    load_link_config,
    load_scenario_config,
    scenario_config_to_dict,
)
from .formats import (
    atomic_write_text,
    read_spectrum_csv,
    readings_csv,
    readings_jsonl,
    reading_to_json,
    summary_json,
)
from .interrogator import NoResonanceError, detect_resonance
from .rflink import DielectricMedium, LinkConfig, NoLinkError, budget_breakdown, max_read_range_m
from .scenario import run

EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_BAD_INPUT = 2
EXIT_NO_RESONANCE = 3
EXIT_INFEASIBLE = 4


def cmd_scenario(args: argparse.Namespace) -> int:
    try:
        config = load_scenario_config(args.config)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    if args.seed is not None:
        config = replace(config, seed=args.seed)

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    result = run(config)

    atomic_write_text(out_dir / "readings.csv", readings_csv(result.records))
    atomic_write_text(out_dir / "readings.jsonl", readings_jsonl(result.records))
    atomic_write_text(out_dir / "summary.json", summary_json(result.summary))
    manifest = scenario_config_to_dict(config)
    atomic_write_text(out_dir / "manifest.json", json.dumps(manifest, indent=2) + "\n")

    if args.verbose:
        print(f"wrote {len(result.records)} records to {out_dir}")
        print(summary_json(result.summary), end="")
    return EXIT_OK


def _medium_from_args(args: argparse.Namespace, base: DielectricMedium) -> DielectricMedium:
    eps = args.eps_r if args.eps_r is not None else base.eps_r
    tan = args.tan_delta if args.tan_delta is not None else base.tan_delta
    return DielectricMedium(eps_r=eps, tan_delta=tan)


def _link_from_args(args: argparse.Namespace, base: LinkConfig) -> LinkConfig:
    overrides = {
        "freq_hz": args.freq_hz,
        "tx_power_dbm": args.tx_dbm,
        "gain_reader_dbi": args.gain_reader_dbi,
        "gain_sensor_dbi": args.gain_sensor_dbi,
        "air_distance_m": args.air_m,
        "cover_thickness_m": args.cover_m,
        "insertion_loss_db": args.insertion_db,
        "noise_floor_dbm": args.noise_floor_dbm,
        "snr_threshold_db": args.threshold_db,
    }
    return replace(base, **{k: v for k, v in overrides.items() if v is not None})


def cmd_linkbudget(args: argparse.Namespace) -> int:
    base_link, base_medium = LinkConfig(), DielectricMedium(eps_r=4.7, tan_delta=0.13)
    if args.config is not None:
        try:
            base_link, base_medium = load_link_config(args.config)
        except ConfigError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_BAD_INPUT
    try:
        link = _link_from_args(args, base_link)
        medium = _medium_from_args(args, base_medium)
        terms = budget_breakdown(link, medium)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT

    print(f"link budget at {link.freq_hz / 1e9:.4g} GHz "
          f"(air {link.air_distance_m:.3f} m, cover {link.cover_thickness_m:.3f} m, "
          f"eps_r {medium.eps_r:.2f}, tan_delta {medium.tan_delta:.3f})")
    print(f"  tx power            {terms['tx_power_dbm']:9.2f} dBm")
    print(f"  antenna gains (2x)  {terms['antenna_gain_db']:+9.2f} dB")
    print(f"  spreading loss (2x) {-terms['spreading_loss_db']:+9.2f} dB")
    print(f"  concrete loss (2x)  {-terms['concrete_loss_db']:+9.2f} dB")
    print(f"  insertion loss      {-terms['insertion_loss_db']:+9.2f} dB")
    print(f"  noise floor         {terms['noise_floor_dbm']:9.2f} dBm")
    print(f"  SNR                 {terms['snr_db']:9.2f} dB (threshold {link.snr_threshold_db:.2f} dB)")
    try:
        range_m = max_read_range_m(link, medium)
        print(f"  max air read range  {range_m:9.3f} m")
    except NoLinkError as exc:
        print(f"  max air read range  no link ({exc})")
    return EXIT_OK


def cmd_fit(args: argparse.Namespace) -> int:
    try:
        spectrum = read_spectrum_csv(args.spectrum)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    try:
        reading = detect_resonance(spectrum)
    except NoResonanceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_RESONANCE
    print(reading_to_json(reading))
    return EXIT_OK


def cmd_calibrate_noise(args: argparse.Namespace) -> int:
    try:
        config = load_scenario_config(args.config)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    if args.period_s is not None:
        config = replace(config, interrogation_period_s=args.period_s)
    try:
        result = calibrate_noise(
            config,
            fresh_target_c=args.fresh,
            hardened_target_c=args.hardened,
            replicas=args.replicas,
            base_seed=args.seed,
        )
    except CalibrationInfeasibleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        if exc.frontier is not None:
            print(
                f"achievable frontier: fresh {exc.frontier[0]:.4g} degC, "
                f"hardened {exc.frontier[1]:.4g} degC",
                file=sys.stderr,
            )
        return EXIT_INFEASIBLE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT

    payload = {
        "if_noise_sigma_db": result.if_noise_sigma_db,
        "achieved_fresh_std_c": result.fresh_std_c,
        "achieved_hardened_std_c": result.hardened_std_c,
        "target_fresh_std_c": result.fresh_target_c,
        "target_hardened_std_c": result.hardened_target_c,
        "replicas": result.replicas,
        "base_seed": result.base_seed,
        "evaluations": result.evaluations,
    }
    text = json.dumps(payload, indent=2) + "\n"
    if args.out is not None:
        atomic_write_text(Path(args.out), text)
    print(text, end="")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sawsense",
        description="Passive wireless SAW sensing in concrete: scenarios, link budgets, spectra.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("scenario", help="replay a scenario config to CSV/JSONL/summary")
    p.add_argument("--config", required=True,
                   help="config path, or bundled name (temperature-21day, weights-staircase, machine-cycle)")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--seed", type=int, default=None, help="override the config seed")
    p.add_argument("--verbose", action="store_true")
    p.set_defaults(func=cmd_scenario)

    p = sub.add_parser("linkbudget", help="print the two-way budget table and max read range")
    p.add_argument("--config", default=None, help="optional config supplying [link]/[environment]")
    p.add_argument("--freq-hz", type=float, default=None)
    p.add_argument("--tx-dbm", type=float, default=None)
    p.add_argument("--gain-reader-dbi", type=float, default=None)
    p.add_argument("--gain-sensor-dbi", type=float, default=None)
    p.add_argument("--air-m", type=float, default=None)
    p.add_argument("--cover-m", type=float, default=None)
    p.add_argument("--eps-r", type=float, default=None)
    p.add_argument("--tan-delta", type=float, default=None)
    p.add_argument("--insertion-db", type=float, default=None)
    p.add_argument("--noise-floor-dbm", type=float, default=None)
    p.add_argument("--threshold-db", type=float, default=None)
    p.set_defaults(func=cmd_linkbudget)

    p = sub.add_parser("fit", help="detect the resonance dip in a spectrum CSV")
    p.add_argument("spectrum", help="CSV file with freq_hz,s11_db columns")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("calibrate-noise", help="fit the sweep noise scale to precision targets")
    p.add_argument("--fresh", type=float, default=0.5, help="fresh-phase std target (degC)")
    p.add_argument("--hardened", type=float, default=0.1, help="hardened-phase std target (degC)")
    p.add_argument("--config", default="temperature-21day")
    p.add_argument("--out", default=None, help="write the calibration JSON here")
    p.add_argument("--replicas", type=int, default=6)
    p.add_argument("--seed", type=int, default=1000)
    p.add_argument("--period-s", type=float, default=None,
                   help="override interrogation period for faster Monte-Carlo")
    p.set_defaults(func=cmd_calibrate_noise)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except Exception as exc:  # pragma: no cover - defensive runtime guard
        print(f"runtime error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
