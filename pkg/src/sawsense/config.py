"""Scenario configuration files.

Configs are TOML (nested key-value with comments); a resolved run manifest
is the same structure serialized as JSON with every default filled in, and
either form can be loaded back. Validation errors name the offending key.
"""

from __future__ import annotations

import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from importlib import resources

from .interrogator import SweepConfig
from .resonator import ResonatorParams
from .rflink import DielectricMedium, LinkConfig
from .scenario import BeamSpec, CreepParams, EnvironmentConfig, LoadProgram, ScenarioConfig

__all__ = [
    "ConfigError",
    "BUNDLED_CONFIGS",
    "CONFIG_DIR_ENV",
    "resolve_config_path",
    "load_scenario_config",
    "scenario_config_from_dict",
    "scenario_config_to_dict",
    "load_link_config",
]

CONFIG_DIR_ENV = "SAWSENSE_CONFIG_DIR"
BUNDLED_CONFIGS = ("temperature-21day", "weights-staircase", "machine-cycle")

KG_TO_N = 9.81


class ConfigError(ValueError):
    """A configuration file failed validation; the message names the key."""


def _build(section: str, cls, data: dict, field_names: set[str]):
    unknown = set(data) - field_names
    if unknown:
        raise ConfigError(f"unknown key {section}.{sorted(unknown)[0]}")
    try:
        return cls(**data)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{section}: {exc}") from exc


def _float_section(section: str, data: Any) -> dict:
    if not isinstance(data, dict):
        raise ConfigError(f"{section} must be a table")
    out = {}
    for key, value in data.items():
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(f"{section}.{key} must be a number")
        out[key] = float(value)
    return out


_RESONATOR_KEYS = {
    "f0_hz", "q_factor", "c0_farad", "coupling_ratio", "strain_sens_ppm_per_ue",
    "tcf1_ppm_per_k", "tcf2_ppb_per_k2", "ref_temp_c", "z0_ohm",
}
_LINK_KEYS = {
    "freq_hz", "tx_power_dbm", "gain_reader_dbi", "gain_sensor_dbi", "air_distance_m",
    "cover_thickness_m", "insertion_loss_db", "noise_floor_dbm", "snr_threshold_db",
}
_SWEEP_KEYS = {"f_start_hz", "f_stop_hz", "n_points", "if_noise_sigma_db", "seed"}
_ENV_KEYS = {
    "base_c", "trend_k_per_day", "diurnal_amplitude_k", "exotherm_peak_k",
    "exotherm_peak_age_s", "start_age_s", "cure_tau_s",
    "fresh_eps_r", "fresh_tan_delta", "dry_eps_r", "dry_tan_delta",
}
_BEAM_KEYS = {
    "length_m", "span_m", "width_m", "height_m", "tension_bars", "compression_bars",
    "fc_prime_mpa", "es_gpa", "yield_strain_ue",
}
_CREEP_KEYS = {"amplitude_fraction", "tau_s", "threshold_ue"}
_LOAD_KEYS = {"mode", "steps_n", "steps_kg", "targets_ue", "hold_s",
              "ramp_rate_n_per_s", "calibrate_staircase"}
_TOP_KEYS = {
    "kind", "duration_s", "interrogation_period_s", "seed", "resonator", "link",
    "sweep", "environment", "beam", "creep", "loads", "mould_gap",
}


def _sweep_from_dict(data: dict) -> SweepConfig:
    fields = _float_section("sweep", data)
    if "n_points" in fields:
        fields["n_points"] = int(fields["n_points"])
    if "seed" in fields:
        fields["seed"] = int(fields["seed"])
    return _build("sweep", SweepConfig, fields, _SWEEP_KEYS)


def _environment_from_dict(data: dict) -> EnvironmentConfig:
    fields = _float_section("environment", data)
    unknown = set(fields) - _ENV_KEYS
    if unknown:
        raise ConfigError(f"unknown key environment.{sorted(unknown)[0]}")
    media = {}
    for state in ("fresh", "dry"):
        eps = fields.pop(f"{state}_eps_r", None)
        tan = fields.pop(f"{state}_tan_delta", None)
        if (eps is None) != (tan is None):
            raise ConfigError(f"environment.{state}_eps_r and {state}_tan_delta go together")
        if eps is not None:
            try:
                media[state] = DielectricMedium(eps_r=eps, tan_delta=tan)
            except ValueError as exc:
                raise ConfigError(f"environment.{state}_eps_r/tan_delta: {exc}") from exc
    return _build(
        "environment",
        EnvironmentConfig,
        {**fields, **media},
        {"base_c", "trend_k_per_day", "diurnal_amplitude_k", "exotherm_peak_k",
         "exotherm_peak_age_s", "start_age_s", "cure_tau_s", "fresh", "dry"},
    )


def _beam_from_dict(data: dict) -> BeamSpec:
    if not isinstance(data, dict):
        raise ConfigError("beam must be a table")
    fields = dict(data)
    for key in ("tension_bars", "compression_bars"):
        if key in fields:
            bars = fields[key]
            if not isinstance(bars, list) or not all(
                isinstance(b, list) and len(b) == 2 for b in bars
            ):
                raise ConfigError(f"beam.{key} must be a list of [diameter_m, depth_m] pairs")
            fields[key] = tuple((float(d), float(y)) for d, y in bars)
    for key, value in fields.items():
        if key not in ("tension_bars", "compression_bars"):
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise ConfigError(f"beam.{key} must be a number")
            fields[key] = float(value)
    return _build("beam", BeamSpec, fields, _BEAM_KEYS)


def _loads_from_dict(data: dict) -> LoadProgram:
    if not isinstance(data, dict):
        raise ConfigError("loads must be a table")
    fields = dict(data)
    unknown = set(fields) - _LOAD_KEYS
    if unknown:
        raise ConfigError(f"unknown key loads.{sorted(unknown)[0]}")
    mode = fields.pop("mode", None)
    if mode not in ("load-steps", "strain-targets"):
        raise ConfigError("loads.mode must be 'load-steps' or 'strain-targets'")
    sources = [k for k in ("steps_n", "steps_kg", "targets_ue") if k in fields]
    if len(sources) != 1:
        raise ConfigError("loads needs exactly one of steps_n, steps_kg, targets_ue")
    raw = fields.pop(sources[0])
    if not isinstance(raw, list) or not all(isinstance(v, (int, float)) for v in raw):
        raise ConfigError(f"loads.{sources[0]} must be a list of numbers")
    if mode == "load-steps" and sources[0] == "targets_ue":
        raise ConfigError("loads.targets_ue requires mode 'strain-targets'")
    if mode == "strain-targets" and sources[0] != "targets_ue":
        raise ConfigError("loads.mode 'strain-targets' requires targets_ue")
    steps = tuple(float(v) * (KG_TO_N if sources[0] == "steps_kg" else 1.0) for v in raw)
    kwargs: dict[str, Any] = {"mode": mode, "steps": steps}
    if "hold_s" in fields:
        kwargs["hold_s"] = float(fields.pop("hold_s"))
    if "ramp_rate_n_per_s" in fields:
        kwargs["ramp_rate_n_per_s"] = float(fields.pop("ramp_rate_n_per_s"))
    if "calibrate_staircase" in fields:
        flag = fields.pop("calibrate_staircase")
        if not isinstance(flag, bool):
            raise ConfigError("loads.calibrate_staircase must be a boolean")
        kwargs["calibrate_staircase"] = flag
    return _build("loads", LoadProgram, kwargs,
                  {"mode", "steps", "hold_s", "ramp_rate_n_per_s", "calibrate_staircase"})


def scenario_config_from_dict(data: dict) -> ScenarioConfig:
    """Build and validate a ScenarioConfig from parsed TOML/JSON data."""
    if not isinstance(data, dict):
        raise ConfigError("top-level config must be a table")
    unknown = set(data) - _TOP_KEYS
    if unknown:
        raise ConfigError(f"unknown key {sorted(unknown)[0]}")
    for key in ("kind", "duration_s", "interrogation_period_s", "seed", "sweep"):
        if key not in data:
            raise ConfigError(f"missing required key {key}")

    resonator = _build(
        "resonator", ResonatorParams,
        _float_section("resonator", data.get("resonator", {})), _RESONATOR_KEYS,
    )
    link = _build("link", LinkConfig, _float_section("link", data.get("link", {})), _LINK_KEYS)
    sweep = _sweep_from_dict(data["sweep"])
    environment = _environment_from_dict(data.get("environment", {}))
    beam = _beam_from_dict(data["beam"]) if "beam" in data else None
    creep = (
        _build("creep", CreepParams, _float_section("creep", data["creep"]), _CREEP_KEYS)
        if "creep" in data
        else None
    )
    loads = _loads_from_dict(data["loads"]) if "loads" in data else None
    mould_gap = None
    if "mould_gap" in data:
        gap = _float_section("mould_gap", data["mould_gap"])
        if set(gap) != {"start_s", "stop_s"}:
            raise ConfigError("mould_gap needs exactly start_s and stop_s")
        mould_gap = (gap["start_s"], gap["stop_s"])

    try:
        return ScenarioConfig(
            kind=str(data["kind"]),
            duration_s=float(data["duration_s"]),
            interrogation_period_s=float(data["interrogation_period_s"]),
            seed=int(data["seed"]),
            resonator=resonator,
            link=link,
            sweep=sweep,
            environment=environment,
            beam=beam,
            creep=creep,
            loads=loads,
            mould_gap_s=mould_gap,
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def scenario_config_to_dict(config: ScenarioConfig) -> dict:
    """Fully resolved configuration (defaults included); loads back identically."""
    env = config.environment
    out: dict[str, Any] = {
        "kind": config.kind,
        "duration_s": config.duration_s,
        "interrogation_period_s": config.interrogation_period_s,
        "seed": config.seed,
        "resonator": {k: getattr(config.resonator, k) for k in sorted(_RESONATOR_KEYS)},
        "link": {k: getattr(config.link, k) for k in sorted(_LINK_KEYS)},
        "sweep": {k: getattr(config.sweep, k) for k in sorted(_SWEEP_KEYS)},
        "environment": {
            "base_c": env.base_c,
            "trend_k_per_day": env.trend_k_per_day,
            "diurnal_amplitude_k": env.diurnal_amplitude_k,
            "exotherm_peak_k": env.exotherm_peak_k,
            "exotherm_peak_age_s": env.exotherm_peak_age_s,
            "start_age_s": env.start_age_s,
            "cure_tau_s": env.cure_tau_s,
            "fresh_eps_r": env.fresh.eps_r,
            "fresh_tan_delta": env.fresh.tan_delta,
            "dry_eps_r": env.dry.eps_r,
            "dry_tan_delta": env.dry.tan_delta,
        },
    }
    if config.beam is not None:
        beam = config.beam
        out["beam"] = {
            "length_m": beam.length_m,
            "span_m": beam.span_m,
            "width_m": beam.width_m,
            "height_m": beam.height_m,
            "tension_bars": [list(b) for b in beam.tension_bars],
            "compression_bars": [list(b) for b in beam.compression_bars],
            "fc_prime_mpa": beam.fc_prime_mpa,
            "es_gpa": beam.es_gpa,
            "yield_strain_ue": beam.yield_strain_ue,
        }
    if config.creep is not None:
        out["creep"] = {k: getattr(config.creep, k) for k in sorted(_CREEP_KEYS)}
    if config.loads is not None:
        loads = config.loads
        key = "targets_ue" if loads.mode == "strain-targets" else "steps_n"
        out["loads"] = {
            "mode": loads.mode,
            key: list(loads.steps),
            "hold_s": loads.hold_s,
            "ramp_rate_n_per_s": loads.ramp_rate_n_per_s,
            "calibrate_staircase": loads.calibrate_staircase,
        }
    if config.mould_gap_s is not None:
        out["mould_gap"] = {"start_s": config.mould_gap_s[0], "stop_s": config.mould_gap_s[1]}
    return out


def bundled_config_dir() -> Path:
    return Path(resources.files("sawsense") / "configs")  # type: ignore[arg-type]


def resolve_config_path(name_or_path: str) -> Path:
    """Resolve a config argument: explicit path, else $SAWSENSE_CONFIG_DIR,
    else the bundled configs (bare names may omit the .toml suffix)."""
    direct = Path(name_or_path)
    if direct.exists():
        return direct
    candidates = []
    env_dir = os.environ.get(CONFIG_DIR_ENV)
    if env_dir:
        candidates.append(Path(env_dir))
    candidates.append(bundled_config_dir())
    for base in candidates:
        for suffix in ("", ".toml"):
            candidate = base / (name_or_path + suffix)
            if candidate.exists():
                return candidate
    raise ConfigError(
        f"config '{name_or_path}' not found (looked in {[str(c) for c in candidates]})"
    )


def load_scenario_config(path: str | Path) -> ScenarioConfig:
    """Load a scenario config from a TOML file or a JSON run manifest."""
    path = resolve_config_path(str(path))
    text = path.read_text()
    try:
        if path.suffix == ".json":
            data = json.loads(text)
        else:
            data = tomllib.loads(text)
    except (json.JSONDecodeError, tomllib.TOMLDecodeError) as exc:
        raise ConfigError(f"cannot parse {path}: {exc}") from exc
    return scenario_config_from_dict(data)


def load_link_config(path: str | Path) -> tuple[LinkConfig, DielectricMedium]:
    """Link budget inputs from a config file: its [link] table plus the
    dry-state medium from [environment] (defaults when absent)."""
    path = resolve_config_path(str(path))
    try:
        data = tomllib.loads(path.read_text())
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"cannot parse {path}: {exc}") from exc
    link = _build("link", LinkConfig, _float_section("link", data.get("link", {})), _LINK_KEYS)
    env = _environment_from_dict(data.get("environment", {}))
    return link, env.dry
