"""End-to-end experiment replay.

Generates environmental ground truth (hydration exotherm, diurnal ambient,
curing dielectric state), drives interrogations on a schedule through the
RF link, applies measurement noise and adhesive creep, and emits paired
ground-truth / recovered time series with summary statistics.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable, Sequence

import numpy as np

from .interrogator import (
    NoResonanceError,
    Reading,
    SweepConfig,
    detect_resonance,
    invert_strain,
    invert_temperature,
    sweep,
)
from .resonator import ResonatorParams, resonant_frequency, s11_response
from .rflink import (
    DRY_CONCRETE,
    FRESH_CONCRETE,
    DielectricMedium,
    LinkConfig,
    round_trip_budget_db,
)
from .structure import (
    BeamSpec,
    CreepParams,
    creep_drift_ue,
    load_for_strain_ue,
    rebar_strain_ue,
    staircase_calibration_scale,
)

__all__ = [
    "KINDS",
    "EnvironmentConfig",
    "LoadProgram",
    "ScenarioConfig",
    "CuringState",
    "SeriesRecord",
    "ScenarioResult",
    "hydration_temperature_c",
    "ambient_c",
    "curing_state",
    "run",
    "summarize",
    "FRESH_WINDOW_AGE_S",
    "HARDENED_AGE_S",
]

KINDS = ("temperature-21day", "weights-staircase", "machine-cycle")

# Concrete-age windows used for per-phase statistics: the fresh phase spans
# recording start (3 h after casting) through the first day; hardened from
# day 9 (demoulding) onward.
FRESH_WINDOW_AGE_S = (3.0 * 3600.0, 24.0 * 3600.0)
HARDENED_AGE_S = 9.0 * 86400.0


@dataclass(frozen=True)
class EnvironmentConfig:
    """Ambient climate, hydration exotherm, and dielectric curing state."""

    base_c: float = 20.0
    trend_k_per_day: float = 0.0
    diurnal_amplitude_k: float = 0.0
    exotherm_peak_k: float = 0.0
    exotherm_peak_age_s: float = 64800.0
    start_age_s: float = 0.0
    fresh: DielectricMedium = FRESH_CONCRETE
    dry: DielectricMedium = DRY_CONCRETE
    cure_tau_s: float = 259200.0

    def __post_init__(self) -> None:
        if not self.exotherm_peak_age_s > 0:
            raise ValueError("exotherm_peak_age_s must be positive")
        if not self.cure_tau_s > 0:
            raise ValueError("cure_tau_s must be positive")
        if self.start_age_s < 0:
            raise ValueError("start_age_s must be >= 0")


@dataclass(frozen=True)
class LoadProgram:
    """Timed load schedule for the strain scenarios.

    mode "load-steps": ``steps`` are mid-span loads (N), each held for
    ``hold_s`` with instantaneous transitions (weights placed by hand).

    mode "strain-targets": ``steps`` are rebar strain targets (microstrain);
    loads derive from the inverse section model and transitions ramp at
    ``ramp_rate_n_per_s`` (testing-machine drive) before each hold.
    """

    mode: str
    steps: tuple[float, ...]
    hold_s: float
    ramp_rate_n_per_s: float = 60.0
    calibrate_staircase: bool = False

    def __post_init__(self) -> None:
        if self.mode not in ("load-steps", "strain-targets"):
            raise ValueError("mode must be 'load-steps' or 'strain-targets'")
        if not self.steps:
            raise ValueError("steps must be non-empty")
        if not self.hold_s > 0:
            raise ValueError("hold_s must be positive")
        if self.mode == "strain-targets" and not self.ramp_rate_n_per_s > 0:
            raise ValueError("ramp_rate_n_per_s must be positive")


@dataclass(frozen=True)
class CuringState:
    """Dielectric state at a given concrete age plus its link improvement."""

    age_s: float
    medium: DielectricMedium
    snr_bonus_db: float


@dataclass(frozen=True)
class SeriesRecord:
    """One interrogation tick: ground truth plus the reading (None = dropout)."""

    timestamp_s: float
    truth_temp_c: float
    truth_strain_ue: float
    reading: Reading | None


@dataclass(frozen=True)
class ScenarioConfig:
    """Full description of one replayable experiment."""

    kind: str
    duration_s: float
    interrogation_period_s: float
    seed: int
    resonator: ResonatorParams
    link: LinkConfig
    sweep: SweepConfig
    environment: EnvironmentConfig = EnvironmentConfig()
    beam: BeamSpec | None = None
    creep: CreepParams | None = None
    loads: LoadProgram | None = None
    mould_gap_s: tuple[float, float] | None = None

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}")
        if not self.duration_s > 0:
            raise ValueError("duration_s must be positive")
        if not self.interrogation_period_s > 0:
            raise ValueError("interrogation_period_s must be positive")
        if self.kind != "temperature-21day":
            if self.beam is None:
                raise ValueError(f"{self.kind} requires a beam specification")
            if self.loads is None:
                raise ValueError(f"{self.kind} requires a load program")
        if self.mould_gap_s is not None and self.mould_gap_s[0] > self.mould_gap_s[1]:
            raise ValueError("mould_gap_s must be an ordered (start, stop) pair")


@dataclass(frozen=True)
class ScenarioResult:
    records: list[SeriesRecord]
    summary: dict


def hydration_temperature_c(
    age_s: float,
    ambient_fn: Callable[[float], float],
    exotherm_peak_k: float,
    peak_age_s: float,
) -> float:
    """Concrete temperature during early hydration.

    ambient(age) plus an exotherm pulse (age/peak_age)*exp(1 - age/peak_age)
    scaled by exotherm_peak_k: zero at casting, peaking exactly at
    peak_age_s with value exotherm_peak_k, then decaying toward zero.
    """
    if not peak_age_s > 0:
        raise ValueError("peak_age_s must be positive")
    x = age_s / peak_age_s
    return ambient_fn(age_s) + exotherm_peak_k * x * math.exp(1.0 - x)


def ambient_c(
    age_s: float, base_c: float, trend_k_per_day: float, diurnal_amplitude_k: float
) -> float:
    """Ambient temperature: base plus linear warming trend plus day-night sine."""
    day = age_s / 86400.0
    return base_c + trend_k_per_day * day + diurnal_amplitude_k * math.sin(2.0 * math.pi * day)


def curing_state(
    age_s: float,
    fresh: DielectricMedium,
    dry: DielectricMedium,
    cure_tau_s: float,
    link: LinkConfig,
) -> CuringState:
    """Dielectric state at a concrete age, interpolating fresh -> dry.

    Each parameter decays exponentially from its fresh value toward the dry
    asymptote with time constant cure_tau_s; the SNR bonus is the link
    budget at the interpolated medium relative to the fresh state.
    """
    if not cure_tau_s > 0:
        raise ValueError("cure_tau_s must be positive")
    w = math.exp(-age_s / cure_tau_s)
    medium = DielectricMedium(
        eps_r=dry.eps_r + (fresh.eps_r - dry.eps_r) * w,
        tan_delta=dry.tan_delta + (fresh.tan_delta - dry.tan_delta) * w,
    )
    bonus = round_trip_budget_db(link, medium) - round_trip_budget_db(link, fresh)
    return CuringState(age_s=age_s, medium=medium, snr_bonus_db=bonus)


def _staircase_load_fn(program: LoadProgram, beam: BeamSpec) -> Callable[[float], float]:
    steps = program.steps
    hold = program.hold_s

    def load_at(t: float) -> float:
        idx = min(int(t // hold), len(steps) - 1)
        return steps[idx]

    return load_at


def _ramped_load_fn(
    program: LoadProgram, beam: BeamSpec, calibration: float | None
) -> Callable[[float], float]:
    targets = [load_for_strain_ue(beam, s, calibration) for s in program.steps]
    knots_t: list[float] = []
    knots_l: list[float] = []
    t = 0.0
    prev = targets[0]
    for load in targets:
        ramp = abs(load - prev) / program.ramp_rate_n_per_s
        if ramp > 0.0:
            knots_t.append(t + ramp)
            knots_l.append(load)
            t += ramp
        elif not knots_t:
            knots_t.append(0.0)
            knots_l.append(load)
        knots_t.append(t + program.hold_s)
        knots_l.append(load)
        t += program.hold_s
        prev = load

    kt = np.asarray(knots_t)
    kl = np.asarray(knots_l)

    def load_at(t_s: float) -> float:
        return float(np.interp(t_s, kt, kl))

    return load_at


def program_duration_s(program: LoadProgram, beam: BeamSpec) -> float:
    """Natural duration of a load program (holds plus ramps)."""
    if program.mode == "load-steps":
        return program.hold_s * len(program.steps)
    calibration = staircase_calibration_scale(beam) if program.calibrate_staircase else None
    targets = [load_for_strain_ue(beam, s, calibration) for s in program.steps]
    total = program.hold_s * len(targets)
    prev = targets[0]
    for load in targets:
        total += abs(load - prev) / program.ramp_rate_n_per_s
        prev = load
    return total


def _dip_scale(resonator: ResonatorParams, sweep_cfg: SweepConfig) -> float:
    """Reader zero: ratio of the ideal dip location to the series resonance.

    The |S11| minimum is displaced from the series resonance by a fraction
    of a linewidth set by the static capacitance, and the displacement
    scales with the resonance frequency itself. A noiseless baseline
    acquisition at reference conditions measures the ratio once; dividing
    later estimates by it de-biases the whole chain.
    """
    ideal = s11_response(resonator, 0.0, resonator.ref_temp_c, sweep_cfg.grid())
    try:
        ref = detect_resonance(ideal)
    except NoResonanceError:
        return 1.0
    return ref.freq_hz / resonant_frequency(resonator, 0.0, resonator.ref_temp_c)


def run(config: ScenarioConfig) -> ScenarioResult:
    """Replay one scenario tick by tick; fully deterministic per seed.

    Per tick: environmental truth and curing state, link SNR, one noisy
    sweep, dip detection and inversion. The inversion uses the estimate
    corrected by the reader zero (see :func:`_dip_scale`); NoResonance
    outcomes are recorded as dropouts, not errors.
    """
    env = config.environment
    n_ticks = int(math.floor(config.duration_s / config.interrogation_period_s)) + 1
    tick_seeds = np.random.SeedSequence(config.seed).generate_state(n_ticks, dtype=np.uint64)

    calibration: float | None = None
    load_at: Callable[[float], float] | None = None
    if config.kind != "temperature-21day":
        assert config.beam is not None and config.loads is not None
        if config.loads.calibrate_staircase:
            calibration = staircase_calibration_scale(config.beam)
        if config.loads.mode == "load-steps":
            load_at = _staircase_load_fn(config.loads, config.beam)
        else:
            load_at = _ramped_load_fn(config.loads, config.beam, calibration)

    def ambient(age_s: float) -> float:
        return ambient_c(age_s, env.base_c, env.trend_k_per_day, env.diurnal_amplitude_k)

    dip_scale = _dip_scale(config.resonator, config.sweep)

    records: list[SeriesRecord] = []
    strain_history: list[tuple[float, float]] = []
    for k in range(n_ticks):
        t = k * config.interrogation_period_s
        age = env.start_age_s + t

        if config.kind == "temperature-21day":
            truth_temp = hydration_temperature_c(
                age, ambient, env.exotherm_peak_k, env.exotherm_peak_age_s
            )
            truth_strain = 0.0
            sensed_strain = 0.0
        else:
            truth_temp = ambient(age)
            truth_strain = rebar_strain_ue(config.beam, load_at(t), calibration)
            strain_history.append((t, truth_strain))
            drift = (
                creep_drift_ue(strain_history, config.creep, t)
                if config.creep is not None
                else 0.0
            )
            sensed_strain = truth_strain + drift

        if config.mould_gap_s is not None and (
            config.mould_gap_s[0] <= t <= config.mould_gap_s[1]
        ):
            records.append(SeriesRecord(t, truth_temp, truth_strain, None))
            continue

        state = curing_state(age, env.fresh, env.dry, env.cure_tau_s, config.link)
        link_snr = round_trip_budget_db(config.link, state.medium)

        cfg = replace(config.sweep, seed=int(tick_seeds[k]))
        spectrum = sweep(config.resonator, sensed_strain, truth_temp, link_snr, cfg)
        reading: Reading | None
        try:
            reading = detect_resonance(spectrum, timestamp_s=t)
        except NoResonanceError:
            reading = None
        if reading is not None:
            corrected_hz = reading.freq_hz / dip_scale
            try:
                if config.kind == "temperature-21day":
                    reading = replace(
                        reading, temp_c=invert_temperature(corrected_hz, config.resonator)
                    )
                else:
                    reading = replace(
                        reading,
                        strain_ue=invert_strain(corrected_hz, truth_temp, config.resonator),
                    )
            except ValueError:
                # estimate outside the inversion span: unusable, count as dropout
                reading = None
        records.append(SeriesRecord(t, truth_temp, truth_strain, reading))

    return ScenarioResult(records=records, summary=summarize(records, config))


def _std(values: list[float]) -> float | None:
    if len(values) < 2:
        return None
    return float(np.std(np.asarray(values), ddof=1))


def _mean(values: list[float]) -> float | None:
    if not values:
        return None
    return float(np.mean(np.asarray(values)))


def _trend_stats(records: list[SeriesRecord], attr: str) -> dict:
    pts = [(r.timestamp_s, getattr(r.reading, attr)) for r in records if r.reading is not None]
    if not pts:
        return {"first": None, "last": None, "slope_per_day": None}
    tenth = max(1, len(pts) // 10)
    first = float(np.mean([v for _, v in pts[:tenth]]))
    last = float(np.mean([v for _, v in pts[-tenth:]]))
    slope = None
    if len(pts) >= 2:
        days = np.asarray([t for t, _ in pts]) / 86400.0
        vals = np.asarray([v for _, v in pts])
        slope = float(np.polyfit(days, vals, 1)[0])
    return {"first": first, "last": last, "slope_per_day": slope}


def _hold_windows(records: list[SeriesRecord]) -> list[dict]:
    holds: list[dict] = []
    i = 0
    while i < len(records):
        j = i
        while (
            j + 1 < len(records)
            and abs(records[j + 1].truth_strain_ue - records[i].truth_strain_ue) < 1e-9
        ):
            j += 1
        if j > i:
            window = records[i : j + 1]
            recovered = [
                r.reading.strain_ue
                for r in window
                if r.reading is not None and r.reading.strain_ue is not None
            ]
            drift = recovered[-1] - recovered[0] if len(recovered) >= 2 else None
            holds.append(
                {
                    "t_start_s": window[0].timestamp_s,
                    "t_end_s": window[-1].timestamp_s,
                    "truth_strain_ue": window[0].truth_strain_ue,
                    "n": len(window),
                    "drift_ue": drift,
                }
            )
        i = j + 1
    return holds


def summarize(records: Sequence[SeriesRecord], config: ScenarioConfig) -> dict:
    """Windowed error statistics, SNR/amplitude trends, and per-hold drift."""
    records = list(records)
    if not records:
        raise ValueError("cannot summarize an empty record list")
    n = len(records)
    dropouts = sum(1 for r in records if r.reading is None)
    summary: dict = {
        "kind": config.kind,
        "n_records": n,
        "n_dropouts": dropouts,
        "dropout_rate": dropouts / n,
        "snr_db": _trend_stats(records, "snr_db"),
        "amplitude_db": _trend_stats(records, "amplitude_db"),
    }

    start_age = config.environment.start_age_s
    if config.kind == "temperature-21day":
        errors = [
            (start_age + r.timestamp_s, r.reading.temp_c - r.truth_temp_c)
            for r in records
            if r.reading is not None and r.reading.temp_c is not None
        ]
        all_errs = [e for _, e in errors]
        fresh = [e for a, e in errors if FRESH_WINDOW_AGE_S[0] <= a <= FRESH_WINDOW_AGE_S[1]]
        hardened = [e for a, e in errors if a >= HARDENED_AGE_S]
        summary["temp_error_mean_c"] = _mean(all_errs)
        summary["temp_error_std_c"] = _std(all_errs)
        summary["phases"] = {
            "fresh": {
                "window_age_s": list(FRESH_WINDOW_AGE_S),
                "n": len(fresh),
                "error_std_c": _std(fresh),
            },
            "hardened": {
                "window_age_s": [HARDENED_AGE_S, None],
                "n": len(hardened),
                "error_std_c": _std(hardened),
            },
        }
    else:
        errors = [
            r.reading.strain_ue - r.truth_strain_ue
            for r in records
            if r.reading is not None and r.reading.strain_ue is not None
        ]
        summary["strain_error_mean_ue"] = _mean(errors)
        summary["strain_error_std_ue"] = _std(errors)
        summary["holds"] = _hold_windows(records)

    return summary
