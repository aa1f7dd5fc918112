"""Passive wireless SAW sensing in reinforced concrete, at desk scale.

Simulates the full interrogation chain (resonator -> lossy concrete RF
channel -> swept reader -> frequency estimation -> strain/temperature
inversion) plus the beam mechanics and curing environment needed to replay
embedded-sensor experiments end to end.
"""

from .calibrate import CalibrationInfeasibleError, CalibrationResult, calibrate_noise
from .interrogator import (
    NoResonanceError,
    Reading,
    SweepConfig,
    detect_resonance,
    invert_strain,
    invert_temperature,
    sweep,
)
from .resonator import ResonatorParams, bvd_impedance, resonant_frequency, s11_response
from .rflink import (
    DRY_CONCRETE,
    FRESH_CONCRETE,
    DielectricMedium,
    LinkConfig,
    NoLinkError,
    attenuation_np_per_m,
    budget_breakdown,
    detuned_frequency,
    free_space_path_loss_db,
    max_read_range_m,
    round_trip_budget_db,
)
from .scenario import (
    CuringState,
    EnvironmentConfig,
    LoadProgram,
    ScenarioConfig,
    ScenarioResult,
    SeriesRecord,
    ambient_c,
    curing_state,
    hydration_temperature_c,
    run,
    summarize,
)
from .spectrum import Spectrum
from .structure import (
    BeamSpec,
    CreepParams,
    LoadStep,
    cracking_moment_nm,
    creep_drift_ue,
    elastic_modulus_gpa,
    load_for_strain_ue,
    rebar_strain_ue,
    staircase_calibration_scale,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "ResonatorParams",
    "resonant_frequency",
    "bvd_impedance",
    "s11_response",
    "Spectrum",
    "DielectricMedium",
    "LinkConfig",
    "NoLinkError",
    "DRY_CONCRETE",
    "FRESH_CONCRETE",
    "attenuation_np_per_m",
    "free_space_path_loss_db",
    "detuned_frequency",
    "round_trip_budget_db",
    "budget_breakdown",
    "max_read_range_m",
    "SweepConfig",
    "Reading",
    "NoResonanceError",
    "sweep",
    "detect_resonance",
    "invert_temperature",
    "invert_strain",
    "BeamSpec",
    "LoadStep",
    "CreepParams",
    "elastic_modulus_gpa",
    "rebar_strain_ue",
    "cracking_moment_nm",
    "load_for_strain_ue",
    "staircase_calibration_scale",
    "creep_drift_ue",
    "ScenarioConfig",
    "ScenarioResult",
    "SeriesRecord",
    "EnvironmentConfig",
    "LoadProgram",
    "CuringState",
    "hydration_temperature_c",
    "ambient_c",
    "curing_state",
    "run",
    "summarize",
    "calibrate_noise",
    "CalibrationResult",
    "CalibrationInfeasibleError",
]
