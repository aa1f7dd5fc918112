"""One-port SAW resonator model.

Resonance frequency as a function of strain and temperature, plus the
electrical reflection response of the device through a Butterworth-Van Dyke
(BVD) equivalent circuit: a motional RLC branch in parallel with the static
capacitance of the transducer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .spectrum import Spectrum

__all__ = [
    "ResonatorParams",
    "resonant_frequency",
    "motional_elements",
    "bvd_impedance",
    "s11_response",
    "STRAIN_ENVELOPE_UE",
    "TEMP_ENVELOPE_C",
]

# Calibrated operating envelope of the frequency model.
STRAIN_ENVELOPE_UE = 5000.0
TEMP_ENVELOPE_C = (-40.0, 150.0)


@dataclass(frozen=True)
class ResonatorParams:
    """Electrical and sensitivity description of a one-port SAW resonator.

    Parameters
    ----------
    f0_hz:
        Nominal series-resonance frequency at reference conditions (Hz).
    q_factor:
        Unloaded quality factor.
    c0_farad:
        Static (interdigital) capacitance (F).
    coupling_ratio:
        Motional-to-static capacitance ratio Cm/C0.
    strain_sens_ppm_per_ue:
        Signed strain sensitivity (ppm per microstrain). Tension lowering
        the frequency corresponds to a negative value.
    tcf1_ppm_per_k, tcf2_ppb_per_k2:
        First/second-order temperature coefficients of frequency.
    ref_temp_c:
        Temperature at which f0_hz applies (degC).
    z0_ohm:
        Reference impedance for S11 (ohm).
    """

    f0_hz: float = 869e6
    q_factor: float = 8000.0
    c0_farad: float = 2e-12
    coupling_ratio: float = 2.5e-4
    strain_sens_ppm_per_ue: float = -0.6
    tcf1_ppm_per_k: float = -40.0
    tcf2_ppb_per_k2: float = 0.0
    ref_temp_c: float = 25.0
    z0_ohm: float = 50.0

    def __post_init__(self) -> None:
        if not self.f0_hz > 0:
            raise ValueError("f0_hz must be positive")
        if not self.q_factor > 1:
            raise ValueError("q_factor must exceed 1")
        if not self.c0_farad > 0:
            raise ValueError("c0_farad must be positive")
        if not self.coupling_ratio > 0:
            raise ValueError("coupling_ratio must be positive")
        if not self.z0_ohm > 0:
            raise ValueError("z0_ohm must be positive")


def resonant_frequency(params: ResonatorParams, strain_ue: float, temp_c: float) -> float:
    """Series-resonance frequency under strain (microstrain) and temperature (degC).

    Additive model: f0 * (1 + s*eps*1e-6 + tcf1*dT*1e-6 + tcf2*dT^2*1e-9)
    with dT measured from the reference temperature. Exact arithmetic, no noise.

    Raises
    ------
    ValueError
        If strain or temperature lies outside the calibrated envelope
        (+-5000 microstrain, -40..+150 degC).
    """
    if abs(strain_ue) > STRAIN_ENVELOPE_UE:
        raise ValueError(
            f"strain {strain_ue} ue outside calibrated envelope +-{STRAIN_ENVELOPE_UE:.0f} ue"
        )
    if not TEMP_ENVELOPE_C[0] <= temp_c <= TEMP_ENVELOPE_C[1]:
        raise ValueError(
            f"temperature {temp_c} C outside calibrated envelope "
            f"{TEMP_ENVELOPE_C[0]:.0f}..{TEMP_ENVELOPE_C[1]:.0f} C"
        )
    dt = temp_c - params.ref_temp_c
    rel = (
        params.strain_sens_ppm_per_ue * strain_ue * 1e-6
        + params.tcf1_ppm_per_k * dt * 1e-6
        + params.tcf2_ppb_per_k2 * dt * dt * 1e-9
    )
    return params.f0_hz * (1.0 + rel)


def motional_elements(params: ResonatorParams, fs_hz: float) -> tuple[float, float, float]:
    """Motional (Rm, Lm, Cm) tuned so the series resonance sits at fs_hz.

    Cm = coupling_ratio * C0, Lm = 1/((2*pi*fs)^2 * Cm), Rm = 2*pi*fs*Lm/Q.
    """
    cm = params.coupling_ratio * params.c0_farad
    w_s = 2.0 * math.pi * fs_hz
    lm = 1.0 / (w_s * w_s * cm)
    rm = w_s * lm / params.q_factor
    return rm, lm, cm


def bvd_impedance(
    params: ResonatorParams,
    strain_ue: float,
    temp_c: float,
    freq_hz: float | np.ndarray,
) -> complex | np.ndarray:
    """Complex one-port impedance Z(f) of the BVD circuit (ohm).

    Static branch Zc0 in parallel with the motional branch
    Rm + j*w*Lm + 1/(j*w*Cm); the motional branch is tuned so its series
    resonance equals resonant_frequency(params, strain_ue, temp_c).

    Accepts a scalar frequency or an array; frequencies must be positive.
    """
    freq = np.asarray(freq_hz, dtype=float)
    if np.any(freq <= 0):
        raise ValueError("freq_hz must be positive")
    fs = resonant_frequency(params, strain_ue, temp_c)
    rm, lm, cm = motional_elements(params, fs)
    w = 2.0 * np.pi * freq
    z_mot = rm + 1j * (w * lm - 1.0 / (w * cm))
    z_c0 = 1.0 / (1j * w * params.c0_farad)
    z = z_c0 * z_mot / (z_c0 + z_mot)
    if np.isscalar(freq_hz):
        return complex(z)
    return z


def s11_response(
    params: ResonatorParams,
    strain_ue: float,
    temp_c: float,
    freq_grid_hz: np.ndarray,
) -> Spectrum:
    """Noiseless |S11| in dB over a strictly increasing frequency grid.

    S11(f) = (Z - Z0)/(Z + Z0) per grid point. If the grid does not cover
    the shifted series resonance the returned spectrum carries the
    ``truncated`` flag (the dip may be cut off); this is a warning, not an
    error.
    """
    grid = np.asarray(freq_grid_hz, dtype=float)
    if grid.ndim != 1 or grid.size < 2:
        raise ValueError("freq_grid_hz must be a 1-d grid with at least 2 points")
    if not np.all(np.diff(grid) > 0):
        raise ValueError("freq_grid_hz must be strictly increasing")
    fs = resonant_frequency(params, strain_ue, temp_c)
    z = bvd_impedance(params, strain_ue, temp_c, grid)
    s11 = (z - params.z0_ohm) / (z + params.z0_ohm)
    mag = np.abs(s11)
    # Guard against log(0) at an exactly matched point.
    db = 20.0 * np.log10(np.maximum(mag, 1e-300))
    truncated = not (grid[0] <= fs <= grid[-1])
    return Spectrum(freqs_hz=grid, s11_db=db, truncated=truncated)
