"""Simulated swept-frequency reader.

Synthesizes a noisy S11 sweep through the RF channel, finds the resonance
dip, estimates frequency / dip amplitude / SNR, and inverts the estimated
frequency into temperature or strain.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .resonator import ResonatorParams, resonant_frequency, s11_response
from .spectrum import Spectrum

__all__ = [
    "SweepConfig",
    "Reading",
    "NoResonanceError",
    "REF_LINK_SNR_DB",
    "sweep",
    "detect_resonance",
    "invert_temperature",
    "invert_strain",
]

# Link SNR at which the per-point noise sigma equals SweepConfig.if_noise_sigma_db
# and the dip is shown at full depth.
REF_LINK_SNR_DB = 20.0

# Detection floor: dips this shallow (dB) are treated as absent even in a
# noiseless sweep.
_MIN_DIP_DB = 1e-9
_MIN_SIGMA_DB = 1e-12

_INVERSION_SPAN_K = 150.0


class NoResonanceError(RuntimeError):
    """Raised when no dip stands clear of the spectrum's noise floor."""


@dataclass(frozen=True)
class SweepConfig:
    """Reader sweep settings: band, grid size, noise level, RNG seed."""

    f_start_hz: float
    f_stop_hz: float
    n_points: int = 1001
    if_noise_sigma_db: float = 0.0
    seed: int = 0

    def __post_init__(self) -> None:
        if not self.f_start_hz < self.f_stop_hz:
            raise ValueError("f_start_hz must be below f_stop_hz")
        if self.n_points < 16:
            raise ValueError("n_points must be at least 16")
        if self.if_noise_sigma_db < 0:
            raise ValueError("if_noise_sigma_db must be >= 0")

    def grid(self) -> np.ndarray:
        return np.linspace(self.f_start_hz, self.f_stop_hz, self.n_points)


@dataclass(frozen=True)
class Reading:
    """One interrogation result.

    amplitude_db is the dip depth below the spectrum baseline (>= 0);
    temp_c / strain_ue are filled only when the corresponding inversion ran.
    """

    timestamp_s: float
    freq_hz: float
    amplitude_db: float
    snr_db: float
    temp_c: float | None = None
    strain_ue: float | None = None


def _noise_sigma_db(if_noise_sigma_db: float, link_snr_db: float) -> float:
    return if_noise_sigma_db * 10.0 ** (-(link_snr_db - REF_LINK_SNR_DB) / 20.0)


def _depth_scale(link_snr_db: float) -> float:
    # Below the reference SNR the returned echo weakens and the visible dip
    # shrinks proportionally (in dB); above it the dip is fully developed.
    return min(1.0, 10.0 ** ((link_snr_db - REF_LINK_SNR_DB) / 20.0))


def sweep(
    resonator: ResonatorParams,
    strain_ue: float,
    temp_c: float,
    link_snr_db: float,
    cfg: SweepConfig,
) -> Spectrum:
    """Acquire one noisy S11 sweep through a link with the given SNR.

    The ideal resonator response is scaled in depth by the link budget and
    per-point Gaussian noise is added on the dB magnitude, with sigma
    if_noise_sigma_db * 10^(-(link_snr_db - 20)/20). Deterministic for a
    fixed cfg.seed.
    """
    ideal = s11_response(resonator, strain_ue, temp_c, cfg.grid())
    scaled = ideal.s11_db * _depth_scale(link_snr_db)
    sigma = _noise_sigma_db(cfg.if_noise_sigma_db, link_snr_db)
    if sigma > 0.0:
        rng = np.random.default_rng(cfg.seed)
        scaled = scaled + rng.normal(0.0, sigma, scaled.size)
    return Spectrum(freqs_hz=ideal.freqs_hz, s11_db=scaled, truncated=ideal.truncated)


def _parabolic_vertex(x: np.ndarray, y: np.ndarray) -> float:
    """Vertex abscissa of the parabola through three points; exact for parabolas."""
    x0, x1, x2 = (x - x[1]).tolist()  # shift for conditioning
    y0, y1, y2 = y.tolist()
    denom = y0 * (x1 - x2) + y1 * (x2 - x0) + y2 * (x0 - x1)
    if denom == 0.0:
        return float(x[1])
    num = y0 * (x1 * x1 - x2 * x2) + y1 * (x2 * x2 - x0 * x0) + y2 * (x0 * x0 - x1 * x1)
    vertex = 0.5 * num / denom
    # Keep the refinement inside the bracketing interval.
    if not min(x0, x2) <= vertex <= max(x0, x2):
        return float(x[1])
    return float(vertex + x[1])


def detect_resonance(spectrum: Spectrum, timestamp_s: float = 0.0) -> Reading:
    """Locate the resonance dip and estimate frequency, amplitude and SNR.

    The global minimum of s11_db is refined by a 3-point parabolic
    interpolation. Amplitude is median(s11_db) - min; the noise sigma is a
    robust estimate from the median absolute deviation of first differences.

    Raises
    ------
    NoResonanceError
        If the dip does not exceed 3x the noise sigma (unreadable sensor).
    """
    s11 = spectrum.s11_db
    freqs = spectrum.freqs_hz
    i_min = int(np.argmin(s11))
    amplitude = float(np.median(s11) - s11[i_min])

    if len(s11) > 2:
        d = np.diff(s11)
        mad = float(np.median(np.abs(d - np.median(d))))
        # 1.4826*MAD estimates the sigma of the differences; first
        # differences of iid noise carry sqrt(2) times the point sigma.
        sigma = 1.4826 * mad / math.sqrt(2.0)
    else:
        sigma = 0.0

    if amplitude <= max(3.0 * sigma, _MIN_DIP_DB):
        raise NoResonanceError(
            f"dip of {amplitude:.3g} dB does not clear 3x noise sigma ({sigma:.3g} dB)"
        )

    if 0 < i_min < len(s11) - 1:
        freq = _parabolic_vertex(freqs[i_min - 1 : i_min + 2], s11[i_min - 1 : i_min + 2])
    else:
        freq = float(freqs[i_min])

    snr_db = 20.0 * math.log10(amplitude / max(sigma, _MIN_SIGMA_DB))
    return Reading(
        timestamp_s=timestamp_s, freq_hz=freq, amplitude_db=amplitude, snr_db=snr_db
    )


def invert_temperature(freq_hz: float, params: ResonatorParams) -> float:
    """Temperature (degC) whose thermal shift explains the observed frequency.

    Solves f/f0 - 1 = tcf1*dT*1e-6 + tcf2*dT^2*1e-9 for dT, picking the
    root nearest the reference temperature; strain is assumed zero.

    Raises
    ------
    ValueError
        If tcf1 is zero or no real root lies within +-150 K of reference.
    """
    if params.tcf1_ppm_per_k == 0.0:
        raise ValueError("tcf1_ppm_per_k must be nonzero to invert temperature")
    rel = freq_hz / params.f0_hz - 1.0
    a = params.tcf2_ppb_per_k2 * 1e-9
    b = params.tcf1_ppm_per_k * 1e-6
    if a == 0.0:
        dt = rel / b
        if abs(dt) > _INVERSION_SPAN_K:
            raise ValueError(f"temperature shift {dt:.1f} K outside +-150 K inversion span")
        return params.ref_temp_c + dt
    disc = b * b + 4.0 * a * rel
    if disc < 0.0:
        raise ValueError("no real temperature root for the observed frequency")
    sqrt_disc = math.sqrt(disc)
    roots = [(-b + sqrt_disc) / (2.0 * a), (-b - sqrt_disc) / (2.0 * a)]
    in_span = [r for r in roots if abs(r) <= _INVERSION_SPAN_K]
    if not in_span:
        raise ValueError("no temperature root within +-150 K of reference")
    dt = min(in_span, key=abs)
    return params.ref_temp_c + dt


def invert_strain(freq_hz: float, temp_c: float, params: ResonatorParams) -> float:
    """Strain (microstrain) after compensating the thermal shift at temp_c.

    eps = (f - f_temp_only)/f0 * 1e6 / s with f_temp_only the zero-strain
    frequency at the supplied temperature: the exact inverse of the
    additive frequency law, so round-trips are exact at any temperature.
    """
    if params.strain_sens_ppm_per_ue == 0.0:
        raise ValueError("strain_sens_ppm_per_ue must be nonzero to invert strain")
    f_temp_only = resonant_frequency(params, 0.0, temp_c)
    return (freq_hz - f_temp_only) / params.f0_hz * 1e6 / params.strain_sens_ppm_per_ue
