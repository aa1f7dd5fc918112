"""Swept reflection spectra: the raw view a reader has of the sensor."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = ["Spectrum"]


@dataclass(frozen=True)
class Spectrum:
    """One-port |S11| sweep on a fixed frequency grid.

    freqs_hz must be strictly increasing. s11_db holds magnitude in dB
    (<= 0 for a noiseless passive device; additive noise may push single
    points slightly above 0). ``truncated`` flags a resonance dip that may
    be cut off by the sweep edges.
    """

    freqs_hz: np.ndarray
    s11_db: np.ndarray
    truncated: bool = field(default=False)

    def __post_init__(self) -> None:
        freqs = np.asarray(self.freqs_hz, dtype=float)
        s11 = np.asarray(self.s11_db, dtype=float)
        if freqs.ndim != 1 or s11.ndim != 1:
            raise ValueError("spectrum arrays must be one-dimensional")
        if freqs.size != s11.size:
            raise ValueError("freqs_hz and s11_db must have equal length")
        if freqs.size == 0:
            raise ValueError("spectrum must contain at least one point")
        if freqs.size > 1 and not np.all(np.diff(freqs) > 0):
            raise ValueError("freqs_hz must be strictly increasing")
        object.__setattr__(self, "freqs_hz", freqs)
        object.__setattr__(self, "s11_db", s11)

    def __len__(self) -> int:
        return int(self.freqs_hz.size)
