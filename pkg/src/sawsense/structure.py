"""Ground-truth beam mechanics and adhesive creep.

Converts a mid-span point load on a reinforced-concrete beam into rebar
strain using transformed-section bending (uncracked below the cracking
moment, cracked above it), and models the slow drift the mounting adhesive
adds to the sensed strain at high load.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

__all__ = [
    "BeamSpec",
    "LoadStep",
    "CreepParams",
    "elastic_modulus_gpa",
    "rebar_strain_ue",
    "cracking_moment_nm",
    "load_for_strain_ue",
    "staircase_calibration_scale",
    "creep_drift_ue",
]


@dataclass(frozen=True)
class BeamSpec:
    """Rectangular RC beam with a mid-span point load.

    Bars are (diameter_m, depth_m) pairs, depth measured from the
    compression face to the bar centre. Steel strain beyond
    ``yield_strain_ue`` is outside the linear-elastic model.
    """

    length_m: float = 1.2
    span_m: float = 1.1
    width_m: float = 0.155
    height_m: float = 0.200
    tension_bars: tuple[tuple[float, float], ...] = ((0.010, 0.165), (0.010, 0.165))
    compression_bars: tuple[tuple[float, float], ...] = ((0.008, 0.035), (0.008, 0.035))
    fc_prime_mpa: float = 19.56
    es_gpa: float = 200.0
    yield_strain_ue: float = 2000.0

    def __post_init__(self) -> None:
        if not 0 < self.span_m <= self.length_m:
            raise ValueError("span_m must be positive and at most length_m")
        if self.width_m <= 0 or self.height_m <= 0:
            raise ValueError("cross-section dimensions must be positive")
        if not self.fc_prime_mpa > 0:
            raise ValueError("fc_prime_mpa must be positive")
        if not self.es_gpa > 0:
            raise ValueError("es_gpa must be positive")
        if not self.tension_bars:
            raise ValueError("at least one tension bar is required")
        for dia, depth in (*self.tension_bars, *self.compression_bars):
            if dia <= 0:
                raise ValueError("bar diameter must be positive")
            if not 0 < depth < self.height_m:
                raise ValueError("bar depth must lie inside the section height")


@dataclass(frozen=True)
class LoadStep:
    """A point in a timed load program: mid-span load (N) from time_s on."""

    time_s: float
    load_n: float


@dataclass(frozen=True)
class CreepParams:
    """First-order adhesive relaxation model.

    Each strain step above ``threshold_ue`` relaxes toward an extra
    ``amplitude_fraction`` of itself with time constant ``tau_s``; strain
    levels below the threshold do not creep.
    """

    amplitude_fraction: float = 0.05
    tau_s: float = 60.0
    threshold_ue: float = 100.0

    def __post_init__(self) -> None:
        if not 0.0 <= self.amplitude_fraction <= 0.5:
            raise ValueError("amplitude_fraction must lie in [0, 0.5]")
        if not self.tau_s > 0:
            raise ValueError("tau_s must be positive")
        if self.threshold_ue < 0:
            raise ValueError("threshold_ue must be >= 0")


def elastic_modulus_gpa(fc_prime_mpa: float) -> float:
    """Concrete secant modulus, empirical 4.7*sqrt(fc') (GPa, fc' in MPa)."""
    if not fc_prime_mpa > 0:
        raise ValueError("fc_prime_mpa must be positive")
    return 4.7 * math.sqrt(fc_prime_mpa)


def _bar_area(diameter_m: float) -> float:
    return math.pi * diameter_m * diameter_m / 4.0


@dataclass(frozen=True)
class _SectionModel:
    """Cached elastic section properties for one beam."""

    ec_pa: float
    # uncracked transformed section
    na_uncracked_m: float  # neutral axis from compression face
    i_uncracked_m4: float
    # cracked transformed section
    na_cracked_m: float
    i_cracked_m4: float
    d_tension_m: float  # area-weighted tension-bar depth
    m_crack_nm: float

    @property
    def strain_per_moment_uncracked(self) -> float:
        return (self.d_tension_m - self.na_uncracked_m) / (self.ec_pa * self.i_uncracked_m4)

    @property
    def strain_per_moment_cracked(self) -> float:
        return (self.d_tension_m - self.na_cracked_m) / (self.ec_pa * self.i_cracked_m4)


def _section_model(beam: BeamSpec) -> _SectionModel:
    ec = elastic_modulus_gpa(beam.fc_prime_mpa) * 1e9
    n = beam.es_gpa * 1e9 / ec

    a_t = sum(_bar_area(d) for d, _ in beam.tension_bars)
    d_t = sum(_bar_area(d) * depth for d, depth in beam.tension_bars) / a_t

    b, h = beam.width_m, beam.height_m
    bars = [(_bar_area(d), depth) for d, depth in (*beam.tension_bars, *beam.compression_bars)]

    # Uncracked: full concrete section plus (n-1)-weighted steel.
    area = b * h + sum((n - 1.0) * a for a, _ in bars)
    first = b * h * h / 2.0 + sum((n - 1.0) * a * y for a, y in bars)
    ybar = first / area
    i_unc = (
        b * h**3 / 12.0
        + b * h * (ybar - h / 2.0) ** 2
        + sum((n - 1.0) * a * (y - ybar) ** 2 for a, y in bars)
    )

    # Cracked: concrete below the neutral axis ignored; tension steel at n,
    # compression steel at (n-1) since it displaces stressed concrete.
    n_as_t = n * a_t
    comp = [(_bar_area(d), depth) for d, depth in beam.compression_bars]
    sum_comp = sum((n - 1.0) * a for a, _ in comp)
    sum_comp_d = sum((n - 1.0) * a * y for a, y in comp)
    # b/2*c^2 + (sum_comp + n*As)*c - (sum_comp_d + n*As*d) = 0
    qa = b / 2.0
    qb = sum_comp + n_as_t
    qc = -(sum_comp_d + n_as_t * d_t)
    c_na = (-qb + math.sqrt(qb * qb - 4.0 * qa * qc)) / (2.0 * qa)
    i_cr = (
        b * c_na**3 / 3.0
        + sum((n - 1.0) * a * (c_na - y) ** 2 for a, y in comp)
        + n_as_t * (d_t - c_na) ** 2
    )

    # Cracking moment on the gross section with rupture modulus 0.62*sqrt(fc').
    f_r = 0.62 * math.sqrt(beam.fc_prime_mpa) * 1e6
    i_gross = b * h**3 / 12.0
    m_cr = f_r * i_gross / (h / 2.0)

    return _SectionModel(
        ec_pa=ec,
        na_uncracked_m=ybar,
        i_uncracked_m4=i_unc,
        na_cracked_m=c_na,
        i_cracked_m4=i_cr,
        d_tension_m=d_t,
        m_crack_nm=m_cr,
    )


def cracking_moment_nm(beam: BeamSpec) -> float:
    """Moment at which the tensile fiber reaches the rupture modulus (N*m)."""
    return _section_model(beam).m_crack_nm


def rebar_strain_ue(beam: BeamSpec, load_n: float, calibration: float | None = None) -> float:
    """Tension-rebar strain (microstrain) under a mid-span point load (N).

    Uncracked transformed-section bending below the cracking moment,
    cracked-section analysis (concrete tension ignored) above it; the
    switch produces a jump in strain at the cracking moment. A calibration
    scale, when given, multiplies the physical result.

    Raises
    ------
    ValueError
        For negative load, or steel strain beyond the yield limit.
    """
    if load_n < 0:
        raise ValueError("load_n must be >= 0")
    sec = _section_model(beam)
    m = load_n * beam.span_m / 4.0
    if m <= sec.m_crack_nm:
        eps = m * sec.strain_per_moment_uncracked
    else:
        eps = m * sec.strain_per_moment_cracked
    eps_ue = eps * 1e6
    if eps_ue > beam.yield_strain_ue:
        raise ValueError(
            f"steel strain {eps_ue:.0f} ue exceeds the {beam.yield_strain_ue:.0f} ue "
            "yield limit; outside the linear-elastic model"
        )
    if calibration is not None:
        eps_ue *= calibration
    return eps_ue


def load_for_strain_ue(
    beam: BeamSpec, strain_ue: float, calibration: float | None = None
) -> float:
    """Mid-span load (N) that produces the target rebar strain.

    Inverse of :func:`rebar_strain_ue`. Strains inside the uncracked-to-
    cracked transition band (unreachable because of the stiffness jump at
    the cracking moment) resolve to the nearest realizable branch.
    """
    if strain_ue < 0:
        raise ValueError("strain_ue must be >= 0")
    if strain_ue == 0:
        return 0.0
    sec = _section_model(beam)
    scale = 1.0 if calibration is None else calibration
    eps = strain_ue / scale * 1e-6
    eps_unc_at_mcr = sec.m_crack_nm * sec.strain_per_moment_uncracked
    eps_cr_at_mcr = sec.m_crack_nm * sec.strain_per_moment_cracked
    if eps <= eps_unc_at_mcr:
        m = eps / sec.strain_per_moment_uncracked
    elif eps >= eps_cr_at_mcr:
        m = eps / sec.strain_per_moment_cracked
    elif eps - eps_unc_at_mcr <= eps_cr_at_mcr - eps:
        m = sec.m_crack_nm
    else:
        # just past cracking, on the cracked branch
        m = sec.m_crack_nm * (1.0 + 1e-12)
    return 4.0 * m / beam.span_m


def staircase_calibration_scale(
    beam: BeamSpec, load_n: float = 392.4, target_ue: float = 2.0
) -> float:
    """Scale that maps the physical model onto a measured staircase step.

    Defaults fit one 40 kg weight increment to 2.0 microstrain. The scale
    is reported explicitly so physical modeling and measurement matching
    are never silently conflated.
    """
    physical = rebar_strain_ue(beam, load_n)
    if physical <= 0:
        raise ValueError("physical strain at the calibration load must be positive")
    return target_ue / physical


def creep_drift_ue(
    applied_strain_history: Sequence[tuple[float, float]],
    params: CreepParams,
    t_s: float,
) -> float:
    """Adhesive drift (microstrain) at time t for a stepwise strain history.

    The history is a time-ordered list of (time_s, strain_ue) samples held
    constant between entries. Strain levels below the threshold do not
    drive creep; each step of the above-threshold level at time t_i
    contributes amplitude_fraction * step * (1 - exp(-(t - t_i)/tau)).
    The returned drift adds to the true strain to form the sensed strain.
    """
    if not applied_strain_history:
        raise ValueError("strain history must be non-empty")
    times = [t for t, _ in applied_strain_history]
    if any(b < a for a, b in zip(times, times[1:])):
        raise ValueError("strain history must be time-ordered")
    if t_s < times[0]:
        raise ValueError("history does not cover the query time")

    drift = 0.0
    prev_level = 0.0
    for t_i, eps in applied_strain_history:
        if t_i > t_s:
            break
        level = eps if abs(eps) >= params.threshold_ue else 0.0
        step = level - prev_level
        if step != 0.0:
            drift += params.amplitude_fraction * step * (
                1.0 - math.exp(-(t_s - t_i) / params.tau_s)
            )
        prev_level = level
    return drift
