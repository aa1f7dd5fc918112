"""RF channel: attenuation, spreading loss, detuning, budget, read range."""

from __future__ import annotations

import cmath
import math
from dataclasses import replace

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sawsense.rflink import (
    C_LIGHT_M_PER_S,
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


def exact_attenuation_np_per_m(medium: DielectricMedium, freq_hz: float) -> float:
    """Oracle: attenuation from the exact complex wavenumber.

    k = (w/c) * sqrt(eps_r * (1 - j*tan_delta)); alpha = -Im(k).
    """
    w = 2.0 * math.pi * freq_hz
    k = w / C_LIGHT_M_PER_S * cmath.sqrt(medium.eps_r * (1.0 - 1j * medium.tan_delta))
    return -k.imag


class TestAttenuation:
    def test_lossless_medium(self):
        assert attenuation_np_per_m(DielectricMedium(4.7, 0.0), 2.45e9) == 0.0

    @pytest.mark.parametrize(
        "freq,expected_np,expected_db",
        [(2.45e9, 7.24, 62.9), (869e6, 2.57, 22.3)],
    )
    def test_dry_concrete_values(self, freq, expected_np, expected_db):
        alpha = attenuation_np_per_m(DRY_CONCRETE, freq)
        assert alpha == pytest.approx(expected_np, rel=0.005)
        assert alpha * 20.0 / math.log(10.0) == pytest.approx(expected_db, rel=0.005)

    @pytest.mark.parametrize("freq", [869e6, 2.45e9])
    @pytest.mark.parametrize("tan_delta", [0.01, 0.05, 0.13, 0.2, 0.28])
    def test_low_loss_matches_exact_oracle_within_1pct(self, freq, tan_delta):
        medium = DielectricMedium(4.7, tan_delta)
        assert attenuation_np_per_m(medium, freq) == pytest.approx(
            exact_attenuation_np_per_m(medium, freq), rel=0.01
        )

    def test_low_loss_error_at_validity_edge(self):
        # At tan_delta = 0.3 the approximation sits 1.09% high (exact series:
        # (x/2) / ((1+x^2)^(1/4) * sin(atan(x)/2))), so 1% holds up to ~0.28.
        medium = DielectricMedium(4.7, 0.3)
        ratio = attenuation_np_per_m(medium, 2.45e9) / exact_attenuation_np_per_m(medium, 2.45e9)
        assert ratio == pytest.approx(1.0109, abs=5e-4)

    def test_rejects_high_loss(self):
        with pytest.raises(ValueError, match="approximation"):
            attenuation_np_per_m(DielectricMedium(10.0, 0.6), 1e9)

    def test_rejects_nonpositive_frequency(self):
        with pytest.raises(ValueError):
            attenuation_np_per_m(DRY_CONCRETE, 0.0)


class TestFreeSpacePathLoss:
    @pytest.mark.parametrize("freq,expected", [(2.45e9, 40.2), (869e6, 31.2)])
    def test_one_meter_values(self, freq, expected):
        assert free_space_path_loss_db(freq, 1.0) == pytest.approx(expected, abs=0.05)

    def test_doubling_distance_adds_6db(self):
        d1 = free_space_path_loss_db(2.45e9, 1.0)
        d2 = free_space_path_loss_db(2.45e9, 2.0)
        assert d2 - d1 == pytest.approx(20.0 * math.log10(2.0), abs=1e-12)

    def test_near_field_rejected_naming_bound(self):
        with pytest.raises(ValueError, match="far-field"):
            free_space_path_loss_db(869e6, 0.01)


class TestDetuning:
    def test_zero_fraction_identity(self):
        assert detuned_frequency(869e6, DRY_CONCRETE, 0.0) == 869e6

    def test_fully_embedded_in_dry_concrete(self):
        assert detuned_frequency(869e6, DRY_CONCRETE, 1.0) == pytest.approx(400.9e6, rel=1e-3)

    def test_strictly_decreasing_in_fraction(self):
        values = [detuned_frequency(869e6, DRY_CONCRETE, x) for x in np.linspace(0, 1, 21)]
        assert all(b < a for a, b in zip(values, values[1:]))

    def test_fraction_range_checked(self):
        with pytest.raises(ValueError):
            detuned_frequency(869e6, DRY_CONCRETE, 1.5)


class TestRoundTripBudget:
    def test_zero_cover_equals_air_only_budget(self):
        cfg = LinkConfig(cover_thickness_m=0.0, air_distance_m=1.0)
        fspl = free_space_path_loss_db(cfg.freq_hz, 1.0)
        expected = (
            cfg.tx_power_dbm
            + 2 * (cfg.gain_reader_dbi + cfg.gain_sensor_dbi)
            - 2 * fspl
            - cfg.insertion_loss_db
            - cfg.noise_floor_dbm
        )
        assert round_trip_budget_db(cfg, DRY_CONCRETE) == pytest.approx(expected, abs=1e-12)

    def test_one_cm_of_dry_concrete_costs_1_26_db(self):
        # far from the antenna so the spreading-distance change is negligible
        base = LinkConfig(air_distance_m=10.0, cover_thickness_m=0.0)
        with_cover = replace(base, cover_thickness_m=0.01)
        drop = round_trip_budget_db(base, DRY_CONCRETE) - round_trip_budget_db(
            with_cover, DRY_CONCRETE
        )
        assert drop == pytest.approx(1.26, abs=0.02)

    def test_fresh_concrete_below_dry(self):
        cfg = LinkConfig()
        assert round_trip_budget_db(cfg, FRESH_CONCRETE) < round_trip_budget_db(
            cfg, DRY_CONCRETE
        )

    def test_breakdown_terms_sum_to_snr(self):
        cfg = LinkConfig()
        t = budget_breakdown(cfg, DRY_CONCRETE)
        total = (
            t["tx_power_dbm"]
            + t["antenna_gain_db"]
            - t["spreading_loss_db"]
            - t["concrete_loss_db"]
            - t["insertion_loss_db"]
            - t["noise_floor_dbm"]
        )
        assert total == pytest.approx(t["snr_db"], abs=1e-12)

    @given(
        air=st.floats(0.2, 5.0),
        cover=st.floats(0.0, 0.15),
        tan_delta=st.floats(0.0, 0.45),
        insertion=st.floats(10.0, 50.0),
        bump=st.floats(0.01, 0.5),
    )
    @settings(max_examples=150)
    def test_monotone_in_path_terms(self, air, cover, tan_delta, insertion, bump):
        medium = DielectricMedium(4.7, tan_delta)
        cfg = LinkConfig(air_distance_m=air, cover_thickness_m=cover,
                         insertion_loss_db=insertion)
        snr = round_trip_budget_db(cfg, medium)
        assert round_trip_budget_db(replace(cfg, air_distance_m=air + bump), medium) <= snr
        assert round_trip_budget_db(replace(cfg, cover_thickness_m=cover + bump / 10), medium) <= snr
        assert round_trip_budget_db(replace(cfg, insertion_loss_db=insertion + bump), medium) <= snr
        denser = DielectricMedium(4.7, min(tan_delta + bump / 10, 0.5))
        assert round_trip_budget_db(cfg, denser) <= snr


class TestMaxReadRange:
    def test_default_configuration_near_one_meter(self):
        r = max_read_range_m(LinkConfig(), DRY_CONCRETE)
        assert 0.5 <= r <= 2.0
        assert r == pytest.approx(1.0, abs=0.1)  # documented calibration target

    def test_bracket_property(self):
        cfg = LinkConfig()
        r = max_read_range_m(cfg, DRY_CONCRETE)
        assert round_trip_budget_db(replace(cfg, air_distance_m=r), DRY_CONCRETE) >= cfg.snr_threshold_db
        assert (
            round_trip_budget_db(replace(cfg, air_distance_m=r + 0.002), DRY_CONCRETE)
            < cfg.snr_threshold_db
        )

    def test_raising_threshold_shrinks_range(self):
        ranges = [
            max_read_range_m(LinkConfig(snr_threshold_db=thr), DRY_CONCRETE)
            for thr in (6.0, 10.0, 14.0, 18.0)
        ]
        assert all(b < a for a, b in zip(ranges, ranges[1:]))

    def test_no_link_when_threshold_unreachable(self):
        cfg = LinkConfig(insertion_loss_db=150.0)
        with pytest.raises(NoLinkError):
            max_read_range_m(cfg, DRY_CONCRETE)

    def test_bracket_property_randomized(self):
        rng = np.random.default_rng(20240869)
        checked = 0
        while checked < 25:
            cfg = LinkConfig(
                freq_hz=rng.uniform(0.4e9, 3e9),
                tx_power_dbm=rng.uniform(0.0, 20.0),
                gain_reader_dbi=rng.uniform(0.0, 8.0),
                gain_sensor_dbi=rng.uniform(0.0, 5.0),
                cover_thickness_m=rng.uniform(0.0, 0.1),
                insertion_loss_db=rng.uniform(20.0, 45.0),
                snr_threshold_db=rng.uniform(3.0, 20.0),
            )
            medium = DielectricMedium(rng.uniform(3.0, 14.0), rng.uniform(0.0, 0.45))
            try:
                r = max_read_range_m(cfg, medium)
            except NoLinkError:
                continue
            assert round_trip_budget_db(replace(cfg, air_distance_m=r), medium) >= cfg.snr_threshold_db
            assert (
                round_trip_budget_db(replace(cfg, air_distance_m=r + 0.002), medium)
                < cfg.snr_threshold_db
            )
            checked += 1


class TestValidation:
    def test_medium_invariants(self):
        with pytest.raises(ValueError):
            DielectricMedium(0.5, 0.1)
        with pytest.raises(ValueError):
            DielectricMedium(4.7, -0.1)

    def test_link_invariants(self):
        with pytest.raises(ValueError):
            LinkConfig(air_distance_m=-1.0)
        with pytest.raises(ValueError):
            LinkConfig(snr_threshold_db=0.0)
