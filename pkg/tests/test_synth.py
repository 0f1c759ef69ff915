"""Tests for the deterministic synthetic data generators."""

import datetime
import math

import numpy as np
import pytest

from specloss.errors import InvalidArgumentError
from specloss.market import UVariant, u_series
from specloss.series import trading_dates
from specloss.synth import (
    NormalStream,
    SynthConfig,
    gen_ar1,
    gen_cointegrated,
    gen_market_days,
    gen_random_walk,
)


def test_stream_is_deterministic_per_seed_and_label():
    a = NormalStream(7, "alpha").normals(64)
    b = NormalStream(7, "alpha").normals(64)
    c = NormalStream(7, "beta").normals(64)
    d = NormalStream(8, "alpha").normals(64)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)
    assert not np.array_equal(a, d)


def test_stream_normals_match_single_draws():
    stream = NormalStream(3, "single")
    singles = [stream.normal() for _ in range(10)]
    assert np.array_equal(NormalStream(3, "single").normals(10), singles)


def test_stream_moments_are_standard_normal():
    draws = NormalStream(0, "moments").normals(20000)
    assert abs(float(np.mean(draws))) < 0.03
    assert abs(float(np.var(draws)) - 1.0) < 0.05
    # Symmetric tails: roughly 5% of draws beyond +/-1.96.
    frac = float(np.mean(np.abs(draws) > 1.96))
    assert 0.04 < frac < 0.06


def test_random_walk_zero_scale_is_exact_drift_line():
    walk = gen_random_walk(5, 10, drift=1.0, scale=0.0)
    assert list(walk.values) == [float(t) for t in range(1, 11)]


def test_random_walk_determinism_and_increments():
    walk = gen_random_walk(9, 200, drift=0.25, scale=2.0, label="RWT")
    again = gen_random_walk(9, 200, drift=0.25, scale=2.0, label="RWT")
    assert np.array_equal(walk.values, again.values)
    # Increments are exactly drift + scale * the labeled stream's draws.
    shocks = NormalStream(9, "RWT").normals(200)
    increments = np.diff(np.concatenate([[0.0], walk.values]))
    assert np.allclose(increments, 0.25 + 2.0 * shocks, rtol=0, atol=1e-12)


def test_random_walk_validation():
    with pytest.raises(InvalidArgumentError):
        gen_random_walk(1, 1)
    with pytest.raises(InvalidArgumentError):
        gen_random_walk(1, 10, scale=-1.0)


def test_ar1_phi_zero_reduces_to_scaled_stream():
    series = gen_ar1(4, 50, phi=0.0, scale=3.0, label="IND")
    shocks = NormalStream(4, "IND").normals(50)
    assert np.array_equal(series.values, 3.0 * shocks)


def test_ar1_autocorrelation_tracks_phi():
    def lag1_corr(values):
        x = values - values.mean()
        return float(np.sum(x[1:] * x[:-1]) / np.sum(x * x))

    white = gen_ar1(2, 4000, phi=0.0, label="ACF")
    assert abs(lag1_corr(white.values)) < 0.1
    persistent = gen_ar1(2, 4000, phi=0.8, label="ACF")
    assert 0.7 < lag1_corr(persistent.values) < 0.9


def test_ar1_starts_from_stationary_distribution():
    # The first draw's variance equals scale^2/(1 - phi^2), not scale^2.
    phi, scale = 0.8, 1.0
    first = [gen_ar1(seed, 2, phi=phi, scale=scale, label="INIT").values[0]
             for seed in range(300)]
    target = scale * scale / (1.0 - phi * phi)
    assert abs(float(np.var(first)) - target) < 0.25 * target


def test_ar1_zero_scale_is_identically_zero():
    assert not np.any(gen_ar1(1, 20, phi=0.5, scale=0.0).values)


def test_ar1_validation():
    with pytest.raises(InvalidArgumentError):
        gen_ar1(1, 10, phi=1.0)
    with pytest.raises(InvalidArgumentError):
        gen_ar1(1, 1, phi=0.5)


def test_market_days_shape_and_invariants():
    config = SynthConfig(seed=13, n_days=120)
    days = gen_market_days(config)
    assert len(days) == 120
    assert tuple(d.date for d in days) == trading_dates(120, config.start_date)
    for day in days:
        assert day.invest_i >= 0.0
        assert day.rate_r >= 0.0
        assert 0.0 <= day.u_big_vol <= day.u_big_dep
        assert day.mean_price is not None and day.mean_price > 0.0
    assert gen_market_days(config) == days


def test_market_days_break_multiplies_invest_exactly():
    base = gen_market_days(SynthConfig(seed=3, n_days=60))
    broken = gen_market_days(SynthConfig(seed=3, n_days=60, break_factor=2.0,
                                         break_index=40))
    for t in range(60):
        if t < 40:
            assert broken[t].invest_i == base[t].invest_i
        else:
            assert broken[t].invest_i == 2.0 * base[t].invest_i
        # The break leaves every other variable untouched.
        assert broken[t].rate_r == base[t].rate_r
        assert broken[t].u_big_vol == base[t].u_big_vol
        assert broken[t].u_big_dep == base[t].u_big_dep


def test_market_days_break_defaults_to_midpoint():
    base = gen_market_days(SynthConfig(seed=4, n_days=50))
    broken = gen_market_days(SynthConfig(seed=4, n_days=50, break_factor=3.0))
    changed = [t for t in range(50) if broken[t].invest_i != base[t].invest_i]
    assert changed == list(range(25, 50))


def test_zero_noise_scale_makes_u_linear_in_invest():
    config = SynthConfig(seed=6, n_days=40, noise_scale=0.0)
    days = gen_market_days(config)
    assert all(day.rate_r == config.r0 for day in days)
    assert all(day.u_big_vol == config.uvol0 for day in days)
    assert all(day.u_big_dep == config.uvol0 + config.dep0 for day in days)
    assert all(day.mean_price == config.price0 for day in days)
    u = u_series(days, UVariant.BY_VOLUME)
    slope = 1e8 * (config.r0 / 100.0) / (365.0 * config.uvol0)
    invest = np.array([day.invest_i for day in days])
    assert np.allclose(u.values, slope * invest, rtol=1e-12)


def test_synth_config_validation():
    with pytest.raises(InvalidArgumentError):
        SynthConfig(n_days=29)
    with pytest.raises(InvalidArgumentError):
        SynthConfig(r_phi=1.0)
    with pytest.raises(InvalidArgumentError):
        SynthConfig(noise_scale=-0.1)
    with pytest.raises(InvalidArgumentError):
        SynthConfig(i_scale=0.0)
    with pytest.raises(InvalidArgumentError):
        SynthConfig(break_factor=0.0)
    with pytest.raises(InvalidArgumentError):
        SynthConfig(break_index=0)
    with pytest.raises(InvalidArgumentError):
        SynthConfig(n_days=50, break_index=50)
    SynthConfig(n_days=50, break_index=49)


def test_gen_cointegrated_layout():
    spec = gen_cointegrated(2, n=100)
    assert spec.dependent.name == "Y"
    assert [s.name for s in spec.regressors] == ["X1", "X2", "X3"]
    assert len(spec.dependent) == 100
    assert all(s.dates == spec.dependent.dates for s in spec.regressors)
    with pytest.raises(InvalidArgumentError):
        gen_cointegrated(2, n=10)


def test_default_config_produces_plausible_magnitudes():
    days = gen_market_days(SynthConfig(seed=0))
    u = u_series(days, UVariant.BY_VOLUME)
    # Around 20 billion rubles at around 5.5% over around six million
    # stocks is tens of kopecks per stock per day.
    assert 10.0 < float(np.mean(u.values)) < 200.0
    rates = [day.rate_r for day in days]
    assert 3.0 < float(np.mean(rates)) < 8.0
    assert math.isclose(
        float(np.mean([day.u_big_vol / day.u_big_dep for day in days])),
        0.1,
        abs_tol=0.05,
    )
