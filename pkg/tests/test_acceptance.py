"""
Full-scale statistical checks at the 64-antenna / 256-element operating point

Deselected by default; run with ``pytest -m slow``.
"""

import numpy as np
import pytest

from conftest import crandn
from beamforming import adjusted_channels
from channel import upa_response
from estimation import build_pilot_suite, equalize, estimate_channel, simulate_pilot_rx
from harness import ExperimentConfig, Method, oracle_report, run_experiment
from harness.experiment import build_scenario, sample_realization

pytestmark = pytest.mark.slow


def _noiseless(ris_array="16x16", **overrides):
    return ExperimentConfig(ris_array=ris_array, noiseless_pilots=True, **overrides)


def _random_array(rng):
    return f"{rng.integers(2, 6)}x{rng.integers(2, 6)}"


def test_noiseless_identity_random_sizes():
    rng = np.random.default_rng(100)
    for seed in range(100):
        config = _noiseless(
            ris_array=_random_array(rng), tx_array=_random_array(rng), rx_array=_random_array(rng), n_streams=2, seed=seed
        )
        scenario = build_scenario(config)
        real = sample_realization(scenario, seed, 0)
        suite = build_pilot_suite(real.paths_ts, real.paths_sr, scenario.geoms, 2, 1.0)
        for pair in suite.pairs:
            y_eq = equalize(simulate_pilot_rx(real.h_ts, real.h_sr, suite, pair, 0.0, rng), suite)
            h_tot = real.h_sr @ np.diag(suite.phase_vectors[pair]) @ real.h_ts
            target = suite.combiner.conj().T @ h_tot @ suite.precoder / suite.power_scale
            assert np.linalg.norm(y_eq - target) <= 1e-10 * np.linalg.norm(target)


def test_cascaded_channel_approaches_rank_one_target():
    errors = []
    for ris in ("4x4", "8x8", "16x16"):
        config = _noiseless(ris_array=ris)
        scenario = build_scenario(config)
        per_seed = []
        for seed in range(200):
            real = sample_realization(scenario, seed, 0)
            suite = build_pilot_suite(real.paths_ts, real.paths_sr, scenario.geoms, config.n_streams, 1.0)
            h_tot = adjusted_channels(real.h_ts, real.h_sr, suite)[(0, 0)]
            a_r = upa_response(scenario.geoms.rx, real.paths_sr.aoa_az[0], real.paths_sr.aoa_el[0])
            a_t = upa_response(scenario.geoms.tx, real.paths_ts.aod_az[0], real.paths_ts.aod_el[0])
            target = real.paths_ts.gains[0] * real.paths_sr.gains[0] * np.outer(a_r, a_t.conj())
            per_seed.append(np.linalg.norm(h_tot - target) / np.linalg.norm(target))
        errors.append(np.mean(per_seed))
    assert errors[0] > errors[1] > errors[2]


def test_gain_estimate_error_shrinks_with_ris_size():
    medians = []
    for ris in ("8x8", "16x16", "32x32"):
        config = _noiseless(ris_array=ris)
        scenario = build_scenario(config)
        rel_errors = []
        for seed in range(200):
            real = sample_realization(scenario, seed, 0)
            suite = build_pilot_suite(real.paths_ts, real.paths_sr, scenario.geoms, config.n_streams, 1.0)
            y_eq = equalize(
                simulate_pilot_rx(real.h_ts, real.h_sr, suite, (0, 0), 0.0, np.random.default_rng(seed)), suite
            )
            truth = real.paths_ts.gains[0] * real.paths_sr.gains[0]
            rel_errors.append(abs(y_eq[0, 0] - truth) / abs(truth))
        medians.append(np.median(rel_errors))
    assert medians[0] >= medians[1] >= medians[2]
    assert medians[1] <= 0.2


def test_rank_one_estimate_beats_random_rank_one():
    config = _noiseless()
    scenario = build_scenario(config)
    rng = np.random.default_rng(0)
    estimate_err, random_err = [], []
    for seed in range(200):
        real = sample_realization(scenario, seed, 0)
        suite = build_pilot_suite(real.paths_ts, real.paths_sr, scenario.geoms, config.n_streams, 1.0)
        adjusted = adjusted_channels(real.h_ts, real.h_sr, suite)
        result = estimate_channel(
            real.h_ts, real.h_sr, real.paths_ts, real.paths_sr, suite, scenario.geoms, 0.0, rng, adjusted=adjusted
        )
        h_true = adjusted[result.selected_pair]
        guess = np.outer(crandn(rng, h_true.shape[0]), crandn(rng, h_true.shape[1]).conj())
        guess *= np.linalg.norm(h_true) / np.linalg.norm(guess)
        estimate_err.append(np.linalg.norm(result.h_est - h_true) / np.linalg.norm(h_true))
        random_err.append(np.linalg.norm(guess - h_true) / np.linalg.norm(h_true))
    assert np.median(estimate_err) < np.median(random_err)


def test_pair_selection_agrees_with_oracle():
    config = _noiseless(ptx_dbm_sweep=[40.0])
    agree, shortfalls = 0, []
    for trial in range(500):
        report = oracle_report(config, trial=trial)
        assert report.oracle_capacity >= report.selected_capacity
        if report.selected_pair == report.oracle_pair:
            agree += 1
        else:
            shortfalls.append(report.shortfall)
    assert agree >= 450
    if shortfalls:
        assert np.median(shortfalls) <= 0.05


@pytest.mark.parametrize("band", ["mmwave28", "thz142"])
def test_capacity_curves(band):
    config = ExperimentConfig(
        band=band, trials=500, ptx_dbm_sweep=[20, 25, 30, 35, 40], workers=4, noiseless_pilots=True
    )
    records = run_experiment(config)
    curves = {method: [r for r in records if r.method is method] for method in Method}

    for method, curve in curves.items():
        caps = [r.mean_capacity for r in curve]
        assert np.all(np.diff(caps) > 0), method
    proposed_se = [r.mean_spectral_efficiency for r in curves[Method.PROPOSED]]
    assert np.all(np.diff(proposed_se) > 0)

    for random, proposed, oracle in zip(
        curves[Method.RANDOM_RIS], curves[Method.PROPOSED], curves[Method.EXHAUSTIVE_ORACLE]
    ):
        assert random.mean_capacity < proposed.mean_capacity <= oracle.mean_capacity + 1e-12

    top = curves[Method.PROPOSED][-1]
    assert top.mean_spectral_efficiency >= 0.85 * top.mean_capacity


def test_thz_noisy_pilots_need_higher_power():
    config = ExperimentConfig(band="thz142", trials=200, ptx_dbm_sweep=[40, 60], workers=4)
    proposed = [r for r in run_experiment(config) if r.method is Method.PROPOSED]
    ratios = [r.mean_spectral_efficiency / r.mean_capacity for r in proposed]
    assert ratios[0] < ratios[1]
    assert ratios[1] >= 0.85
