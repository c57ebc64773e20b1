"""
Reduced-scale invariant and oracle checks behind the ``validate`` command
"""

import logging
from dataclasses import dataclass
from typing import Callable, List

import numpy as np

from beamforming.benchmarks import adjusted_channels, best_pair
from beamforming.design import capacity_from_singular_values, channel_capacity
from channel.geometry import UpaGeometry, upa_response
from estimation.estimator import estimate_channel
from estimation.pilots import build_pilot_suite, equalize, pilot_observation
from numerics.linalg import db_to_linear, log_det_rate, singular_values, svd, waterfill
from .config import ExperimentConfig
from .experiment import build_scenario, sample_realization

logger = logging.getLogger(__name__)

AGREEMENT_THRESHOLD = 0.9


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _crandn(rng: np.random.Generator, *shape: int) -> np.ndarray:
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)


def check_svd_reconstruction(rng: np.random.Generator, trials: int) -> CheckResult:
    worst = 0.0
    for _ in range(trials):
        rows, cols = rng.integers(1, 33, size=2)
        a = _crandn(rng, rows, cols)
        err = np.linalg.norm(svd(a).reconstruct() - a) / max(1.0, np.linalg.norm(a))
        worst = max(worst, float(err))
    return CheckResult("svd reconstruction", worst <= 1e-9, f"worst relative error {worst:.2e}")


def check_waterfill_kkt(rng: np.random.Generator, trials: int) -> CheckResult:
    worst = 0.0
    for _ in range(trials):
        s = np.sort(rng.exponential(size=rng.integers(1, 9)))[::-1]
        noise_var, power = rng.uniform(0.1, 2.0), rng.uniform(0.1, 10.0)
        alloc = waterfill(s, noise_var, power, s.size)
        floors = noise_var / s**2
        active = alloc.levels > 0
        worst = max(
            worst,
            abs(alloc.total - power) / power,
            float(np.max(np.abs(alloc.levels[active] - (alloc.water_level - floors[active])), initial=0.0)),
            float(np.max(alloc.water_level - floors[~active] - 1e-9, initial=0.0)),
        )
    return CheckResult("waterfilling KKT", worst <= 1e-9, f"worst violation {worst:.2e}")


def check_log_det_invariance(rng: np.random.Generator, trials: int) -> CheckResult:
    worst = 0.0
    for _ in range(trials):
        w, h, f = _crandn(rng, 6, 3), _crandn(rng, 6, 5), _crandn(rng, 5, 3)
        t = _crandn(rng, 3, 3) + 3.0 * np.eye(3)
        base = log_det_rate(w, h, f, 1.0)
        worst = max(worst, abs(log_det_rate(w @ t, h, f, 1.0) - base) / max(base, 1e-12))
    return CheckResult("log-det combiner invariance", worst <= 1e-9, f"worst relative change {worst:.2e}")


def check_upa_unit_norm(rng: np.random.Generator, trials: int) -> CheckResult:
    worst = 0.0
    for _ in range(trials):
        geom = UpaGeometry(*rng.integers(1, 17, size=2))
        a = upa_response(geom, rng.uniform(0, 2 * np.pi), rng.uniform(0, np.pi))
        worst = max(worst, abs(np.linalg.norm(a) - 1.0))
    return CheckResult("UPA unit norm", worst <= 1e-12, f"worst deviation {worst:.2e}")


def check_pilot_identity(rng: np.random.Generator, trials: int, seed: int) -> CheckResult:
    """Unit-modulus pilots and the noiseless equalization identity on small arrays"""
    config = ExperimentConfig(
        tx_array=(4, 4), rx_array=(4, 4), ris_array=(8, 8), trials=trials, seed=seed, shadowing=False,
    )
    scenario = build_scenario(config)
    worst_identity, worst_modulus = 0.0, 0.0
    for trial in range(trials):
        real = sample_realization(scenario, seed, trial)
        suite = build_pilot_suite(real.paths_ts, real.paths_sr, scenario.geoms, config.n_streams, 10.0)
        for pair, h_tot in adjusted_channels(real.h_ts, real.h_sr, suite).items():
            worst_modulus = max(worst_modulus, float(np.max(np.abs(np.abs(suite.phase_vectors[pair]) - 1.0))))
            y_eq = equalize(pilot_observation(h_tot, suite, 0.0, rng), suite)
            target = suite.combiner.conj().T @ h_tot @ suite.precoder / suite.power_scale
            err = np.linalg.norm(y_eq - target) / max(np.linalg.norm(target), np.finfo(float).tiny)
            worst_identity = max(worst_identity, float(err))
    passed = worst_identity <= 1e-10 and worst_modulus <= 1e-12
    return CheckResult(
        "noiseless pilot identity",
        passed,
        f"worst relative error {worst_identity:.2e}, worst modulus deviation {worst_modulus:.2e}",
    )


def check_oracle_agreement(trials: int, seed: int) -> List[CheckResult]:
    """Pair selection against the exhaustive oracle at the default array sizes, noiseless pilots"""
    config = ExperimentConfig(trials=trials, seed=seed, noiseless_pilots=True, shadowing=False)
    scenario = build_scenario(config)
    power = db_to_linear(config.ptx_dbm_sweep[-1])
    agree, dominated = 0, True
    for trial in range(trials):
        real = sample_realization(scenario, seed, trial)
        suite = build_pilot_suite(real.paths_ts, real.paths_sr, scenario.geoms, config.n_streams, power)
        adjusted = adjusted_channels(real.h_ts, real.h_sr, suite)
        estimate = estimate_channel(
            real.h_ts, real.h_sr, real.paths_ts, real.paths_sr, suite, scenario.geoms,
            0.0, np.random.default_rng(0), adjusted=adjusted,
        )
        capacities = {
            pair: capacity_from_singular_values(singular_values(h), config.n_streams, power, scenario.noise_var)
            for pair, h in adjusted.items()
        }
        oracle_pair, oracle_capacity = best_pair(capacities)
        agree += oracle_pair == estimate.selected_pair
        dominated &= oracle_capacity >= channel_capacity(
            adjusted[estimate.selected_pair], config.n_streams, power, scenario.noise_var
        )
    rate = agree / trials
    return [
        CheckResult("oracle dominance", dominated, "oracle capacity >= selected pair capacity"),
        CheckResult(
            "pair selection agreement",
            rate >= AGREEMENT_THRESHOLD,
            f"{agree}/{trials} realizations ({rate:.1%}), threshold {AGREEMENT_THRESHOLD:.0%}",
        ),
    ]


def run_checks(seed: int = 0, trials: int = 50) -> List[CheckResult]:
    """
    Run the whole check suite

    Args:
        seed: Seed of every random instance
        trials: Instances per check

    Returns:
        One CheckResult per check, in a fixed order
    """
    rng = np.random.default_rng(seed)
    checks: List[Callable[[], object]] = [
        lambda: check_svd_reconstruction(rng, trials),
        lambda: check_waterfill_kkt(rng, 10 * trials),
        lambda: check_log_det_invariance(rng, trials),
        lambda: check_upa_unit_norm(rng, trials),
        lambda: check_pilot_identity(rng, trials, seed),
        lambda: check_oracle_agreement(trials, seed),
    ]
    results: List[CheckResult] = []
    for check in checks:
        outcome = check()
        results.extend(outcome if isinstance(outcome, list) else [outcome])
    for result in results:
        logger.info("%s: %s (%s)", result.name, "pass" if result.passed else "fail", result.detail)
    return results
