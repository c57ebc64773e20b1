"""
Monte Carlo experiment orchestration
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from functools import partial
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from beamforming.benchmarks import adjusted_channels, best_pair, exhaustive_best_pair, random_ris
from beamforming.design import capacity_from_singular_values, evaluate_rates, optimal_beamformers
from channel.geometry import SystemGeometry
from channel.matrices import assemble_channel, cascade
from channel.paths import LinkConfig, PathSet, sample_paths
from estimation.estimator import estimate_channel
from estimation.pilots import Pair, PilotSuite, build_pilot_suite
from numerics.errors import NoEigenchannelError
from numerics.linalg import db_to_linear, singular_values
from .config import ExperimentConfig
from .models import METHOD_ORDER, ExperimentRecord, Method, TrialOutcome
from .streams import Purpose, substream

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Scenario:
    """Geometry, links and noise level derived from a config"""
    geoms: SystemGeometry
    link_ts: LinkConfig
    link_sr: LinkConfig
    noise_var: float


@dataclass(frozen=True)
class Realization:
    """Sampled paths and channel matrices of both links"""
    paths_ts: PathSet
    paths_sr: PathSet
    h_ts: np.ndarray
    h_sr: np.ndarray


def build_scenario(config: ExperimentConfig) -> Scenario:
    geoms = config.geometry
    band = config.band_preset
    link_ts = LinkConfig(
        n_path=config.n_path_ts,
        distance_m=config.d_ts_m,
        los_model=band.los,
        nlos_model=band.nlos,
        rx_geometry=geoms.ris,
        tx_geometry=geoms.tx,
        shadowing=config.shadowing,
    )
    link_sr = replace(
        link_ts,
        n_path=config.n_path_sr,
        distance_m=config.d_sr_m,
        rx_geometry=geoms.rx,
        tx_geometry=geoms.ris,
    )
    return Scenario(geoms=geoms, link_ts=link_ts, link_sr=link_sr, noise_var=config.noise_var_mw)


def sample_realization(scenario: Scenario, seed: int, trial: int) -> Realization:
    """Draw both links of one trial from their own substreams"""
    paths_ts = sample_paths(substream(seed, trial, Purpose.TS_LINK), scenario.link_ts)
    paths_sr = sample_paths(substream(seed, trial, Purpose.SR_LINK), scenario.link_sr)
    return Realization(
        paths_ts=paths_ts,
        paths_sr=paths_sr,
        h_ts=assemble_channel(paths_ts, scenario.geoms.ris, scenario.geoms.tx),
        h_sr=assemble_channel(paths_sr, scenario.geoms.rx, scenario.geoms.ris),
    )


def _proposed_rates(
    config: ExperimentConfig,
    scenario: Scenario,
    realization: Realization,
    suite: PilotSuite,
    adjusted: Dict[Pair, np.ndarray],
    power: float,
    trial: int,
) -> Tuple[float, float]:
    """(capacity, spectral efficiency) of the estimated pair on the true channel"""
    pilot_noise = 0.0 if config.noiseless_pilots else scenario.noise_var
    estimate = estimate_channel(
        realization.h_ts,
        realization.h_sr,
        realization.paths_ts,
        realization.paths_sr,
        suite,
        scenario.geoms,
        pilot_noise,
        substream(config.seed, trial, Purpose.PILOT_NOISE),
        k=config.effective_k,
        n_rank=config.n_rank,
        adjusted=adjusted,
    )
    h_true = adjusted[estimate.selected_pair]
    try:
        beamformers = optimal_beamformers(estimate.h_est, config.n_streams, power, scenario.noise_var)
    except NoEigenchannelError:
        logger.warning("trial %d: channel estimate is zero, reporting zero spectral efficiency", trial)
        capacity = capacity_from_singular_values(
            singular_values(h_true), config.n_streams, power, scenario.noise_var
        )
        return capacity, 0.0
    beamformers = replace(beamformers, ris_phases=suite.phase_vectors[estimate.selected_pair])
    report = evaluate_rates(h_true, beamformers, config.n_streams, power, scenario.noise_var)
    return report.capacity, report.spectral_efficiency


def run_trial(config: ExperimentConfig, scenario: Scenario, trial: int) -> List[TrialOutcome]:
    """
    Evaluate every method at every sweep point on one channel realization

    The realization, the random RIS draw and the pilot noise are shared by
    all sweep points of the trial.
    """
    realization = sample_realization(scenario, config.seed, trial)
    m = scenario.geoms.ris.n_elements
    phases = random_ris(substream(config.seed, trial, Purpose.RANDOM_RIS), m)
    random_s = singular_values(cascade(realization.h_sr, phases, realization.h_ts))

    outcomes: List[TrialOutcome] = []
    adjusted = None
    pair_s: Dict[Pair, np.ndarray] = {}
    for ptx_dbm in config.ptx_dbm_sweep:
        power = db_to_linear(ptx_dbm)
        suite = build_pilot_suite(
            realization.paths_ts, realization.paths_sr, scenario.geoms, config.n_streams, power
        )
        if adjusted is None:
            # phase vectors depend on angles only, not on the pilot power
            adjusted = adjusted_channels(realization.h_ts, realization.h_sr, suite)
            pair_s = {pair: singular_values(h) for pair, h in adjusted.items()}

        capacity, spectral_efficiency = _proposed_rates(
            config, scenario, realization, suite, adjusted, power, trial
        )
        _, oracle_capacity = exhaustive_best_pair(
            realization.h_ts,
            realization.h_sr,
            suite,
            config.n_streams,
            power,
            scenario.noise_var,
            pair_singular_values=pair_s,
        )
        random_capacity = capacity_from_singular_values(
            random_s, config.n_streams, power, scenario.noise_var
        )
        outcomes += [
            TrialOutcome(trial, ptx_dbm, Method.PROPOSED, capacity, spectral_efficiency),
            TrialOutcome(trial, ptx_dbm, Method.RANDOM_RIS, random_capacity, random_capacity),
            TrialOutcome(trial, ptx_dbm, Method.EXHAUSTIVE_ORACLE, oracle_capacity, oracle_capacity),
        ]
    return outcomes


def run_trials(config: ExperimentConfig) -> List[List[TrialOutcome]]:
    """Per-trial outcomes in trial order, optionally on a thread pool"""
    scenario = build_scenario(config)
    worker = partial(run_trial, config, scenario)
    logger.info("running %d trials on %d worker(s)", config.trials, config.workers)
    if config.workers == 1:
        return [worker(trial) for trial in range(config.trials)]
    with ThreadPoolExecutor(max_workers=config.workers) as pool:
        return list(pool.map(worker, range(config.trials)))


def aggregate(config: ExperimentConfig, outcomes: Sequence[Sequence[TrialOutcome]]) -> List[ExperimentRecord]:
    """
    Average per-trial outcomes into one record per (sweep point, method)

    Sums run in trial order with ``math.fsum``, so the means do not depend on
    how trials were scheduled.
    """
    records = []
    per_trial = len(METHOD_ORDER)
    for point, ptx_dbm in enumerate(config.ptx_dbm_sweep):
        for offset, method in enumerate(METHOD_ORDER):
            column = [trial[point * per_trial + offset] for trial in outcomes]
            n = len(column)
            records.append(ExperimentRecord(
                ptx_dbm=ptx_dbm,
                method=method,
                mean_capacity=math.fsum(o.capacity for o in column) / n,
                mean_spectral_efficiency=math.fsum(o.spectral_efficiency for o in column) / n,
                trials=n,
                seed=config.seed,
            ))
    return records


def run_experiment(config: ExperimentConfig) -> List[ExperimentRecord]:
    """
    Run the full sweep and return trial means

    Identical config and seed give identical records.
    """
    return aggregate(config, run_trials(config))


def complexity_summary(config: ExperimentConfig) -> Dict[str, float]:
    """
    Per-realization multiply counts of the pair-matched design versus the
    alternating-optimisation reference, O(M N_r N_t) against
    O(3 M N_r^3 + 2 M N_r^2 N_t)
    """
    geoms = config.geometry
    m, n_r, n_t = geoms.ris.n_elements, geoms.rx.n_elements, geoms.tx.n_elements
    proposed = float(m * n_r * n_t)
    alternating = float(3 * m * n_r**3 + 2 * m * n_r**2 * n_t)
    return {"proposed": proposed, "alternating_optimization": alternating, "ratio": alternating / proposed}


@dataclass(frozen=True)
class PairDiagnostics:
    pair: Pair
    gain_estimate: complex
    true_gain_product: complex
    capacity: float


@dataclass(frozen=True)
class OracleReport:
    """Pair selection versus the exhaustive oracle on one realization"""
    trial: int
    ptx_dbm: float
    pairs: List[PairDiagnostics]
    selected_pair: Pair
    selected_capacity: float
    oracle_pair: Pair
    oracle_capacity: float

    @property
    def shortfall(self) -> float:
        """Relative capacity lost by the selected pair"""
        if self.oracle_capacity <= 0.0:
            return 0.0
        return (self.oracle_capacity - self.selected_capacity) / self.oracle_capacity


def oracle_report(config: ExperimentConfig, trial: int = 0, ptx_dbm: Optional[float] = None) -> OracleReport:
    """Compare the estimator's pair choice with every pair's true capacity on one realization"""
    scenario = build_scenario(config)
    ptx_dbm = config.ptx_dbm_sweep[0] if ptx_dbm is None else ptx_dbm
    power = db_to_linear(ptx_dbm)
    realization = sample_realization(scenario, config.seed, trial)
    suite = build_pilot_suite(
        realization.paths_ts, realization.paths_sr, scenario.geoms, config.n_streams, power
    )
    adjusted = adjusted_channels(realization.h_ts, realization.h_sr, suite)
    estimate = estimate_channel(
        realization.h_ts,
        realization.h_sr,
        realization.paths_ts,
        realization.paths_sr,
        suite,
        scenario.geoms,
        0.0 if config.noiseless_pilots else scenario.noise_var,
        substream(config.seed, trial, Purpose.PILOT_NOISE),
        k=config.effective_k,
        n_rank=config.n_rank,
        adjusted=adjusted,
    )
    capacities = {
        pair: capacity_from_singular_values(singular_values(h), config.n_streams, power, scenario.noise_var)
        for pair, h in adjusted.items()
    }
    oracle_pair, oracle_capacity = best_pair(capacities)
    pairs = [
        PairDiagnostics(
            pair=(i, j),
            gain_estimate=estimate.gain_estimates[(i, j)],
            true_gain_product=complex(realization.paths_ts.gains[i] * realization.paths_sr.gains[j]),
            capacity=capacities[(i, j)],
        )
        for i, j in suite.pairs
    ]
    return OracleReport(
        trial=trial,
        ptx_dbm=ptx_dbm,
        pairs=pairs,
        selected_pair=estimate.selected_pair,
        selected_capacity=capacities[estimate.selected_pair],
        oracle_pair=oracle_pair,
        oracle_capacity=oracle_capacity,
    )
