"""
Harness Module
Configuration, seeded Monte Carlo sweeps, CSV records and the CLI
"""

from .config import ExperimentConfig, ConfigFileError, load_config, read_config_file
from .models import Method, ExperimentRecord, TrialOutcome
from .streams import Purpose, substream
from .experiment import (
    run_experiment,
    run_trials,
    aggregate,
    complexity_summary,
    oracle_report,
)
from .records import write_records, read_records, write_trial_log
from .cli import cli_main

__all__ = [
    "ExperimentConfig",
    "ConfigFileError",
    "load_config",
    "read_config_file",
    "Method",
    "ExperimentRecord",
    "TrialOutcome",
    "Purpose",
    "substream",
    "run_experiment",
    "run_trials",
    "aggregate",
    "complexity_summary",
    "oracle_report",
    "write_records",
    "read_records",
    "write_trial_log",
    "cli_main",
]
