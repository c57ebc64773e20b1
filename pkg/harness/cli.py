"""
Command-line interface: sweep, validate and oracle subcommands
"""

import argparse
import logging
import sys
from typing import List, Optional, Sequence

import numpy as np
from pydantic import ValidationError

from numerics.errors import SimulationError
from .config import ConfigFileError, ExperimentConfig, load_config, valid_bands
from .experiment import aggregate, complexity_summary, oracle_report, run_trials
from .models import ExperimentRecord
from .plotting import write_plot_script
from .records import write_records, write_trial_log
from .validation import run_checks

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_RUNTIME = 2


class UsageError(Exception):
    """Bad command-line usage; carries the usage text of the failing parser"""

    def __init__(self, usage: str, message: str):
        super().__init__(message)
        self.usage = usage


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(self.format_usage(), message)


def _ptx_list(text: str) -> List[float]:
    try:
        values = [float(item) for item in text.split(",") if item.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated dBm values, got {text!r}") from None
    if not values:
        raise argparse.ArgumentTypeError("at least one dBm value is required")
    return values


def _seed(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError(f"seed must be an unsigned 64-bit integer, got {text}")
    return value


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="Flat key = value configuration file")
    parser.add_argument("--seed", type=_seed, help="Root seed (unsigned 64-bit)")
    parser.add_argument("--band", choices=valid_bands(), help="Path loss preset")
    parser.add_argument("--ptx", type=_ptx_list, help="Comma-separated P_TX values in dBm")
    parser.add_argument(
        "--noiseless-pilots",
        action="store_true",
        default=None,
        help="Sound the channel without pilot noise",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ris-sim", description="RIS-aided MIMO joint channel estimation and beamforming simulator")
    parser.add_argument("--verbose", action="store_true", help="Enable debug logging")
    commands = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sweep = commands.add_parser("sweep", help="Run a Monte Carlo sweep over P_TX")
    _add_common(sweep)
    sweep.add_argument("--trials", type=int, help="Channel realizations per sweep point")
    sweep.add_argument("--workers", type=int, help="Worker threads (results do not depend on it)")
    sweep.add_argument(
        "--shadowing",
        action=argparse.BooleanOptionalAction,
        default=None,
        help="Log-normal shadowing on the links",
    )
    sweep.add_argument("--out", default="results.csv", help="Output CSV (default: results.csv)")
    sweep.add_argument("--trial-log", help="Also dump every per-trial outcome to this CSV")
    sweep.add_argument("--plot-script", help="Write a matplotlib script that plots the output CSV")

    validate = commands.add_parser("validate", help="Run the reduced-scale check suite")
    validate.add_argument("--seed", type=_seed, default=0, help="Seed of the random instances")
    validate.add_argument("--trials", type=int, default=50, help="Instances per check (default: 50)")

    oracle = commands.add_parser("oracle", help="Compare pair selection with the exhaustive oracle on one realization")
    _add_common(oracle)
    oracle.add_argument("--trial", type=int, default=0, help="Trial index of the realization (default: 0)")
    return parser


def _load(args: argparse.Namespace, **extra) -> ExperimentConfig:
    overrides = {
        "seed": args.seed,
        "band": args.band,
        "ptx_dbm_sweep": args.ptx,
        "noiseless_pilots": args.noiseless_pilots,
        **extra,
    }
    return load_config(args.config, overrides)


def _print_records(records: Sequence[ExperimentRecord]) -> None:
    print(f"{'P_TX [dBm]':>10}  {'method':<18} {'capacity':>10} {'spectral eff.':>14}")
    for record in records:
        print(
            f"{record.ptx_dbm:>10.1f}  {record.method.value:<18} "
            f"{record.mean_capacity:>10.4f} {record.mean_spectral_efficiency:>14.4f}"
        )


def _sweep(args: argparse.Namespace) -> int:
    config = _load(args, trials=args.trials, workers=args.workers, shadowing=args.shadowing)
    print("📡 RIS-aided MIMO sweep")
    print("=" * 50)
    print(f"📶 Band: {config.band}")
    print(f"🔢 Trials: {config.trials}  Seed: {config.seed}  Workers: {config.workers}")
    print(f"⚡ P_TX sweep: {', '.join(f'{p:g}' for p in config.ptx_dbm_sweep)} dBm")
    print("=" * 50)

    outcomes = run_trials(config)
    records = aggregate(config, outcomes)
    write_records(records, args.out)
    print(f"✅ Records written to: {args.out}")
    if args.trial_log:
        write_trial_log(outcomes, args.trial_log)
        print(f"📝 Trial log written to: {args.trial_log}")
    if args.plot_script:
        write_plot_script(args.out, args.plot_script)
        print(f"📈 Plot script written to: {args.plot_script}")

    print()
    print("📊 Trial means")
    _print_records(records)
    complexity = complexity_summary(config)
    print()
    print(
        f"🧮 Multiplies per realization: pair-matched {complexity['proposed']:.3g}, "
        f"alternating optimization {complexity['alternating_optimization']:.3g} "
        f"({complexity['ratio']:.0f}x)"
    )
    return EXIT_OK


def _validate(args: argparse.Namespace) -> int:
    print("🔍 Running check suite...")
    results = run_checks(seed=args.seed, trials=args.trials)
    for result in results:
        print(f"{'✅' if result.passed else '❌'} {result.name}: {result.detail}")
    failed = [r for r in results if not r.passed]
    if failed:
        print(f"❌ {len(failed)} of {len(results)} checks failed")
        return EXIT_RUNTIME
    print(f"✅ All {len(results)} checks passed")
    return EXIT_OK


def _oracle(args: argparse.Namespace) -> int:
    config = _load(args)
    report = oracle_report(config, trial=args.trial)
    print(f"🔎 Realization {report.trial} at P_TX = {report.ptx_dbm:g} dBm, band {config.band}")
    print(f"{'pair':>8} {'|gain est.|':>12} {'|gain true|':>12} {'capacity':>10}")
    for row in report.pairs:
        marks = ("*" if row.pair == report.selected_pair else " ") + ("o" if row.pair == report.oracle_pair else " ")
        print(
            f"{str(row.pair):>8} {abs(row.gain_estimate):>12.4e} "
            f"{abs(row.true_gain_product):>12.4e} {row.capacity:>10.4f} {marks}"
        )
    print(f"* selected {report.selected_pair}: {report.selected_capacity:.4f} bits/s/Hz")
    print(f"o oracle   {report.oracle_pair}: {report.oracle_capacity:.4f} bits/s/Hz")
    print(f"📉 Shortfall: {report.shortfall:.2%}")
    return EXIT_OK


def cli_main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run the command line

    Args:
        argv: Arguments without the program name (default: sys.argv[1:])

    Returns:
        0 on success, 1 on usage or configuration errors, 2 on runtime failures
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        print(e.usage, end="", file=sys.stderr)
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as e:
        return int(e.code or 0)

    if args.verbose:
        logging.getLogger().setLevel(logging.DEBUG)

    handlers = {"sweep": _sweep, "validate": _validate, "oracle": _oracle}
    try:
        return handlers[args.command](args)
    except (ValidationError, ConfigFileError) as e:
        print(parser.format_usage(), end="", file=sys.stderr)
        print(f"❌ Invalid configuration: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (SimulationError, OSError, np.linalg.LinAlgError, ArithmeticError) as e:
        print(f"❌ Simulation failed: {e}", file=sys.stderr)
        return EXIT_RUNTIME
    except Exception as e:
        logger.exception("unexpected failure in %s", args.command)
        print(f"❌ Unexpected error: {e}", file=sys.stderr)
        return EXIT_RUNTIME
