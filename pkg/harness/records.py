"""
CSV persistence of experiment records and per-trial logs
"""

import csv
from pathlib import Path
from typing import Iterable, List, Sequence, Union

from numerics.errors import RecordWriteError
from .models import ExperimentRecord, TrialOutcome

RECORD_HEADER = ["ptx_dbm", "method", "mean_capacity", "mean_spectral_efficiency", "trials", "seed"]
TRIAL_LOG_HEADER = ["trial", "ptx_dbm", "method", "capacity", "spectral_efficiency"]


def _fmt(value: float) -> str:
    return f"{value:.6g}"


def write_records(records: Iterable[ExperimentRecord], path: Union[str, Path]) -> None:
    """
    Write records as CSV, one row per record in the given order

    Floats carry 6 significant digits and lines end with ``\\n`` on every
    platform, so identical records give identical bytes.
    """
    path = Path(path)
    try:
        with open(path, "w", newline="", encoding="utf-8") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(RECORD_HEADER)
            for record in records:
                writer.writerow([
                    _fmt(record.ptx_dbm),
                    record.method.value,
                    _fmt(record.mean_capacity),
                    _fmt(record.mean_spectral_efficiency),
                    record.trials,
                    record.seed,
                ])
    except OSError as e:
        raise RecordWriteError(f"cannot write records to {path}: {e}") from e


def read_records(path: Union[str, Path]) -> List[ExperimentRecord]:
    """Parse a file written by :func:`write_records`"""
    with open(path, newline="", encoding="utf-8") as f:
        return [ExperimentRecord.model_validate(row) for row in csv.DictReader(f)]


def write_trial_log(outcomes: Sequence[Sequence[TrialOutcome]], path: Union[str, Path]) -> None:
    """Dump every per-trial outcome with full float precision"""
    path = Path(path)
    try:
        with open(path, "w", newline="", encoding="utf-8") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(TRIAL_LOG_HEADER)
            for trial in outcomes:
                for o in trial:
                    writer.writerow([o.trial, repr(o.ptx_dbm), o.method.value, repr(o.capacity), repr(o.spectral_efficiency)])
    except OSError as e:
        raise RecordWriteError(f"cannot write trial log to {path}: {e}") from e
