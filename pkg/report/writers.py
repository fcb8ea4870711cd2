"""CSV and JSON writers for experiment output."""

import csv
import json
from dataclasses import asdict, fields
from pathlib import Path
from typing import Iterable, List, Sequence, TextIO, Union

from models import EvolveSnapshot, ExperimentReport, ExperimentRow

# Bump when ROW_COLUMNS changes.
CSV_SCHEMA_VERSION = 2
ROW_COLUMNS: List[str] = [f.name for f in fields(ExperimentRow)]
TIMING_COLUMNS = ("generate_seconds", "solve_seconds")

PathLike = Union[str, Path]


def _write_rows(handle: TextIO, columns: Sequence[str], records: Iterable[dict]) -> None:
    writer = csv.DictWriter(handle, fieldnames=list(columns), lineterminator="\n")
    writer.writeheader()
    for record in records:
        writer.writerow({c: "" if record.get(c) is None else record[c] for c in columns})


def _write_csv(target: Union[PathLike, TextIO], columns: Sequence[str], records: Iterable[dict]) -> None:
    """Write to a path, or to an already open text stream."""
    if hasattr(target, "write"):
        _write_rows(target, columns, records)
        return
    with open(target, "w", newline="", encoding="utf-8") as handle:
        _write_rows(handle, columns, records)


def write_rows_csv(rows: Iterable[ExperimentRow], path: Union[PathLike, TextIO]) -> None:
    _write_csv(path, ROW_COLUMNS, (asdict(r) for r in rows))


def write_snapshots_csv(snapshots: Iterable[EvolveSnapshot], path: Union[PathLike, TextIO]) -> None:
    columns = [f.name for f in fields(EvolveSnapshot)]
    _write_csv(path, columns, (asdict(s) for s in snapshots))


def report_to_dict(report: ExperimentReport) -> dict:
    spec = asdict(report.spec)
    return {
        "schema_version": CSV_SCHEMA_VERSION,
        "spec": spec,
        "rows": [asdict(r) for r in report.rows],
        "aggregates": report.aggregates,
    }


def write_report_json(report: ExperimentReport, path: PathLike) -> None:
    Path(path).write_text(json.dumps(report_to_dict(report), indent=2, sort_keys=True) + "\n", encoding="utf-8")
