"""CSV schemas emitted by the qread CLI, parsed and validated strictly.

plotviz consumes the sweep engine only through these files; all physics
lives upstream and every plotted value is read verbatim from a column.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

SWEEP_COLUMNS = [
    "tau0",
    "tau1",
    "N",
    "eta_s",
    "eta_i",
    "nu_e",
    "mode",
    "p_err_q",
    "p_err_c_opt",
    "p_err_c_phc",
    "gain_opt",
    "gain_phc",
    "med_tau0",
    "uncertainty",
    "status",
]
FRAME_COLUMNS = ["frame_index", "n_s", "n_i", "true_bit"]

_TEXT_COLUMNS = {"mode", "status"}


class SchemaMismatchError(ValueError):
    """The CSV header or its contents do not match the expected schema."""


class EmptySelectionError(ValueError):
    """No rows survive filtering (e.g. everything failed upstream)."""


@dataclass
class Table:
    columns: list[str]
    rows: list[dict]

    def column(self, name: str) -> list:
        if name not in self.columns:
            raise SchemaMismatchError(f"column {name!r} missing from CSV")
        return [row[name] for row in self.rows]


def _read(path, expected: list[str]) -> Table:
    path = Path(path)
    with path.open("r", encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != expected:
            raise SchemaMismatchError(
                f"{path}: header {reader.fieldnames} does not match {expected}"
            )
        rows = []
        for raw in reader:
            row = {}
            for key, val in raw.items():
                if key in _TEXT_COLUMNS:
                    row[key] = val
                else:
                    try:
                        row[key] = float(val)
                    except (TypeError, ValueError) as exc:
                        raise SchemaMismatchError(
                            f"{path}: non-numeric value {val!r} in column {key!r}"
                        ) from exc
            rows.append(row)
    if not rows:
        raise EmptySelectionError(f"{path}: no data rows")
    return Table(expected, rows)


def read_sweep_csv(path) -> Table:
    """Parse a sweep-results CSV, keeping only rows with status == ok."""
    table = _read(path, SWEEP_COLUMNS)
    good = [row for row in table.rows if row["status"] == "ok"]
    if not good:
        raise EmptySelectionError(f"{path}: no rows with status == ok")
    return Table(table.columns, good)


def read_frames_csv(path) -> Table:
    """Parse a frame-dump CSV (``frame_index,n_s,n_i,true_bit``)."""
    return _read(path, FRAME_COLUMNS)
