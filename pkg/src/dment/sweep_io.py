"""CSV and JSON serialization for sweep results.

The CSV column set is a frozen external contract.  Floats are written with
``repr``, i.e. the shortest decimal that round-trips to the same binary
value, so a written file re-reads bit-identically.  Cells for parameters that
do not apply to the state family, and for measures that were not requested,
are left empty.
"""
from __future__ import annotations

import csv
import io
import json
from typing import Optional

from ._version import __version__
from .measures import MEASURE_NAMES
from .scan import CrossingPoint, ESDInterval, SweepResult

CSV_COLUMNS = (
    "theta", "w1", "w2", "g0",
    "n_ab", "n_ac", "n_bc",
    "n_a_bc", "n_b_ac", "n_c_ab",
    "pi_a", "pi_b", "pi_c", "three_pi",
    "three_tangle",
    "concurrence_ab", "concurrence_ac", "concurrence_bc",
)

SIDECAR_SCHEMA = 1
MANIFEST_SCHEMA = 1


def _cell(value: Optional[float]) -> str:
    return "" if value is None else repr(float(value))


def sweep_rows(result: SweepResult) -> list[dict[str, Optional[float]]]:
    """Sweep points as ordered dicts keyed by the CSV columns."""
    requested = set(result.grid.measures)
    rows = []
    for point in result.points:
        row: dict[str, Optional[float]] = {
            "theta": point.theta, "w1": point.w1, "w2": point.w2, "g0": point.g0,
        }
        for name in MEASURE_NAMES:
            row[name] = point.value(name) if name in requested else None
        rows.append(row)
    return rows


def sweep_csv_text(result: SweepResult) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in sweep_rows(result):
        writer.writerow([_cell(row[col]) for col in CSV_COLUMNS])
    return buf.getvalue()


def read_sweep_csv(text: str) -> list[dict[str, Optional[float]]]:
    """Parse CSV text written by :func:`sweep_csv_text` back into row dicts."""
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    if tuple(header) != CSV_COLUMNS:
        raise ValueError(f"unexpected CSV header: {header}")
    rows = []
    for raw in reader:
        rows.append({col: (float(cell) if cell != "" else None)
                     for col, cell in zip(CSV_COLUMNS, raw)})
    return rows


def esd_interval_dict(interval: ESDInterval) -> dict:
    return {
        "measure": interval.measure,
        "parameter": interval.parameter,
        "lo": interval.lo,
        "hi": interval.hi,
        "boundary": interval.boundary,
        "context": dict(interval.context),
    }


def crossing_dict(point: CrossingPoint) -> dict:
    return {"theta": point.theta, "w1": point.w1, "w2": point.w2,
            "common_value": point.common_value}


def sidecar(esd_intervals: Optional[list[ESDInterval]] = None,
            crossings: Optional[list[CrossingPoint]] = None) -> dict:
    doc: dict = {"schema": SIDECAR_SCHEMA}
    if esd_intervals is not None:
        doc["esd_intervals"] = [esd_interval_dict(i) for i in esd_intervals]
    if crossings is not None:
        doc["crossings"] = [crossing_dict(c) for c in crossings]
    return doc


def manifest(parameters: dict, negativity_convention: str,
             seed: Optional[int] = None) -> dict:
    """Run provenance record; always names the negativity convention in use."""
    doc = {
        "schema": MANIFEST_SCHEMA,
        "tool": "dment",
        "version": __version__,
        "negativity_convention": negativity_convention,
        "parameters": parameters,
    }
    if seed is not None:
        doc["seed"] = seed
    return doc


def dump_json(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"
