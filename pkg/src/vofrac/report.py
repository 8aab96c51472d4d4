"""Report serialization: CSV for desk analysis, JSON mirroring the records.

CSV numbers carry 17 significant digits so they round-trip through
double precision; JSON uses Python's shortest round-trip float encoding.
Files always end with a trailing newline.
"""

from __future__ import annotations

import csv
import json
from typing import Sequence

import numpy as np

from .checker import ResidualReport
from .errors import IoError

__all__ = ["emit_report", "emit_table", "report_to_dict", "CSV_COLUMNS"]

CSV_COLUMNS = [
    "case_name",
    "identity",
    "variant_label",
    "s_real",
    "s_imag",
    "lhs_real",
    "lhs_imag",
    "rhs_real",
    "rhs_imag",
    "rel_residual",
    "verdict",
]


def _g17(x: float) -> str:
    return f"{float(x):.17g}"


def _variant_rows(rep: ResidualReport):
    lhs_default = np.asarray(rep.lhs.values) if rep.lhs is not None else None
    grid = rep.lhs.grid.points if rep.lhs is not None else ()
    for var in rep.rhs_variants:
        lhs = var.lhs_values if var.lhs_values is not None else lhs_default
        for j, s in enumerate(grid):
            ti = int(var.best_t_index[j])
            rhs = var.values[ti, j]
            yield [
                rep.case_name,
                rep.identity,
                var.label,
                _g17(s.real),
                _g17(s.imag),
                _g17(lhs[j].real),
                _g17(lhs[j].imag),
                _g17(rhs.real),
                _g17(rhs.imag),
                _g17(var.per_point[j]),
                var.verdict,
            ]


def report_to_dict(rep: ResidualReport) -> dict:
    d = {
        "case_name": rep.case_name,
        "identity": rep.identity,
        "verdict": rep.verdict,
        "notes": rep.notes,
        "grid": None,
        "lhs": None,
        "variants": [],
    }
    if rep.lhs is not None:
        d["grid"] = {
            "abscissa": rep.lhs.grid.abscissa,
            "points": [[s.real, s.imag] for s in rep.lhs.grid.points],
        }
        d["lhs"] = {
            "method": rep.lhs.method,
            "values": [[v.real, v.imag] for v in rep.lhs.values],
        }
    for var in rep.rhs_variants:
        d["variants"].append(
            {
                "label": var.label,
                "verdict": var.verdict,
                "rel_residual": var.rel_residual,
                "per_point": [float(r) for r in var.per_point],
                "best_t_index": [int(i) for i in var.best_t_index],
                "values": [[[v.real, v.imag] for v in row] for row in var.values],
                "lhs_values": None
                if var.lhs_values is None
                else [[v.real, v.imag] for v in var.lhs_values],
            }
        )
    return d


def emit_report(reports: Sequence[ResidualReport], format: str, path) -> None:
    """Write the reports as CSV or JSON; refuses an empty report list."""
    if not reports:
        raise IoError("no reports to emit; refusing to write an empty file")
    try:
        if format == "csv":
            with open(path, "w", newline="") as fh:
                writer = csv.writer(fh)
                writer.writerow(CSV_COLUMNS)
                for rep in reports:
                    writer.writerows(_variant_rows(rep))
        elif format == "json":
            with open(path, "w") as fh:
                json.dump({"reports": [report_to_dict(r) for r in reports]}, fh, indent=2)
                fh.write("\n")
        else:
            raise IoError(f"unknown output format {format!r}")
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc


def emit_table(rows: Sequence[Sequence], header: Sequence[str], format: str, path) -> None:
    """Small numeric tables for the operator and transform subcommands."""
    if not rows:
        raise IoError("no rows to emit")
    try:
        if format == "csv":
            with open(path, "w", newline="") as fh:
                writer = csv.writer(fh)
                writer.writerow(header)
                for row in rows:
                    writer.writerow([_g17(x) if isinstance(x, float) else x for x in row])
        elif format == "json":
            with open(path, "w") as fh:
                json.dump({"columns": list(header), "rows": [list(r) for r in rows]}, fh, indent=2)
                fh.write("\n")
        else:
            raise IoError(f"unknown output format {format!r}")
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc
