"""CSV and JSON rendering.

Floats are written with ``repr`` in both formats (shortest text that
round-trips, at most 17 significant digits), so the two formats carry
identical numbers. JSON keys are sorted.
"""

from __future__ import annotations

import csv
import json
from collections.abc import Iterable, Mapping
from typing import Any, Literal, TextIO

from packet_multipoles.cli.commands import EstimateReport, RunReport
from packet_multipoles.moments.models import MomentSet

Format = Literal["csv", "json"]


def _cell(value: Any) -> str:
    if isinstance(value, float):
        return repr(value)
    return "" if value is None else str(value)


def write_json(data: Any, out: TextIO) -> None:
    json.dump(data, out, sort_keys=True, indent=2, allow_nan=False)
    out.write("\n")


def write_csv(rows: Iterable[Mapping[str, Any]], out: TextIO) -> int:
    """RFC 4180 style CSV with a header from the first row; returns the row count."""
    writer = csv.writer(out, lineterminator="\n", quoting=csv.QUOTE_MINIMAL)
    count = 0
    header: list[str] | None = None
    for row in rows:
        if header is None:
            header = list(row)
            writer.writerow(header)
        writer.writerow([_cell(row[key]) for key in header])
        count += 1
    return count


def _moment_rows(path: str, ms: MomentSet) -> list[dict[str, Any]]:
    values = {
        **ms.as_row(),
        "norm": ms.norm,
        "centroid_x": ms.centroid.x,
        "centroid_y": ms.centroid.y,
        "centroid_z": ms.centroid.z,
    }
    if ms.spread is not None:
        values["spread"] = ms.spread
    values.update({f"stderr_{k}": v for k, v in sorted(ms.standard_errors.items())})
    return [{"section": path, "name": name, "value": value} for name, value in values.items()]


def report_rows(report: RunReport) -> list[dict[str, Any]]:
    """Long-format rows (section, name, value) of a moments report."""
    rows: list[dict[str, Any]] = []
    for path, ms in report.paths.items():
        rows.extend(_moment_rows(path, ms))
    for pair, delta in report.deltas.items():
        rows.append({"section": "delta", "name": pair, "value": delta})
        rows.append({"section": "tolerance", "name": pair, "value": report.tolerances[pair]})
    for path, values in (report.si or {}).items():
        rows.extend({"section": f"si:{path}", "name": k, "value": v} for k, v in values.items())
    return rows


def report_data(report: RunReport, timing: bool = False) -> dict[str, Any]:
    """JSON-ready report; wall time is left out unless ``timing`` so output is reproducible."""
    data = report.model_dump(mode="json", exclude=None if timing else {"wall_time_s"})
    data["ok"] = report.ok
    return data


def write_report(report: RunReport, fmt: Format, out: TextIO, timing: bool = False) -> None:
    if fmt == "json":
        write_json(report_data(report, timing), out)
    else:
        write_csv(report_rows(report), out)


def write_rows(rows: list[dict[str, float]], fmt: Format, out: TextIO) -> None:
    if fmt == "json":
        write_json(rows, out)
    else:
        write_csv(rows, out)


def write_estimate(report: EstimateReport, fmt: Format, out: TextIO) -> None:
    data = report.model_dump(mode="json")
    if fmt == "json":
        write_json(data, out)
    else:
        write_csv(({"name": k, "value": v} for k, v in data.items()), out)
