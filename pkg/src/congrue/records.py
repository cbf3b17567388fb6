"""Delimited record formats: JSON lines, CSV and a human table.

Big integers are written as decimal strings so consumers need no
big-integer JSON support.  Nulls are JSON ``null`` and empty CSV cells.
"""

from __future__ import annotations

import csv
import io
import json
from typing import Any, Iterable, Sequence, TextIO

from .congruence import TestReport

FORMATS = ("json", "csv", "table")

SCAN_FIELDS = (
    "n",
    "m",
    "method",
    "verdict",
    "lhs_residue",
    "rhs_residue",
    "modulus_value",
    "elapsed_ns",
    "agreed_with_oracle",
)

BENCH_FIELDS = ("method", "n", "m", "elapsed_ns", "verdict", "agreed_with_oracle")


def _dec(x: int | None) -> str | None:
    return None if x is None else str(x)


def report_row(
    report: TestReport, agreed: bool | None, *, timings: bool = True
) -> dict[str, Any]:
    return {
        "n": report.n,
        "m": report.m,
        "method": report.method.value,
        "verdict": report.verdict,
        "lhs_residue": _dec(report.lhs_residue),
        "rhs_residue": _dec(report.rhs_residue),
        "modulus_value": _dec(report.modulus_value),
        "elapsed_ns": report.elapsed_ns if timings else None,
        "agreed_with_oracle": agreed,
    }


def _csv_cell(v: Any) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def _table_cell(v: Any, width: int = 0) -> str:
    if v is None:
        s = "-"
    elif isinstance(v, bool):
        s = "yes" if v else "no"
    else:
        s = str(v)
    if width and len(s) > width:
        # residues can run to thousands of digits
        s = s[: width - 3] + "..."
    return s


class RecordWriter:
    """Writes rows with a fixed column order to a text stream."""

    table_width = 24

    def __init__(self, stream: TextIO, fmt: str, fields: Sequence[str]) -> None:
        if fmt not in FORMATS:
            raise ValueError(f"unknown format {fmt!r}; choose from {FORMATS}")
        self.stream = stream
        self.fmt = fmt
        self.fields = tuple(fields)
        self._csv = csv.writer(stream, lineterminator="\n")

    def header(self) -> None:
        if self.fmt == "csv":
            self._csv.writerow(self.fields)
        elif self.fmt == "table":
            self.stream.write(self._table_line(self.fields) + "\n")

    def _table_line(self, values: Iterable[Any]) -> str:
        w = self.table_width
        return "  ".join(_table_cell(v, w).rjust(8) for v in values).rstrip()

    def write(self, row: dict[str, Any]) -> None:
        values = [row.get(f) for f in self.fields]
        if self.fmt == "json":
            self.stream.write(json.dumps(dict(zip(self.fields, values))) + "\n")
        elif self.fmt == "csv":
            self._csv.writerow([_csv_cell(v) for v in values])
        else:
            self.stream.write(self._table_line(values) + "\n")


def parse_line(line: str, fmt: str, fields: Sequence[str]) -> dict[str, Any]:
    """Inverse of :meth:`RecordWriter.write` for one line (json or csv)."""
    if fmt == "json":
        row = json.loads(line)
        if not isinstance(row, dict) or list(row) != list(fields):
            raise ValueError("record keys do not match schema")
        return row
    if fmt == "csv":
        cells = next(csv.reader(io.StringIO(line)))
        if len(cells) != len(fields):
            raise ValueError("wrong number of CSV cells")
        row: dict[str, Any] = {f: (c if c != "" else None) for f, c in zip(fields, cells)}
        for key in ("n", "m", "elapsed_ns"):
            if row.get(key) is not None:
                row[key] = int(row[key])
        for key in ("verdict", "agreed_with_oracle"):
            if key in row:
                if row[key] not in ("true", "false"):
                    raise ValueError(f"bad boolean cell {row[key]!r}")
                row[key] = row[key] == "true"
        return row
    raise ValueError(f"format {fmt!r} cannot be parsed back")


def format_report(report: TestReport, agreed: bool | None, fmt: str) -> str:
    """Render a single test report; the table form is a vertical listing."""
    row = report_row(report, agreed)
    if fmt == "table":
        width = max(len(k) for k in row) + 1
        lines = [f"{k:<{width}} {_table_cell(v)}" for k, v in row.items()]
        lines.append(f"{'theorem':<{width}} {report.theorem}")
        lines.append(f"{'result':<{width}} {'prime' if report.verdict else 'composite'}")
        return "\n".join(lines) + "\n"
    buf = io.StringIO()
    writer = RecordWriter(buf, fmt, SCAN_FIELDS)
    writer.header()
    writer.write(row)
    return buf.getvalue()
