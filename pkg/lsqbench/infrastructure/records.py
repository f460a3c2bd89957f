"""CSV persistence for sweep records.

Header is fixed; floats are written with 17 significant digits so a
write/read round trip reproduces every value bit for bit. The eight
published-table columns are required on read, the extension columns are
optional so the reference table parses as-is.
"""

from __future__ import annotations

import csv
import io
import logging
import math
from importlib import resources
from pathlib import Path
from typing import Callable, Iterable, TextIO

from lsqbench.core.bench import EXTENSION_COLUMNS, RECORD_COLUMNS, TABLE_COLUMNS, BenchRecord
from lsqbench.errors import ParseError, SchemaError

logger = logging.getLogger(__name__)

REFERENCE_RESOURCE = "reference_table1.csv"

_INT_COLUMNS = {"n", "d", "iters_gd"}
_BOOL_COLUMNS = {"gd_converged"}
_TRUE = {"true", "1", "yes"}
_FALSE = {"false", "0", "no"}


def format_float(value: float) -> str:
    if math.isnan(value):
        return "nan"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return format(value, ".17g")


def _format_cell(column: str, value: object) -> str:
    if column in _BOOL_COLUMNS:
        return "" if value is None else ("true" if value else "false")
    if column in _INT_COLUMNS:
        return str(int(value))  # type: ignore[call-overload]
    return format_float(float(value))  # type: ignore[arg-type]


def write_records(records: Iterable[BenchRecord], stream: TextIO) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(RECORD_COLUMNS)
    for record in records:
        row = record.as_row()
        writer.writerow([_format_cell(column, row[column]) for column in RECORD_COLUMNS])


def write_records_csv(records: Iterable[BenchRecord], path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as handle:
        write_records(records, handle)
    logger.info("wrote records to %s", path)
    return path


def _parse_int(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        value = float(text)
        if not value.is_integer():
            raise
        return int(value)


def _parse_bool(text: str) -> bool | None:
    lowered = text.strip().lower()
    if not lowered:
        return None
    if lowered in _TRUE:
        return True
    if lowered in _FALSE:
        return False
    raise ValueError(f"not a boolean: {text!r}")


def _parse_cell(column: str, text: str) -> object:
    if column in _BOOL_COLUMNS:
        return _parse_bool(text)
    if not text.strip():
        if column in EXTENSION_COLUMNS:
            return math.nan
        raise ValueError("empty value")
    if column in _INT_COLUMNS:
        return _parse_int(text)
    return float(text)


def read_records(stream: TextIO) -> list[BenchRecord]:
    reader = csv.reader(stream)
    header: list[str] | None = None
    records: list[BenchRecord] = []
    for row in reader:
        if not row or (len(row) == 1 and not row[0].strip()):
            continue
        if header is None:
            header = [cell.strip() for cell in row]
            missing = [column for column in TABLE_COLUMNS if column not in header]
            if missing:
                raise SchemaError(f"records file is missing column(s): {', '.join(missing)}")
            ignored = [column for column in header if column not in RECORD_COLUMNS]
            if ignored:
                logger.debug("ignoring unknown record column(s): %s", ", ".join(ignored))
            continue
        if len(row) != len(header):
            raise ParseError(
                f"expected {len(header)} fields, found {len(row)}", line=reader.line_num
            )
        values: dict[str, object] = {}
        for column, text in zip(header, row):
            if column not in RECORD_COLUMNS:
                continue
            try:
                values[column] = _parse_cell(column, text)
            except ValueError as exc:
                raise ParseError(str(exc), line=reader.line_num, column=column) from exc
        records.append(BenchRecord(**values))  # type: ignore[arg-type]
    if header is None:
        raise SchemaError("records file has no header")
    return records


def read_records_csv(path: Path) -> list[BenchRecord]:
    with path.open(newline="", encoding="utf-8") as handle:
        return read_records(handle)


def load_reference_records() -> list[BenchRecord]:
    """The published synthetic-results table bundled as package data."""
    text = resources.files("lsqbench.data").joinpath(REFERENCE_RESOURCE).read_text("utf-8")
    return read_records(io.StringIO(text))


def records_source(
    path: Path | None, *, reference: bool
) -> tuple[str, Callable[[], list[BenchRecord]]]:
    """Resolve the ``--in`` / ``--reference`` pair shared by report and plot."""
    if reference:
        return "reference", load_reference_records
    if path is None:
        raise SchemaError("no records source: pass --in PATH or --reference")
    return str(path), lambda: read_records_csv(path)
