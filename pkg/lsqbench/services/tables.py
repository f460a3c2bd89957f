"""Tabular renderings of records and their aggregates (Markdown or CSV)."""

from __future__ import annotations

import csv
import io
from typing import Any, Mapping, Sequence

import pandas as pd
from tabulate import tabulate

from lsqbench.core.bench import RECORD_COLUMNS, BenchRecord
from lsqbench.core.stats import SUMMARY_FIELDS, StatsSummary
from lsqbench.errors import ConfigurationError
from lsqbench.infrastructure.records import format_float

FORMATS = ("markdown", "csv")

Row = list[Any]


def describe_table(
    summaries: Mapping[str, StatsSummary],
    columns: Sequence[str] | None = None,
) -> tuple[list[Row], list[str]]:
    """One row per statistic, one column per record column (pandas ``describe`` layout)."""
    chosen = list(columns) if columns else list(summaries)
    missing = [column for column in chosen if column not in summaries]
    if missing:
        raise ConfigurationError(f"no statistics for column(s): {', '.join(missing)}")
    headers = ["stat", *chosen]
    labels = {"q25": "25%", "median": "50%", "q75": "75%"}
    rows: list[Row] = []
    for field_name in SUMMARY_FIELDS:
        rows.append(
            [labels.get(field_name, field_name)]
            + [getattr(summaries[column], field_name) for column in chosen]
        )
    return rows, headers


def grouped_table(frame: pd.DataFrame) -> tuple[list[Row], list[str]]:
    headers = [str(column) for column in frame.columns]
    rows = [list(row) for row in frame.itertuples(index=False, name=None)]
    return rows, headers


def records_table(
    records: Sequence[BenchRecord],
    columns: Sequence[str] | None = None,
) -> tuple[list[Row], list[str]]:
    chosen = list(columns) if columns else list(RECORD_COLUMNS)
    unknown = [column for column in chosen if column not in RECORD_COLUMNS]
    if unknown:
        raise ConfigurationError(f"unknown column(s): {', '.join(unknown)}")
    rows = [[record.as_row()[column] for column in chosen] for record in records]
    return rows, chosen


def _cell_text(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if value.is_integer() and abs(value) < 1e15:
            return str(int(value))
        return format_float(value)
    try:
        as_float = float(value)
    except (TypeError, ValueError):
        return str(value)
    return _cell_text(as_float)


def render_table(rows: Sequence[Row], headers: Sequence[str], fmt: str = "markdown") -> str:
    """Render rows as a GitHub pipe table or as CSV text."""
    if fmt not in FORMATS:
        raise ConfigurationError(f"unknown table format {fmt!r}; choose from {', '.join(FORMATS)}")
    text_rows = [[_cell_text(value) for value in row] for row in rows]
    if fmt == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(headers)
        writer.writerows(text_rows)
        return buffer.getvalue()
    return tabulate(text_rows, headers=list(headers), tablefmt="github", disable_numparse=True) + "\n"
