"""Aggregation of sweep records: descriptive statistics and grouped means.

Conventions match the published summary tables: sample standard
deviation (divisor count - 1) and quantiles by linear interpolation at
position ``(count - 1) * p``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
import pandas as pd

from lsqbench.core.bench import NUMERIC_COLUMNS, BenchRecord
from lsqbench.errors import ConfigurationError, EmptyInputError

GROUP_KEYS = ("n", "d", "cond")
SUMMARY_FIELDS = ("count", "mean", "std", "min", "q25", "median", "q75", "max")


@dataclass(frozen=True)
class StatsSummary:
    count: float
    mean: float
    std: float
    min: float
    q25: float
    median: float
    q75: float
    max: float
    std_defined: bool = True


def records_frame(records: Iterable[BenchRecord]) -> pd.DataFrame:
    rows = [record.as_row() for record in records]
    if not rows:
        raise EmptyInputError("no records to aggregate")
    return pd.DataFrame(rows)


def describe(records: Sequence[BenchRecord]) -> dict[str, StatsSummary]:
    """Per-column summary for every numeric column that has data.

    Extension columns that are entirely missing (e.g. when reading the
    published table) are omitted.
    """
    frame = records_frame(records)
    summaries: dict[str, StatsSummary] = {}
    for column in NUMERIC_COLUMNS:
        values = frame[column].astype(float).dropna()
        if values.empty:
            continue
        count = len(values)
        # a diverged run leaves inf in err_gd; its spread is undefined, not zero
        with np.errstate(invalid="ignore", over="ignore"):
            mean = float(values.mean())
            std = float(values.std(ddof=1)) if count > 1 else 0.0
            quartiles = [
                float(values.quantile(p, interpolation="linear")) for p in (0.25, 0.5, 0.75)
            ]
        std_defined = count > 1 and math.isfinite(std)
        summaries[column] = StatsSummary(
            count=float(count),
            mean=mean,
            std=std if std_defined else 0.0,
            min=float(values.min()),
            q25=quartiles[0],
            median=quartiles[1],
            q75=quartiles[2],
            max=float(values.max()),
            std_defined=std_defined,
        )
    return summaries


def group_means(
    records: Sequence[BenchRecord],
    keys: Sequence[str],
    value_columns: Sequence[str],
) -> pd.DataFrame:
    """Arithmetic mean of each value column per key combination, keys ascending."""
    if not keys:
        raise ConfigurationError("group_means needs at least one key")
    unknown_keys = [key for key in keys if key not in GROUP_KEYS]
    if unknown_keys:
        raise ConfigurationError(
            f"unknown group key(s) {', '.join(unknown_keys)}; choose from {', '.join(GROUP_KEYS)}"
        )
    unknown = [column for column in value_columns if column not in NUMERIC_COLUMNS]
    if unknown:
        raise ConfigurationError(
            f"unknown column(s) {', '.join(unknown)}; choose from {', '.join(NUMERIC_COLUMNS)}"
        )
    frame = records_frame(records)
    grouped = (
        frame[list(keys) + list(value_columns)]
        .astype({column: float for column in value_columns})
        .groupby(list(keys), sort=True)
        .mean()
        .reset_index()
    )
    return grouped.sort_values(list(keys), kind="stable").reset_index(drop=True)
