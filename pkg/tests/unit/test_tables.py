"""Unit tests for report table rendering."""

from __future__ import annotations

import pytest

from lsqbench.core.bench import BenchRecord
from lsqbench.core.stats import describe, group_means
from lsqbench.errors import ConfigurationError
from lsqbench.services.tables import describe_table, grouped_table, records_table, render_table


def test_describe_table_layout(reference_records: list[BenchRecord]) -> None:
    rows, headers = describe_table(describe(reference_records), ["time_gd", "iters_gd"])
    assert headers == ["stat", "time_gd", "iters_gd"]
    assert [row[0] for row in rows] == ["count", "mean", "std", "min", "25%", "50%", "75%", "max"]
    assert rows[1][1] == pytest.approx(1.66206, abs=5e-6)


def test_describe_table_unknown_column(reference_records: list[BenchRecord]) -> None:
    with pytest.raises(ConfigurationError):
        describe_table(describe(reference_records), ["coef_err_gd"])


def test_grouped_table_markdown(reference_records: list[BenchRecord]) -> None:
    rows, headers = grouped_table(group_means(reference_records, ["d"], ["err_pinv"]))
    text = render_table(rows, headers, "markdown")
    lines = text.splitlines()
    assert lines[0].startswith("| d")
    assert set(lines[1].replace("|", "").replace(" ", "")) <= {"-", ":"}
    assert len(lines) == 4


def test_records_table_csv(small_records: list[BenchRecord]) -> None:
    rows, headers = records_table(small_records, ["n", "cond", "iters_gd", "gd_converged"])
    text = render_table(rows, headers, "csv")
    assert text.splitlines() == [
        "n,cond,iters_gd,gd_converged",
        "100,1,500,true",
        "100,0.001,10000,false",
        "200,1,700,true",
        "200,0.001,10000,false",
    ]


def test_render_table_rejects_unknown_format() -> None:
    with pytest.raises(ConfigurationError):
        render_table([[1]], ["a"], "html")
    with pytest.raises(ConfigurationError):
        records_table([], ["speed"])
