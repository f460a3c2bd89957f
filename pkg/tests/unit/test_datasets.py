"""Unit tests for CSV dataset ingestion and problem dumps."""

from __future__ import annotations

import io
import logging
from pathlib import Path

import numpy as np
import pytest

from lsqbench.core.datagen import ProblemSpec, make_problem
from lsqbench.errors import DegenerateInputError, ParseError, SchemaError
from lsqbench.infrastructure.datasets import (
    load_csv_dataset,
    parse_dataset,
    write_problem,
    write_problem_csv,
)


def test_target_and_features_in_header_order() -> None:
    dataset = parse_dataset("a,y,b\n1,10,2\n3,20,4\n5,30,6\n", "y")
    assert dataset.feature_names == ("a", "b")
    assert dataset.x.tolist() == [[1.0, 2.0], [3.0, 4.0], [5.0, 6.0]]
    assert dataset.y.tolist() == [10.0, 20.0, 30.0]
    assert not dataset.standardized


def test_standardize_gives_zero_mean_unit_std(rng: np.random.Generator) -> None:
    values = rng.normal(5.0, 3.0, size=(50, 3))
    lines = ["f1,f2,f3,y"] + [",".join(repr(float(v)) for v in row) + ",1.0" for row in values]
    dataset = parse_dataset("\n".join(lines), "y", standardize=True)
    assert np.all(np.abs(dataset.x.mean(axis=0)) <= 1e-10)
    assert np.allclose(dataset.x.std(axis=0, ddof=1), 1.0, atol=1e-10)
    assert dataset.standardized


def test_constant_feature_is_zeroed_with_warning(caplog: pytest.LogCaptureFixture) -> None:
    with caplog.at_level(logging.WARNING, logger="lsqbench.infrastructure.datasets"):
        dataset = parse_dataset("c,v,y\n7,1,1\n7,2,2\n7,3,3\n", "y", standardize=True)
    assert dataset.x[:, 0].tolist() == [0.0, 0.0, 0.0]
    assert "'c' is constant" in caplog.text


def test_comments_and_blank_lines_are_skipped() -> None:
    text = "# generated\n\nx_1,y\n# note\n1,2\n\n3,4\n"
    dataset = parse_dataset(text, "y")
    assert dataset.x.tolist() == [[1.0], [3.0]]


def test_missing_target_is_schema_error() -> None:
    with pytest.raises(SchemaError, match="target"):
        parse_dataset("a,b\n1,2\n3,4\n", "y")
    with pytest.raises(SchemaError):
        parse_dataset("y\n1\n2\n", "y")


def test_non_numeric_cell_reports_physical_line_and_column() -> None:
    text = "# comment\na,y\n1,2\n3,oops\n"
    with pytest.raises(ParseError) as excinfo:
        parse_dataset(text, "y")
    assert excinfo.value.line == 4
    assert excinfo.value.column == "y"


def test_too_few_rows_is_degenerate() -> None:
    with pytest.raises(DegenerateInputError):
        parse_dataset("a,y\n1,2\n", "y")


def test_load_csv_dataset_reads_file(tmp_path: Path) -> None:
    path = tmp_path / "data.csv"
    path.write_text("a,b,y\n1,0,1\n0,1,2\n1,1,3\n", encoding="utf-8")
    dataset = load_csv_dataset(path, "y")
    assert dataset.x.shape == (3, 2)
    with pytest.raises(FileNotFoundError):
        load_csv_dataset(tmp_path / "absent.csv", "y")


def test_problem_dump_header_and_reload(tmp_path: Path) -> None:
    problem = make_problem(ProblemSpec(n=6, d=2, cond=0.5, seed=3))
    buffer = io.StringIO()
    write_problem(problem, buffer)
    lines = buffer.getvalue().splitlines()
    assert lines[:6] == [
        "# n=6",
        "# d=2",
        "# cond=0.5",
        "# noise_sigma=0.10000000000000001",
        "# seed=3",
        "# beta_star=1,1",
    ]
    assert lines[6] == "x_1,x_2,y"

    path = write_problem_csv(problem, tmp_path / "problem.csv")
    dataset = load_csv_dataset(path, "y")
    assert np.array_equal(dataset.x, problem.x)
    assert np.array_equal(dataset.y, problem.y)


def test_problem_dump_reloads_bit_for_bit(tmp_path: Path) -> None:
    problem = make_problem(ProblemSpec(n=1000, d=10, cond=0.001, seed=11))
    dataset = load_csv_dataset(write_problem_csv(problem, tmp_path / "big.csv"), "y")
    assert np.array_equal(dataset.x, problem.x)
    assert np.array_equal(dataset.y, problem.y)


def test_numeric_cells_accept_nan_and_padding() -> None:
    dataset = parse_dataset("a,y\n 1.5 ,nan\n-2e-3,NaN\n", "y")
    assert dataset.x[:, 0].tolist() == [1.5, -0.002]
    assert np.isnan(dataset.y).all()
