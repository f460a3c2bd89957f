"""Unit tests for the sweep harness: grid ordering, seeding, timing, records."""

from __future__ import annotations

import math
from dataclasses import replace

import pytest
from pydantic import ValidationError

from lsqbench.core import bench
from lsqbench.core.bench import (
    RECORD_COLUMNS,
    BenchRecord,
    SweepGrid,
    cell_seed,
    run_cell,
    run_sweep,
    time_op,
)
from lsqbench.core.datagen import ProblemSpec
from lsqbench.core.solvers import GdConfig
from lsqbench.errors import NumericalFailure

TINY_GRID = SweepGrid(ns=(120, 60), ds=(3, 5), conds=(0.01, 1.0), base_seed=7)


def test_cells_are_ordered_n_then_d_then_descending_cond() -> None:
    keys = [(spec.n, spec.d, spec.cond) for _, spec in TINY_GRID.cells()]
    assert keys == [
        (60, 3, 1.0),
        (60, 3, 0.01),
        (60, 5, 1.0),
        (60, 5, 0.01),
        (120, 3, 1.0),
        (120, 3, 0.01),
        (120, 5, 1.0),
        (120, 5, 0.01),
    ]


def test_cell_seeds_follow_grid_indices() -> None:
    cells = dict(TINY_GRID.cells())
    # n=60 is index 1 in ns, d=3 index 0, cond=1.0 index 1
    assert cells[(1, 0, 1)].seed == cell_seed(7, 1, 0, 1)
    seeds = {spec.seed for spec in cells.values()}
    assert len(seeds) == len(cells)


def test_cell_seed_is_stable_and_sensitive() -> None:
    assert cell_seed(2024, 0, 0, 0) == cell_seed(2024, 0, 0, 0)
    assert cell_seed(2024, 0, 0, 0) != cell_seed(2024, 0, 0, 1)
    assert cell_seed(2024, 0, 0, 0) != cell_seed(2025, 0, 0, 0)
    assert 0 <= cell_seed(1, 2, 3, 4) < 2**64


@pytest.mark.parametrize(
    "kwargs",
    [
        {"ns": (5,), "ds": (10,)},
        {"conds": (0.0,)},
        {"ns": ()},
        {"repeats": 0},
    ],
)
def test_sweep_grid_validation(kwargs: dict) -> None:
    with pytest.raises(ValidationError):
        SweepGrid(**kwargs)


def test_default_grid_has_eight_cells() -> None:
    assert len(SweepGrid().cells()) == 8


def test_time_op_runs_warmup_plus_repeats() -> None:
    calls: list[int] = []

    def work() -> int:
        calls.append(1)
        return len(calls)

    result, seconds = time_op(work, repeats=3)
    assert len(calls) == 4
    assert result == 4
    assert seconds >= 0.0
    with pytest.raises(ValueError):
        time_op(work, repeats=0)


def test_run_cell_fills_every_column() -> None:
    spec = ProblemSpec(n=80, d=4, cond=1.0, seed=3)
    record = run_cell(spec, GdConfig())
    assert (record.n, record.d, record.cond) == (80, 4, 1.0)
    assert record.failure is None
    assert record.gd_converged is True
    assert record.iters_gd < 10_000
    assert abs(record.err_gd - record.err_pinv) < 1e-3
    assert record.coef_err_pinv >= 0.0
    assert set(record.as_row()) == set(RECORD_COLUMNS)


def test_run_cell_tags_pinv_failure(monkeypatch: pytest.MonkeyPatch) -> None:
    def failing_pinv(x, y):
        raise NumericalFailure("Jacobi SVD did not converge", sweeps=60, off_norm=1e-3)

    monkeypatch.setattr(bench, "solve_pinv", failing_pinv)
    record = run_cell(ProblemSpec(n=20, d=2, cond=1.0, seed=1))
    assert record.failure is not None and record.failure.startswith("pinv:")
    assert math.isnan(record.time_pinv)
    assert math.isnan(record.err_gd)


def test_run_sweep_is_deterministic_apart_from_timings() -> None:
    grid = SweepGrid(ns=(60,), ds=(3,), conds=(1.0, 0.01), base_seed=11, gd=GdConfig(max_iter=300))
    seen: list[BenchRecord] = []
    first = run_sweep(grid, progress=seen.append)
    second = run_sweep(grid)
    assert seen == first

    def strip(record: BenchRecord) -> BenchRecord:
        return replace(record, time_pinv=0.0, time_gd=0.0)

    assert [strip(r) for r in first] == [strip(r) for r in second]
    assert [r.cond for r in first] == [1.0, 0.01]
    assert first[1].iters_gd == 300
    assert first[1].gd_converged is False
