"""End-to-end numerical acceptance checks.

Timing-sensitive checks are marked ``slow`` and assert only orderings and
ratios, never absolute seconds.
"""

from __future__ import annotations

import statistics
from pathlib import Path

import numpy as np
import pytest

from lsqbench.core.bench import SweepGrid, run_cell, run_sweep
from lsqbench.core.datagen import ProblemSpec, make_problem
from lsqbench.core.solvers import GdConfig, pinv, solve_gd, solve_normal_equations, solve_pinv
from lsqbench.infrastructure.records import read_records_csv, write_records_csv
from tests.helpers import random_matrix, relative_frobenius, well_conditioned_problem


def test_penrose_identities_on_random_matrices() -> None:
    rng = np.random.default_rng(1234)
    for index in range(50):
        rows = int(rng.integers(1, 41))
        cols = int(rng.integers(1, 26))
        rank = None
        if index % 3 == 0 and min(rows, cols) > 1:
            rank = int(rng.integers(1, min(rows, cols)))
        a = random_matrix(rng, rows, cols, rank=rank)
        ap = pinv(a)
        assert ap.shape == (cols, rows)
        assert relative_frobenius(a @ ap @ a, a) < 1e-9
        assert relative_frobenius(ap @ a @ ap, ap) < 1e-9
        assert relative_frobenius((a @ ap).T, a @ ap) < 1e-9
        assert relative_frobenius((ap @ a).T, ap @ a) < 1e-9


def test_pinv_and_normal_equations_agree() -> None:
    rng = np.random.default_rng(99)
    for _ in range(20):
        d = int(rng.integers(1, 21))
        n = int(rng.integers(d + 5, 501))
        x, y = well_conditioned_problem(rng, n, d)
        a = solve_pinv(x, y).beta_hat
        b = solve_normal_equations(x, y).beta_hat
        assert np.linalg.norm(a - b) <= 1e-7 * np.linalg.norm(a)


def test_scalar_problem_converges_geometrically() -> None:
    fit = solve_gd([[1.0]], [2.0], GdConfig(alpha=0.01, tol=1e-6))
    assert 523 <= fit.iterations <= 527
    assert abs(fit.beta_hat[0] - 2.0) <= 1e-4


def test_sweep_rerun_and_csv_round_trip_are_reproducible(tmp_path: Path) -> None:
    grid = SweepGrid(ns=(80, 160), ds=(4,), conds=(1.0, 0.01), base_seed=5, gd=GdConfig(max_iter=400))
    first = run_sweep(grid)
    second = run_sweep(grid)
    columns = ("n", "d", "cond", "err_pinv", "err_gd", "iters_gd", "coef_err_pinv", "coef_err_gd")
    for a, b in zip(first, second):
        assert [getattr(a, c) for c in columns] == [getattr(b, c) for c in columns]

    path = write_records_csv(first, tmp_path / "a.csv")
    reread = read_records_csv(path)
    copy = write_records_csv(reread, tmp_path / "b.csv")
    assert path.read_bytes() == copy.read_bytes()


def test_single_cell_is_reproducible_from_its_seed() -> None:
    grid = SweepGrid(ns=(100,), ds=(5,), conds=(0.1,), base_seed=3, gd=GdConfig(max_iter=200))
    (record,) = run_sweep(grid)
    ((_, spec),) = grid.cells()
    again = run_cell(spec, grid.gd)
    assert (again.err_pinv, again.err_gd, again.iters_gd) == (
        record.err_pinv,
        record.err_gd,
        record.iters_gd,
    )


@pytest.mark.slow
def test_default_grid_reproduces_published_pattern() -> None:
    records = run_sweep(SweepGrid())
    assert len(records) == 8
    for record in records:
        assert record.failure is None
        assert 0.007 <= record.err_pinv <= 0.013
        assert record.time_pinv < record.time_gd
        if record.cond == 1.0:
            assert record.gd_converged is True
            assert record.iters_gd < 10_000
            assert abs(record.err_gd - record.err_pinv) <= 1e-3
        else:
            assert record.iters_gd == 10_000
            assert record.gd_converged is False
            assert record.err_gd > record.err_pinv
    assert sum(r.time_gd >= 10.0 * r.time_pinv for r in records) >= 6

    # GD stalls far from the least-squares coefficients on poorly conditioned cells
    spec = next(s for _, s in SweepGrid().cells() if s.cond == 0.001 and s.d == 10)
    problem = make_problem(spec)
    gd = solve_gd(problem.x, problem.y).beta_hat
    exact = solve_pinv(problem.x, problem.y).beta_hat
    assert np.linalg.norm(gd - exact) >= 0.1


def _median_seconds(spec: ProblemSpec, repeats: int = 5) -> tuple[float, float]:
    problem = make_problem(spec)
    pinv_times, gd_times = [], []
    for _ in range(repeats):
        pinv_times.append(solve_pinv(problem.x, problem.y).wall_seconds)
        gd_times.append(solve_gd(problem.x, problem.y).wall_seconds)
    return statistics.median(pinv_times), statistics.median(gd_times)


@pytest.mark.slow
def test_runtime_grows_with_problem_size() -> None:
    by_n = [_median_seconds(ProblemSpec(n=n, d=10, cond=1.0, seed=1)) for n in (500, 2000, 8000)]
    for (pinv_small, gd_small), (pinv_big, gd_big) in zip(by_n, by_n[1:]):
        assert pinv_small <= pinv_big
        assert gd_small <= gd_big

    pinv_d10, gd_d10 = _median_seconds(ProblemSpec(n=1000, d=10, cond=1.0, seed=1))
    pinv_d50, gd_d50 = _median_seconds(ProblemSpec(n=1000, d=50, cond=1.0, seed=1))
    assert pinv_d10 <= pinv_d50
    assert gd_d10 <= gd_d50
