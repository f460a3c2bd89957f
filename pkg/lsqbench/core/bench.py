"""Parameter sweep over (n, d, cond): time both solvers and collect records.

Execution is strictly serial so wall-clock measurements of one cell are
not perturbed by another.
"""

from __future__ import annotations

import logging
import math
import time
from dataclasses import dataclass, replace
from typing import Any, Callable, TypeVar

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from lsqbench.core.datagen import DEFAULT_NOISE_SIGMA, ProblemSpec, make_problem
from lsqbench.core.metrics import coef_error, mse
from lsqbench.core.solvers import GdConfig, solve_gd, solve_pinv
from lsqbench.errors import NumericalError

logger = logging.getLogger(__name__)

T = TypeVar("T")

DEFAULT_NS = (1000, 5000)
DEFAULT_DS = (10, 50)
DEFAULT_CONDS = (1.0, 0.001)
DEFAULT_SEED = 2024

# Table-1 columns first, artifact extensions after.
TABLE_COLUMNS = ("n", "d", "cond", "time_pinv", "err_pinv", "time_gd", "err_gd", "iters_gd")
EXTENSION_COLUMNS = ("coef_err_pinv", "coef_err_gd", "gd_converged")
RECORD_COLUMNS = TABLE_COLUMNS + EXTENSION_COLUMNS
NUMERIC_COLUMNS = TABLE_COLUMNS + ("coef_err_pinv", "coef_err_gd")


class SweepGrid(BaseModel):
    """Cartesian grid of sweep cells plus shared run settings."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    ns: tuple[int, ...] = Field(default=DEFAULT_NS, min_length=1)
    ds: tuple[int, ...] = Field(default=DEFAULT_DS, min_length=1)
    conds: tuple[float, ...] = Field(default=DEFAULT_CONDS, min_length=1)
    noise_sigma: float = Field(default=DEFAULT_NOISE_SIGMA, ge=0.0)
    base_seed: int = Field(default=DEFAULT_SEED, ge=0, lt=2**64)
    repeats: int = Field(default=1, ge=1)
    gd: GdConfig = Field(default_factory=GdConfig)

    @model_validator(mode="after")
    def _check_cells(self) -> "SweepGrid":
        for n in self.ns:
            for d in self.ds:
                if n < d:
                    raise ValueError(f"every (n, d) pair needs n >= d, got n={n}, d={d}")
        for cond in self.conds:
            if not 0.0 < cond <= 1.0:
                raise ValueError(f"cond must be in (0, 1], got {cond}")
        return self

    def cells(self) -> list[tuple[tuple[int, int, int], ProblemSpec]]:
        """Cells in record order: n ascending, d ascending, cond descending.

        Each entry carries the (n, d, cond) indices into the grid lists as
        given, which feed ``cell_seed``.
        """
        order_n = sorted(range(len(self.ns)), key=lambda i: self.ns[i])
        order_d = sorted(range(len(self.ds)), key=lambda i: self.ds[i])
        order_c = sorted(range(len(self.conds)), key=lambda i: -self.conds[i])
        cells = []
        for i_n in order_n:
            for i_d in order_d:
                for i_c in order_c:
                    spec = ProblemSpec(
                        n=self.ns[i_n],
                        d=self.ds[i_d],
                        cond=self.conds[i_c],
                        noise_sigma=self.noise_sigma,
                        seed=cell_seed(self.base_seed, i_n, i_d, i_c),
                    )
                    cells.append(((i_n, i_d, i_c), spec))
        return cells


@dataclass(frozen=True)
class BenchRecord:
    """One sweep cell; the first eight fields mirror the published results table."""

    n: int
    d: int
    cond: float
    time_pinv: float
    err_pinv: float
    time_gd: float
    err_gd: float
    iters_gd: int
    coef_err_pinv: float = math.nan
    coef_err_gd: float = math.nan
    gd_converged: bool | None = None
    failure: str | None = None

    def as_row(self) -> dict[str, Any]:
        return {column: getattr(self, column) for column in RECORD_COLUMNS}


def cell_seed(base_seed: int, i_n: int, i_d: int, i_cond: int) -> int:
    """Independent, reproducible 64-bit seed for one grid cell."""
    sequence = np.random.SeedSequence([base_seed, i_n, i_d, i_cond])
    return int(sequence.generate_state(1, dtype=np.uint64)[0])


def time_op(work: Callable[[], T], repeats: int = 1) -> tuple[T, float]:
    """Run ``work`` once untimed, then ``repeats`` timed runs; report the fastest."""
    if repeats < 1:
        raise ValueError(f"repeats must be >= 1, got {repeats}")
    work()
    timings = []
    for _ in range(repeats):
        start = time.perf_counter()
        result = work()
        timings.append(time.perf_counter() - start)
    return result, min(timings)


def run_cell(spec: ProblemSpec, gd: GdConfig | None = None, repeats: int = 1) -> BenchRecord:
    """Generate one problem and time both solvers on it."""
    gd = gd or GdConfig()
    problem = make_problem(spec)
    x, y = problem.x, problem.y
    record = BenchRecord(
        n=spec.n,
        d=spec.d,
        cond=spec.cond,
        time_pinv=math.nan,
        err_pinv=math.nan,
        time_gd=math.nan,
        err_gd=math.nan,
        iters_gd=0,
    )

    try:
        fit_pinv, time_pinv = time_op(lambda: solve_pinv(x, y), repeats)
    except NumericalError as exc:
        logger.warning("pinv failed for n=%d d=%d cond=%g: %s", spec.n, spec.d, spec.cond, exc)
        return replace(record, failure=f"pinv: {exc}")
    fit_gd, time_gd = time_op(lambda: solve_gd(x, y, gd), repeats)

    return replace(
        record,
        time_pinv=time_pinv,
        err_pinv=mse(x, fit_pinv.beta_hat, y),
        time_gd=time_gd,
        err_gd=_safe_mse(x, fit_gd.beta_hat, y),
        iters_gd=fit_gd.iterations,
        coef_err_pinv=coef_error(fit_pinv.beta_hat, problem.beta_star),
        coef_err_gd=coef_error(fit_gd.beta_hat, problem.beta_star),
        gd_converged=fit_gd.converged,
    )


def _safe_mse(x: Any, beta: Any, y: Any) -> float:
    with np.errstate(over="ignore", invalid="ignore"):
        residual = x @ beta - y
        value = float(residual @ residual) / x.shape[0]
    return value if math.isfinite(value) else math.inf


def run_sweep(
    grid: SweepGrid,
    *,
    progress: Callable[[BenchRecord], None] | None = None,
) -> list[BenchRecord]:
    """One record per grid cell, in deterministic (n, d, -cond) order."""
    records: list[BenchRecord] = []
    cells = grid.cells()
    for index, (_indices, spec) in enumerate(cells, start=1):
        record = run_cell(spec, grid.gd, grid.repeats)
        logger.info(
            "cell %d/%d n=%d d=%d cond=%g: iters_gd=%d time_pinv=%.5fs time_gd=%.5fs",
            index,
            len(cells),
            spec.n,
            spec.d,
            spec.cond,
            record.iters_gd,
            record.time_pinv,
            record.time_gd,
        )
        records.append(record)
        if progress is not None:
            progress(record)
    return records
