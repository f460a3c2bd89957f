"""Ordinary least squares solvers.

Three exact/iterative methods are compared:

1. ``solve_pinv``: SVD-based Moore-Penrose pseudoinverse (minimum-norm
   least-squares solution, robust to rank deficiency).
2. ``solve_normal_equations``: Cholesky on ``x.T @ x``; an independent
   oracle for full-rank inputs.
3. ``solve_gd``: batch gradient descent from the zero vector with a fixed
   learning rate, stopping on the Euclidean norm of the coefficient step.

``solve_hybrid`` warm-starts gradient descent from the pseudoinverse
solution of a leading row subset.
"""

from __future__ import annotations

import logging
import math
import time
from dataclasses import dataclass
from enum import Enum
from typing import Any, Callable

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from lsqbench.core.matcore import (
    Matrix,
    Vector,
    as_matrix,
    as_vector,
    cholesky_solve,
    svd,
)
from lsqbench.errors import ConfigurationError, ShapeError

logger = logging.getLogger(__name__)


class Method(str, Enum):
    """Solver tags as they appear in output."""

    PINV = "pinv"
    NORMAL = "normal"
    GD = "gd"
    HYBRID = "hybrid"


class GdConfig(BaseModel):
    """Gradient descent hyperparameters."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    alpha: float = Field(default=0.01, gt=0.0)
    tol: float = Field(default=1e-6, gt=0.0)
    max_iter: int = Field(default=10_000, ge=1)
    normalized: bool = True
    record_history: bool = False


@dataclass(frozen=True, eq=False)
class FitResult:
    """Solver output."""

    beta_hat: Vector
    iterations: int
    converged: bool
    wall_seconds: float
    method: Method
    loss_history: tuple[float, ...] = ()


def _check_system(x: Any, y: Any) -> tuple[Matrix, Vector]:
    x = as_matrix(x, name="x")
    y = as_vector(y, name="y")
    if x.shape[0] != y.shape[0]:
        raise ShapeError(f"x has {x.shape[0]} rows but y has length {y.shape[0]}")
    return x, y


def pinv(a: Any, rcond: float | None = None, *, check_finite: bool = True) -> Matrix:
    """Moore-Penrose pseudoinverse ``V @ diag(1/s) @ U.T``.

    Singular values at or below ``rcond * s_max`` are zeroed instead of
    inverted. ``rcond`` defaults to ``eps * max(rows, cols)``. Callers that
    already validated ``a`` pass ``check_finite=False``.
    """
    a = as_matrix(a, name="a", allow_nonfinite=not check_finite)
    if rcond is not None and rcond < 0.0:
        raise ValueError(f"rcond must be >= 0, got {rcond}")
    result = svd(a, check_finite=False)
    cutoff = (result.default_rcond() if rcond is None else rcond) * result.s[0]
    keep = result.s > cutoff
    inverse = np.zeros_like(result.s)
    inverse[keep] = 1.0 / result.s[keep]
    return (result.vt.T * inverse) @ result.u.T


def solve_pinv(x: Any, y: Any) -> FitResult:
    x, y = _check_system(x, y)
    start = time.perf_counter()
    beta_hat = pinv(x, check_finite=False) @ y
    elapsed = time.perf_counter() - start
    logger.debug("pinv solve %dx%d took %.6fs", x.shape[0], x.shape[1], elapsed)
    return FitResult(
        beta_hat=beta_hat,
        iterations=0,
        converged=True,
        wall_seconds=elapsed,
        method=Method.PINV,
    )


def solve_normal_equations(x: Any, y: Any) -> FitResult:
    """Solve ``(x.T @ x) beta = x.T @ y``; raises ``SingularMatrixError`` on rank deficiency."""
    x, y = _check_system(x, y)
    start = time.perf_counter()
    beta_hat = cholesky_solve(x.T @ x, x.T @ y)
    elapsed = time.perf_counter() - start
    return FitResult(
        beta_hat=beta_hat,
        iterations=0,
        converged=True,
        wall_seconds=elapsed,
        method=Method.NORMAL,
    )


def _gradient_scale(n: int, config: GdConfig) -> float:
    return config.alpha * (2.0 / n if config.normalized else 2.0)


def gd_step(x: Any, y: Any, beta: Any, config: GdConfig) -> Vector:
    """One update ``beta - alpha * (2/n) * x.T @ (x @ beta - y)``.

    The unnormalized variant drops the ``1/n``. Non-finite values propagate.
    """
    x, y = _check_system(x, y)
    beta = as_vector(beta, name="beta", allow_nonfinite=True)
    if beta.shape[0] != x.shape[1]:
        raise ShapeError(f"beta has length {beta.shape[0]}, expected {x.shape[1]}")
    return beta - _gradient_scale(x.shape[0], config) * (x.T @ (x @ beta - y))


def _loss(x: Matrix, y: Vector, beta: Vector) -> float:
    residual = x @ beta - y
    return float(residual @ residual) / x.shape[0]


def solve_gd(
    x: Any,
    y: Any,
    config: GdConfig | None = None,
    *,
    beta0: Any = None,
) -> FitResult:
    """Batch gradient descent with a coefficient-step stopping rule.

    Stops when ``||beta_next - beta|| < tol`` (converged) or after
    ``max_iter`` steps. A non-finite iterate ends the run immediately with
    the last finite iterate and ``converged=False``.
    """
    config = config or GdConfig()
    x, y = _check_system(x, y)
    n, d = x.shape
    if beta0 is None:
        beta = np.zeros(d)
    else:
        beta = np.array(as_vector(beta0, name="beta0"))
        if beta.shape[0] != d:
            raise ShapeError(f"beta0 has length {beta.shape[0]}, expected {d}")

    xt = np.ascontiguousarray(x.T)
    step = _gradient_scale(n, config)
    history: list[float] = [_loss(x, y, beta)] if config.record_history else []
    iterations = config.max_iter
    converged = False

    start = time.perf_counter()
    # overflow on a diverging run is detected through the step norm below
    with np.errstate(over="ignore", invalid="ignore"):
        for t in range(config.max_iter):
            residual = x @ beta
            residual -= y
            update = step * (xt @ residual)
            delta = math.sqrt(float(update @ update))
            if not math.isfinite(delta):
                logger.warning("gradient descent diverged at iteration %d", t + 1)
                iterations = t
                break
            beta = beta - update
            if config.record_history:
                history.append(_loss(x, y, beta))
            if delta < config.tol:
                iterations = t + 1
                converged = True
                break
    elapsed = time.perf_counter() - start

    logger.debug(
        "gd %dx%d stopped after %d iterations (converged=%s) in %.6fs",
        n,
        d,
        iterations,
        converged,
        elapsed,
    )
    return FitResult(
        beta_hat=beta,
        iterations=iterations,
        converged=converged,
        wall_seconds=elapsed,
        method=Method.GD,
        loss_history=tuple(history),
    )


def solve_hybrid(
    x: Any,
    y: Any,
    config: GdConfig | None = None,
    *,
    warm_rows: int | None = None,
) -> FitResult:
    """Gradient descent warm-started from the pinv fit of the first ``warm_rows`` rows."""
    x, y = _check_system(x, y)
    n, d = x.shape
    warm_rows = warm_rows if warm_rows is not None else min(n, max(d, n // 10))
    if not d <= warm_rows <= n:
        raise ConfigurationError(f"warm_rows must be in [{d}, {n}], got {warm_rows}")
    start = time.perf_counter()
    beta0 = pinv(x[:warm_rows]) @ y[:warm_rows]
    fit = solve_gd(x, y, config, beta0=beta0)
    elapsed = time.perf_counter() - start
    return FitResult(
        beta_hat=fit.beta_hat,
        iterations=fit.iterations,
        converged=fit.converged,
        wall_seconds=elapsed,
        method=Method.HYBRID,
        loss_history=fit.loss_history,
    )


Solver = Callable[[Matrix, Vector, GdConfig], FitResult]

SOLVERS: dict[Method, Solver] = {
    Method.PINV: lambda x, y, _config: solve_pinv(x, y),
    Method.NORMAL: lambda x, y, _config: solve_normal_equations(x, y),
    Method.GD: lambda x, y, config: solve_gd(x, y, config),
    Method.HYBRID: lambda x, y, config: solve_hybrid(x, y, config),
}
