"""Evaluation quantities: training MSE, coefficient error, condition factor."""

from __future__ import annotations

from typing import Any

import numpy as np

from lsqbench.core.matcore import as_matrix, as_vector, svd
from lsqbench.errors import DegenerateInputError, ShapeError


def mse(x: Any, beta: Any, y: Any) -> float:
    """Mean squared residual ``(1/n) * ||x @ beta - y||^2``."""
    x = as_matrix(x, name="x")
    beta = as_vector(beta, name="beta")
    y = as_vector(y, name="y")
    if x.shape[1] != beta.shape[0] or x.shape[0] != y.shape[0]:
        raise ShapeError(
            f"mse shapes do not conform: x {x.shape}, beta {beta.shape}, y {y.shape}"
        )
    residual = x @ beta - y
    return float(residual @ residual) / x.shape[0]


def coef_error(beta_hat: Any, beta_star: Any) -> float:
    """Squared Euclidean distance between coefficient vectors."""
    beta_hat = as_vector(beta_hat, name="beta_hat")
    beta_star = as_vector(beta_star, name="beta_star")
    if beta_hat.shape != beta_star.shape:
        raise ShapeError(
            f"coefficient lengths differ: {beta_hat.shape[0]} vs {beta_star.shape[0]}"
        )
    diff = beta_hat - beta_star
    return float(diff @ diff)


def measured_cond_factor(x: Any, rcond: float | None = None) -> float:
    """Smallest over largest singular value; 0 when the smallest truncates."""
    x = as_matrix(x, name="x")
    if not np.any(x):
        raise DegenerateInputError("condition factor of an all-zero matrix is undefined")
    result = svd(x)
    if result.rank(rcond) < result.s.shape[0]:
        return 0.0
    return float(result.s[-1] / result.s[0])
