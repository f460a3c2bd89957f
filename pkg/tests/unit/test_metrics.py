"""Unit tests for evaluation metrics."""

from __future__ import annotations

import numpy as np
import pytest

from lsqbench.core.metrics import coef_error, measured_cond_factor, mse
from lsqbench.errors import DegenerateInputError, ShapeError


def test_mse_of_exact_fit_is_zero() -> None:
    x = np.array([[1.0, 0.0], [0.0, 1.0], [1.0, 1.0]])
    assert mse(x, [2.0, 3.0], [2.0, 3.0, 5.0]) == 0.0


def test_mse_averages_squared_residuals() -> None:
    assert mse([[1.0], [1.0]], [0.0], [1.0, 3.0]) == pytest.approx(5.0)


def test_mse_rejects_non_conforming_shapes() -> None:
    with pytest.raises(ShapeError):
        mse(np.ones((3, 2)), [1.0], [1.0, 1.0, 1.0])


def test_coef_error_is_squared_distance() -> None:
    assert coef_error([1.0, 2.0], [1.0, 0.0]) == pytest.approx(4.0)
    with pytest.raises(ShapeError):
        coef_error([1.0], [1.0, 2.0])


def test_measured_cond_factor_of_diagonal() -> None:
    assert measured_cond_factor(np.diag([4.0, 2.0, 1.0])) == pytest.approx(0.25)
    assert measured_cond_factor(np.eye(3)) == pytest.approx(1.0)


def test_measured_cond_factor_rank_deficient_is_zero() -> None:
    x = np.array([[1.0, 2.0], [2.0, 4.0], [3.0, 6.0]])
    assert measured_cond_factor(x) == 0.0


def test_measured_cond_factor_rejects_zero_matrix() -> None:
    with pytest.raises(DegenerateInputError):
        measured_cond_factor(np.zeros((3, 2)))


def test_mse_is_invariant_under_orthogonal_row_transform(rng: np.random.Generator) -> None:
    x = rng.standard_normal((40, 4))
    y = rng.standard_normal(40)
    beta = rng.standard_normal(4)
    q, _ = np.linalg.qr(rng.standard_normal((40, 40)))
    assert mse(q @ x, beta, q @ y) == pytest.approx(mse(x, beta, y), rel=1e-12)


@pytest.mark.parametrize("factor", [1e-3, 0.5, 7.5, 1e4])
def test_measured_cond_factor_ignores_positive_rescaling(
    rng: np.random.Generator, factor: float
) -> None:
    x = rng.standard_normal((30, 5))
    assert measured_cond_factor(factor * x) == pytest.approx(measured_cond_factor(x), rel=1e-10)
