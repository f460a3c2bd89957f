"""Synthetic regression problems with a prescribed condition factor.

The design matrix is built from its SVD, ``x = U @ diag(sigma) @ V.T``,
with Haar-random orthonormal factors and a geometric spectrum whose
smallest-to-largest ratio equals the requested condition factor. The
spectrum is scaled by ``sqrt(n)`` so ``x.T @ x / n`` has unit top
eigenvalue. Ground-truth coefficients are all ones.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from lsqbench.core.matcore import (
    Matrix,
    Rng,
    Vector,
    gaussian_matrix,
    householder_qr,
    make_rng,
)
from lsqbench.errors import ShapeError

DEFAULT_NOISE_SIGMA = 0.1


class ProblemSpec(BaseModel):
    """Generation recipe for one synthetic problem."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    n: int = Field(ge=1)
    d: int = Field(ge=1)
    cond: float = Field(gt=0.0, le=1.0)
    noise_sigma: float = Field(default=DEFAULT_NOISE_SIGMA, ge=0.0)
    seed: int = Field(default=0, ge=0, lt=2**64)

    @model_validator(mode="after")
    def _check_shape(self) -> "ProblemSpec":
        if self.n < self.d:
            raise ValueError(f"n must be >= d, got n={self.n}, d={self.d}")
        return self


@dataclass(frozen=True, eq=False)
class SyntheticProblem:
    """Realized problem: design matrix, response and ground truth."""

    x: Matrix
    y: Vector
    beta_star: Vector
    spec: ProblemSpec

    @property
    def n(self) -> int:
        return int(self.x.shape[0])

    @property
    def d(self) -> int:
        return int(self.x.shape[1])

    @property
    def true_cond(self) -> float:
        """Condition factor built into ``x`` (exact up to rounding)."""
        return self.spec.cond


def geometric_spectrum(d: int, cond: float, scale: float) -> Vector:
    """Log-linearly spaced singular values from ``scale`` down to ``scale * cond``."""
    if d < 1:
        raise ShapeError(f"spectrum length must be >= 1, got {d}")
    if not 0.0 < cond <= 1.0:
        raise ValueError(f"cond must be in (0, 1], got {cond}")
    if scale <= 0.0:
        raise ValueError(f"scale must be positive, got {scale}")
    if d == 1:
        return np.array([float(scale)])
    exponents = np.arange(d, dtype=np.float64) / (d - 1)
    return scale * np.power(cond, exponents)


def random_orthonormal(rows: int, cols: int, rng: Rng) -> Matrix:
    """Haar-distributed orthonormal frame via sign-fixed QR of a Gaussian matrix."""
    if rows < cols:
        raise ShapeError(f"orthonormal frame needs rows >= cols, got {rows}x{cols}")
    q, r = householder_qr(gaussian_matrix(rows, cols, rng))
    signs = np.where(np.diag(r) < 0.0, -1.0, 1.0)
    return q * signs


def make_problem(spec: ProblemSpec) -> SyntheticProblem:
    """Realize ``spec`` deterministically from its seed."""
    rng = make_rng(spec.seed)
    u = random_orthonormal(spec.n, spec.d, rng)
    v = random_orthonormal(spec.d, spec.d, rng)
    sigma = geometric_spectrum(spec.d, spec.cond, scale=float(np.sqrt(spec.n)))
    x = (u * sigma) @ v.T
    beta_star = np.ones(spec.d)
    # noise is drawn last so specs differing only in cond share it
    noise = spec.noise_sigma * rng.standard_normal(spec.n)
    y = x @ beta_star + noise
    return SyntheticProblem(x=x, y=y, beta_star=beta_star, spec=spec)
