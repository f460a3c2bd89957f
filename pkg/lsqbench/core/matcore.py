"""Dense matrix/vector arithmetic, seeded sampling and factorizations.

Matrices and vectors are float64 numpy arrays in row-major (C) order.
Every function returns new arrays and leaves its inputs untouched, so
values can be shared freely between callers. The only stateful value is
the ``Rng`` passed to the sampling helpers.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, TypeAlias

import numpy as np
import numpy.typing as npt

from lsqbench.errors import (
    DegenerateInputError,
    NumericalFailure,
    ShapeError,
    SingularMatrixError,
)

logger = logging.getLogger(__name__)

Matrix: TypeAlias = npt.NDArray[np.float64]
Vector: TypeAlias = npt.NDArray[np.float64]
Rng: TypeAlias = np.random.Generator

EPS = float(np.finfo(np.float64).eps)
JACOBI_TOL = 1e-14
JACOBI_MAX_SWEEPS = 60
QR_BLOCK = 16


@dataclass(frozen=True, eq=False)
class SvdResult:
    """Thin singular value decomposition ``a = u @ diag(s) @ vt``.

    ``s`` is sorted non-increasing; ``u`` is rows x k with orthonormal
    columns and ``vt`` is k x cols with orthonormal rows, k = min(rows, cols).
    """

    u: Matrix
    s: Vector
    vt: Matrix
    sweeps: int = 0

    def default_rcond(self) -> float:
        return EPS * max(self.u.shape[0], self.vt.shape[1])

    def rank(self, rcond: float | None = None) -> int:
        """Number of singular values above ``rcond * s[0]``."""
        if self.s.size == 0 or self.s[0] == 0.0:
            return 0
        cutoff = (self.default_rcond() if rcond is None else rcond) * self.s[0]
        return int(np.count_nonzero(self.s > cutoff))

    def reconstruct(self) -> Matrix:
        return (self.u * self.s) @ self.vt


def as_matrix(a: Any, *, name: str = "matrix", allow_nonfinite: bool = False) -> Matrix:
    """Coerce ``a`` to a non-empty 2-D float64 array."""
    arr = np.ascontiguousarray(a, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ShapeError(f"{name} must be a non-empty 2-D array, got shape {arr.shape}")
    if not allow_nonfinite and not np.isfinite(arr).all():
        raise DegenerateInputError(f"{name} contains non-finite values")
    return arr


def as_vector(v: Any, *, name: str = "vector", allow_nonfinite: bool = False) -> Vector:
    """Coerce ``v`` to a non-empty 1-D float64 array."""
    arr = np.ascontiguousarray(v, dtype=np.float64)
    if arr.ndim != 1 or arr.shape[0] < 1:
        raise ShapeError(f"{name} must be a non-empty 1-D array, got shape {arr.shape}")
    if not allow_nonfinite and not np.isfinite(arr).all():
        raise DegenerateInputError(f"{name} contains non-finite values")
    return arr


def make_rng(seed: int) -> Rng:
    """Deterministic PCG64 generator for ``seed``."""
    return np.random.Generator(np.random.PCG64(seed))


def mat_mul(a: Any, b: Any) -> Matrix:
    """Standard matrix product ``a @ b``."""
    a = as_matrix(a, name="a")
    b = as_matrix(b, name="b")
    if a.shape[1] != b.shape[0]:
        raise ShapeError(
            f"cannot multiply {a.shape[0]}x{a.shape[1]} by {b.shape[0]}x{b.shape[1]}"
        )
    return a @ b


def transpose(a: Any) -> Matrix:
    return np.ascontiguousarray(as_matrix(a, name="a").T)


def gaussian_matrix(rows: int, cols: int, rng: Rng) -> Matrix:
    """Independent standard-normal entries; advances ``rng``."""
    if rows < 1 or cols < 1:
        raise ShapeError(f"gaussian matrix needs positive shape, got {rows}x{cols}")
    return rng.standard_normal((rows, cols))


def householder_qr(a: Any) -> tuple[Matrix, Matrix]:
    """Thin QR factorization by Householder reflections.

    Returns ``q`` (rows x cols, orthonormal columns) and upper-triangular
    ``r`` (cols x cols). Rank deficiency shows up as small or zero
    diagonal entries of ``r``; callers inspect it.
    """
    a = as_matrix(a, name="a")
    rows, cols = a.shape
    if rows < cols:
        raise ShapeError(f"householder_qr needs rows >= cols, got {rows}x{cols}")
    blocks, r = _householder_qr(a)
    return _apply_q(blocks, np.eye(cols), rows), r


@dataclass(frozen=True, eq=False)
class _ReflectorBlock:
    """Product of consecutive reflectors as ``I - v @ t @ v.T`` on rows ``start:``."""

    start: int
    v: Matrix
    t: Matrix


def _householder_qr(a: Matrix) -> tuple[list[_ReflectorBlock], Matrix]:
    r = np.array(a)
    rows, cols = r.shape
    blocks: list[_ReflectorBlock] = []
    for k0 in range(0, cols, QR_BLOCK):
        k1 = min(k0 + QR_BLOCK, cols)
        width = k1 - k0
        panel = r[k0:, k0:k1]
        v = np.zeros((rows - k0, width))
        taus = np.zeros(width)
        for j in range(width):
            x = panel[j:, j]
            norm_x = float(np.linalg.norm(x))
            if norm_x == 0.0:
                continue
            alpha = -norm_x if x[0] >= 0.0 else norm_x
            h = x.copy()
            h[0] -= alpha
            h /= np.linalg.norm(h)
            panel[j:, j:] -= np.outer(2.0 * h, h @ panel[j:, j:])
            panel[j + 1 :, j] = 0.0
            v[j:, j] = h
            taus[j] = 2.0

        t = np.zeros((width, width))
        for j in range(width):
            t[j, j] = taus[j]
            if j and taus[j]:
                t[:j, j] = -taus[j] * (t[:j, :j] @ (v[:, :j].T @ v[:, j]))
        if k1 < cols:
            trailing = r[k0:, k1:]
            trailing -= v @ (t.T @ (v.T @ trailing))
        blocks.append(_ReflectorBlock(k0, v, t))
    return blocks, np.triu(r[:cols])


def _apply_q(blocks: list[_ReflectorBlock], top: Matrix, rows: int) -> Matrix:
    """``q @ top`` for the full orthogonal factor, ``top`` padded with zero rows."""
    out = np.zeros((rows, top.shape[1]))
    out[: top.shape[0]] = top
    for block in reversed(blocks):
        segment = out[block.start :]
        segment -= block.v @ (block.t @ (block.v.T @ segment))
    return out


def _pivoted_qr(a: Matrix) -> tuple[Matrix, Matrix, npt.NDArray[np.intp]]:
    """Column-pivoted QR of a square ``a``: ``a[:, perm] = q @ r``."""
    r = np.array(a)
    k = r.shape[1]
    q = np.eye(k)
    perm = np.arange(k)
    for j in range(k - 1):
        trailing = r[j:, j:]
        norms = np.einsum("ij,ij->j", trailing, trailing)
        p = j + int(np.argmax(norms))
        if norms[p - j] == 0.0:
            break
        if p != j:
            r[:, [j, p]] = r[:, [p, j]]
            perm[[j, p]] = perm[[p, j]]
        x = r[j:, j]
        norm_x = float(np.linalg.norm(x))
        alpha = -norm_x if x[0] >= 0.0 else norm_x
        h = x.copy()
        h[0] -= alpha
        h /= np.linalg.norm(h)
        r[j:, j:] -= np.outer(2.0 * h, h @ r[j:, j:])
        r[j + 1 :, j] = 0.0
        q[:, j:] -= np.outer(q[:, j:] @ h, 2.0 * h)
    return q, np.triu(r), perm


def svd(a: Any, *, check_finite: bool = True) -> SvdResult:
    """Thin SVD by one-sided Jacobi rotations.

    The input is reduced to its triangular factor ``r`` first. Columns of
    ``r`` that are already orthogonal give the decomposition directly;
    otherwise ``r`` is QR-factorized again with column pivoting and the
    Jacobi rotations run on the transposed second factor, whose columns
    are close to orthogonal and converge in a few sweeps. Wide inputs are
    decomposed through their transpose.
    """
    return _svd(as_matrix(a, name="a", allow_nonfinite=not check_finite))


def _svd(a: Matrix) -> SvdResult:
    rows, cols = a.shape
    if rows < cols:
        wide = _svd(np.ascontiguousarray(a.T))
        return SvdResult(
            u=np.ascontiguousarray(wide.vt.T),
            s=wide.s,
            vt=np.ascontiguousarray(wide.u.T),
            sweeps=wide.sweeps,
        )

    blocks, r = _householder_qr(a)
    if _off_measure(r) <= JACOBI_TOL:
        s, unit, order = _split_columns(r)
        u = _apply_q(blocks, unit, rows)
        vt = np.eye(cols)[order]
        sweeps = 0
    else:
        q2, r2, perm = _pivoted_qr(r)
        w, rotation, sweeps = _jacobi_orthogonalize(np.ascontiguousarray(r2.T))
        s, unit, order = _split_columns(w)
        u = _apply_q(blocks, q2 @ rotation[:, order], rows)
        v = np.empty_like(unit)
        v[perm] = unit
        vt = np.ascontiguousarray(v.T)
    logger.debug("Jacobi SVD %dx%d converged in %d sweeps", rows, cols, sweeps)
    return SvdResult(u=u, s=s, vt=vt, sweeps=sweeps)


def _off_measure(w: Matrix) -> float:
    """Largest |cosine| between two distinct columns of ``w``; zero columns are skipped."""
    gram = w.T @ w
    norms = np.sqrt(np.diag(gram))
    scale = np.outer(norms, norms)
    cosines = np.divide(np.abs(gram), scale, out=np.zeros_like(gram), where=scale > 0.0)
    np.fill_diagonal(cosines, 0.0)
    return float(cosines.max()) if cosines.size else 0.0


def _round_robin_rounds(k: int) -> list[list[int]]:
    """Column arrangements for one sweep; position i meets position i + m/2.

    Odd ``k`` adds a padding column ``k`` that sits out one round. Every
    pair of real columns meets exactly once per sweep.
    """
    m = k + (k % 2)
    half = m // 2
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        rounds.append(players[:half] + players[: half - 1 : -1])
        players = [players[0], players[-1], *players[1:-1]]
    return rounds


@lru_cache(maxsize=None)
def _round_robin_steps(k: int) -> tuple[npt.NDArray[np.intp], tuple[npt.NDArray[np.intp], ...]]:
    """Initial arrangement plus the gather taking each round to the next."""
    rounds = _round_robin_rounds(k)
    steps = []
    for index, current in enumerate(rounds):
        position = {column: i for i, column in enumerate(current)}
        following = rounds[(index + 1) % len(rounds)]
        steps.append(np.array([position[column] for column in following], dtype=np.intp))
    return np.array(rounds[0], dtype=np.intp), tuple(steps)


def _jacobi_orthogonalize(w0: Matrix) -> tuple[Matrix, Matrix, int]:
    """Rotate column pairs of ``w0`` until they are mutually orthogonal.

    Returns ``w0 @ rotation`` (orthogonal columns), the accumulated
    ``rotation`` and the number of sweeps run.
    """
    rows, k = w0.shape
    start, steps = _round_robin_steps(k)
    half = start.size // 2
    stacked = np.zeros((rows + k, start.size))
    stacked[:rows, :k] = w0
    stacked[rows:, :k] = np.eye(k)
    work = stacked[:, start]

    sweeps = 0
    off = _off_measure(w0)
    while off > JACOBI_TOL:
        if sweeps == JACOBI_MAX_SWEEPS:
            raise NumericalFailure("Jacobi SVD did not converge", sweeps=sweeps, off_norm=off)
        for step in steps:
            left = work[:, :half]
            right = work[:, half:]
            lw, rw = left[:rows], right[:rows]
            alpha = np.einsum("ij,ij->j", lw, lw)
            beta = np.einsum("ij,ij->j", rw, rw)
            gamma = np.einsum("ij,ij->j", lw, rw)
            # below the stopping threshold; the Gram measure rounds differently
            active = np.abs(gamma) > 0.5 * JACOBI_TOL * np.sqrt(alpha * beta)
            if active.any():
                zeta = (beta - alpha) / (2.0 * np.where(active, gamma, 1.0))
                t = np.where(
                    active, np.copysign(1.0, zeta) / (np.abs(zeta) + np.hypot(1.0, zeta)), 0.0
                )
                c = 1.0 / np.hypot(1.0, t)
                s = c * t
                rotated = c * left - s * right
                right[...] = s * left + c * right
                left[...] = rotated
            work = work[:, step]
        sweeps += 1
        off = _off_measure(work[:rows])

    natural = work[:, np.argsort(start)]
    return natural[:rows, :k], natural[rows:, :k], sweeps


def _split_columns(w: Matrix) -> tuple[Vector, Matrix, npt.NDArray[np.intp]]:
    """Column norms sorted non-increasing, the matching unit columns and the sort order."""
    s = np.sqrt(np.einsum("ij,ij->j", w, w))
    order = np.argsort(-s, kind="stable")
    s = s[order]
    w = w[:, order]
    null = s == 0.0
    unit = np.zeros_like(w)
    unit[:, ~null] = w[:, ~null] / s[~null]
    if null.any():
        unit = _complete_orthonormal(unit, null)
    return s, unit, order


def _complete_orthonormal(u: Matrix, missing: npt.NDArray[np.bool_]) -> Matrix:
    """Fill ``missing`` columns so all columns of ``u`` are orthonormal."""
    u = u.copy()
    rows = u.shape[0]
    basis = u[:, ~missing]
    for j in np.flatnonzero(missing):
        projector = np.eye(rows) - basis @ basis.T
        pick = int(np.argmax(np.einsum("ij,ij->j", projector, projector)))
        column = projector[:, pick]
        column = column - basis @ (basis.T @ column)
        column /= np.linalg.norm(column)
        u[:, j] = column
        basis = np.column_stack([basis, column])
    return u


def cholesky_solve(a: Any, b: Any) -> Vector:
    """Solve ``a @ x = b`` for symmetric positive definite ``a``."""
    a = as_matrix(a, name="a")
    b = as_vector(b, name="b")
    n = a.shape[0]
    if a.shape[1] != n:
        raise ShapeError(f"cholesky_solve needs a square matrix, got {a.shape[0]}x{a.shape[1]}")
    if b.shape[0] != n:
        raise ShapeError(f"right-hand side has length {b.shape[0]}, expected {n}")
    if np.linalg.norm(a - a.T) > 1e-10 * np.linalg.norm(a):
        raise DegenerateInputError("cholesky_solve needs a symmetric matrix")

    threshold = EPS * float(np.trace(a))
    lower = np.zeros_like(a)
    for j in range(n):
        row = lower[j, :j]
        pivot = float(a[j, j] - row @ row)
        if pivot <= threshold:
            raise SingularMatrixError(
                f"matrix is not positive definite: pivot {pivot:.3e} at column {j}"
            )
        lower[j, j] = math.sqrt(pivot)
        if j + 1 < n:
            lower[j + 1 :, j] = (a[j + 1 :, j] - lower[j + 1 :, :j] @ row) / lower[j, j]

    z = np.zeros(n)
    for i in range(n):
        z[i] = (b[i] - lower[i, :i] @ z[:i]) / lower[i, i]
    x = np.zeros(n)
    for i in range(n - 1, -1, -1):
        x[i] = (z[i] - lower[i + 1 :, i] @ x[i + 1 :]) / lower[i, i]
    return x
