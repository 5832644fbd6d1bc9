"""Seeded, reproducible random instances for tests, verification, and benchmarks.

All randomness flows through NumPy's Philox 4x64 counter-based generator,
keyed by (seed, stream). A (seed, stream) pair fully determines the draw, so
trial k of a suite or update k of a benchmark can be regenerated in isolation
without storing any stream state. Seeds are 64-bit unsigned integers.
"""

from __future__ import annotations

import numpy as np

from .core import (
    DEFAULT_TOLERANCES,
    DenseMatrix,
    SingularMatrixError,
    ToleranceConfig,
    frobenius_norm,
    inverse_lu,
)
from .angle import AngleMatrix
from .pseudo import pinv_full_rank

__all__ = [
    "MAX_SEED",
    "stream_generator",
    "draw_dense",
    "draw_angle",
    "condition_proxy",
    "draw_well_conditioned",
]

MAX_SEED = 2**64 - 1


def _validate_seed(seed: int) -> int:
    if not isinstance(seed, (int, np.integer)):
        raise ValueError(f"seed must be an integer, got {type(seed).__name__}")
    if not (0 <= int(seed) <= MAX_SEED):
        raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
    return int(seed)


def stream_generator(seed: int, stream: int) -> np.random.Generator:
    """Philox generator keyed by (seed, stream); independent across streams."""
    key = np.array([_validate_seed(seed), _validate_seed(stream)], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def draw_dense(gen: np.random.Generator, rows: int, cols: int) -> DenseMatrix:
    """Complex matrix with i.i.d. standard-normal real and imaginary parts."""
    return DenseMatrix(gen.standard_normal((rows, cols)) + 1j * gen.standard_normal((rows, cols)))


def draw_angle(gen: np.random.Generator, rows: int, cols: int) -> AngleMatrix:
    """Angle matrix with phases uniform on [0, 2*pi)."""
    return AngleMatrix(
        theta=gen.uniform(0.0, 2.0 * np.pi, rows),
        phi=gen.uniform(0.0, 2.0 * np.pi, cols),
    )


def condition_proxy(a: DenseMatrix, tol: ToleranceConfig = DEFAULT_TOLERANCES) -> float:
    """||A||_F * ||A^+||_F (plain inverse when square); inf for rank-deficient A.

    A cheap upper-bound stand-in for the spectral condition number, used only
    to filter generated test instances.
    """
    try:
        if a.rows == a.cols:
            inv_norm = frobenius_norm(inverse_lu(a, tol))
        else:
            inv_norm = frobenius_norm(pinv_full_rank(a, tol))
    except SingularMatrixError:
        return float("inf")
    return frobenius_norm(a) * inv_norm


def draw_well_conditioned(gen: np.random.Generator, rows: int, cols: int,
                          tol: ToleranceConfig = DEFAULT_TOLERANCES,
                          max_attempts: int = 128) -> DenseMatrix:
    """Standard-normal complex matrix, redrawn until the condition proxy is
    within tol.condition_cap. Redraws continue the same stream, so the result
    is still a pure function of the generator state."""
    for _ in range(max_attempts):
        candidate = draw_dense(gen, rows, cols)
        if condition_proxy(candidate, tol) <= tol.condition_cap:
            return candidate
    raise RuntimeError(
        f"no {rows}x{cols} instance within condition cap {tol.condition_cap:g} after {max_attempts} draws"
    )
