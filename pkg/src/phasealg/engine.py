"""Phase-update workloads: precompute one base (pseudo)inverse, then serve a
stream of angle-matrix updates with O(mn) work each, benchmarked against
per-update refactorization.
"""

from __future__ import annotations

import statistics
import time
from dataclasses import dataclass

import numpy as np

from .angle import AngleMatrix
from .core import (
    DEFAULT_TOLERANCES,
    DenseMatrix,
    SingularMatrixError,
    ToleranceConfig,
    frobenius_norm,
    hadamard_product,
    inverse_lu,
)
from .generate import draw_angle, draw_well_conditioned, stream_generator
from .pseudo import penrose_check, pinv_full_rank

__all__ = [
    "PrecomputedBase",
    "precompute",
    "apply_update",
    "naive_update",
    "BenchRecord",
    "run_benchmark",
    "MAX_BENCH_DIM",
]

MAX_BENCH_DIM = 2048


@dataclass(frozen=True, eq=False)
class PrecomputedBase:
    """One-time factorization product reused across every phase update.

    base_pinv is the inverse for square sources and the pseudoinverse
    otherwise; it is checked against the four pseudoinverse conditions at
    construction and never recomputed.
    """

    shape: tuple[int, int]
    base_pinv: DenseMatrix
    base_norm: float
    created_from_seed: int | None = None


def precompute(a: DenseMatrix, tol: ToleranceConfig = DEFAULT_TOLERANCES,
               seed: int | None = None) -> PrecomputedBase:
    """Invert (or pseudoinvert) the base matrix once and sanity-check it."""
    base_pinv = pinv_full_rank(a, tol)
    report = penrose_check(a, base_pinv, tol)
    if not report.passed:
        raise RuntimeError(
            f"internal consistency failure: precomputed base violates the pseudoinverse conditions (worst residual {report.worst():.3e} > {report.tolerance:.3e})"
        )
    return PrecomputedBase((a.rows, a.cols), base_pinv, frobenius_norm(a), seed)


def apply_update(base: PrecomputedBase, t: AngleMatrix) -> DenseMatrix:
    """Masked (pseudo)inverse for one update: the stored base masked by the
    conjugate-transposed angle matrix.

    Costs O(m+n) trigonometric evaluations (one per phase) plus O(mn) complex
    multiplications; performs no factorization.
    """
    if t.shape != base.shape:
        raise ValueError(f"apply_update shape mismatch: base {base.shape} vs angle matrix {t.shape}")
    mask = np.multiply.outer(np.exp(-1j * t.phi), np.exp(-1j * t.theta))
    return DenseMatrix(base.base_pinv.array * mask)


def naive_update(a: DenseMatrix, t: AngleMatrix,
                 tol: ToleranceConfig = DEFAULT_TOLERANCES) -> DenseMatrix:
    """Reference path: materialize the mask, apply it, factor from scratch."""
    if t.shape != a.shape:
        raise ValueError(f"naive_update shape mismatch: matrix {a.shape} vs angle matrix {t.shape}")
    masked = hadamard_product(a, t.materialize())
    try:
        if a.rows == a.cols:
            return inverse_lu(masked, tol)
        return pinv_full_rank(masked, tol)
    except SingularMatrixError as err:
        # A unit-modulus mask cannot change the rank; reaching this means the
        # caller's base was not full rank to begin with.
        raise RuntimeError(f"internal consistency failure: masked matrix reported singular ({err})") from err


@dataclass(frozen=True)
class BenchRecord:
    """One benchmark outcome: per-update timings plus the worst cross-check residual."""

    rows: int
    cols: int
    updates: int
    structured_ns_per_update: float
    naive_ns_per_update: float
    max_residual: float
    seed: int


def _update_angles(shape: tuple[int, int], seed: int, index: int) -> AngleMatrix:
    """Angle matrix for update `index`: stream (seed, index + 1), regenerable
    without storing the stream. Stream (seed, 0) is reserved for the base."""
    gen = stream_generator(seed, index + 1)
    return draw_angle(gen, shape[0], shape[1])


def _median_per_update(samples_ns: list[int]) -> float:
    timed = samples_ns[1:] if len(samples_ns) > 1 else samples_ns  # first update is warm-up
    return float(statistics.median(timed))


def run_benchmark(rows: int, cols: int, updates: int, seed: int,
                  tol: ToleranceConfig = DEFAULT_TOLERANCES,
                  max_dim: int = MAX_BENCH_DIM) -> BenchRecord:
    """Time the masked-update path against per-update refactorization.

    The instance and every update are pure functions of (seed, config). Both
    paths run single-threaded over the same update stream; per-update times
    are medians over the monotonic clock, excluding the warm-up update.
    A sample of at least max(1, updates // 100) updates is cross-checked
    against the naive path; a residual above residual_eps * max(rows, cols)
    fails the run regardless of timing.
    """
    if updates < 1:
        raise ValueError(f"updates must be >= 1, got {updates}")
    if rows < 1 or cols < 1:
        raise ValueError(f"dimensions must be positive, got {rows}x{cols}")
    if max(rows, cols) > max_dim:
        raise ValueError(f"dimensions {rows}x{cols} exceed the benchmark cap {max_dim}")

    base_matrix = draw_well_conditioned(stream_generator(seed, 0), rows, cols, tol)
    base = precompute(base_matrix, tol, seed=seed)
    masks = [_update_angles((rows, cols), seed, k) for k in range(updates)]

    structured_ns = []
    for t in masks:
        start = time.perf_counter_ns()
        apply_update(base, t)
        structured_ns.append(time.perf_counter_ns() - start)

    naive_ns = []
    for t in masks:
        start = time.perf_counter_ns()
        naive_update(base_matrix, t, tol)
        naive_ns.append(time.perf_counter_ns() - start)

    sample_count = max(1, updates // 100)
    sample_indices = sorted(set(int(i) for i in np.linspace(0, updates - 1, sample_count)))
    max_residual = 0.0
    for k in sample_indices:
        fast = apply_update(base, masks[k])
        reference = naive_update(base_matrix, masks[k], tol)
        residual = float(np.linalg.norm(fast.array - reference.array))
        if rows == cols:
            masked = hadamard_product(base_matrix, masks[k].materialize())
            identity_residual = np.linalg.norm(fast.array @ masked.array - np.eye(rows))
            residual = max(residual, float(identity_residual))
        max_residual = max(max_residual, residual)

    limit = tol.residual_eps * max(rows, cols)
    if max_residual > limit:
        raise RuntimeError(
            f"benchmark cross-check failed: residual {max_residual:.3e} > {limit:.3e} at {rows}x{cols}"
        )
    return BenchRecord(
        rows=rows,
        cols=cols,
        updates=updates,
        structured_ns_per_update=_median_per_update(structured_ns),
        naive_ns_per_update=_median_per_update(naive_ns),
        max_residual=max_residual,
        seed=seed,
    )
