"""Dense complex matrices, entrywise (Hadamard) algebra, and a pivoted LU oracle."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "ToleranceConfig",
    "DEFAULT_TOLERANCES",
    "SingularMatrixError",
    "VerificationReport",
    "DenseMatrix",
    "identity",
    "all_ones",
    "conjugate",
    "transpose",
    "conjugate_transpose",
    "matmul",
    "frobenius_norm",
    "hadamard_product",
    "hadamard_power",
    "hadamard_inverse",
    "LUFactorization",
    "lu_factorize",
    "det_lu",
    "inverse_lu",
    "lu_factorization_count",
]


@dataclass(frozen=True)
class ToleranceConfig:
    """Numerical thresholds shared across the library.

    entry_eps gates per-entry comparisons (including the zero-entry test for
    Hadamard reciprocals), residual_eps gates Frobenius-norm residuals,
    rank_eps scales the LU pivot test, and condition_cap filters randomly
    generated test instances only.
    """

    entry_eps: float = 1e-12
    residual_eps: float = 1e-8
    rank_eps: float = 1e-10
    condition_cap: float = 1e6

    def __post_init__(self):
        for name in ("entry_eps", "residual_eps", "rank_eps", "condition_cap"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and value > 0):
                raise ValueError(f"{name} must be strictly positive, got {value!r}")


DEFAULT_TOLERANCES = ToleranceConfig()


class SingularMatrixError(ValueError):
    """A pivot fell below the rank threshold; carries the offending magnitude."""

    def __init__(self, message: str, pivot: float):
        super().__init__(message)
        self.pivot = float(pivot)


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of one numerical identity check: named residuals vs a tolerance."""

    check: str
    residuals: dict
    tolerance: float
    passed: bool


class DenseMatrix:
    """Immutable row-major complex matrix with explicit dimensions.

    Construction copies the input, requires a 2-D shape with positive
    dimensions, and rejects non-finite entries.
    """

    __slots__ = ("_array",)

    def __init__(self, values):
        arr = np.array(values, dtype=np.complex128, order="C")
        if arr.ndim != 2:
            raise ValueError(f"expected a 2-D matrix, got an array of ndim={arr.ndim}")
        if arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError(f"matrix dimensions must be positive, got {arr.shape}")
        if not np.isfinite(arr).all():
            i, k = np.argwhere(~np.isfinite(arr))[0]
            raise ValueError(f"non-finite entry at ({i}, {k})")
        arr.flags.writeable = False
        self._array = arr

    @property
    def array(self) -> np.ndarray:
        """Read-only complex128 view of the entries."""
        return self._array

    @property
    def rows(self) -> int:
        return self._array.shape[0]

    @property
    def cols(self) -> int:
        return self._array.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self._array.shape

    def __repr__(self):
        return f"DenseMatrix({self._array.tolist()!r})"


def identity(n: int) -> DenseMatrix:
    return DenseMatrix(np.eye(n, dtype=np.complex128))


def all_ones(rows: int, cols: int) -> DenseMatrix:
    return DenseMatrix(np.ones((rows, cols), dtype=np.complex128))


def conjugate(a: DenseMatrix) -> DenseMatrix:
    return DenseMatrix(np.conj(a.array))


def transpose(a: DenseMatrix) -> DenseMatrix:
    return DenseMatrix(a.array.T)


def conjugate_transpose(a: DenseMatrix) -> DenseMatrix:
    return DenseMatrix(np.conj(a.array.T))


def matmul(a: DenseMatrix, b: DenseMatrix) -> DenseMatrix:
    if a.cols != b.rows:
        raise ValueError(f"matmul dimension mismatch: {a.shape} @ {b.shape}")
    return DenseMatrix(a.array @ b.array)


def frobenius_norm(a: DenseMatrix) -> float:
    return float(np.linalg.norm(a.array))


def hadamard_product(a: DenseMatrix, b: DenseMatrix) -> DenseMatrix:
    if a.shape != b.shape:
        raise ValueError(f"hadamard_product shape mismatch: {a.shape} vs {b.shape}")
    # Split into real ops so the product commutes bitwise; numpy's fused
    # complex kernel rounds a*b and b*a differently.
    out = np.empty(a.shape, dtype=np.complex128)
    out.real = a.array.real * b.array.real - a.array.imag * b.array.imag
    out.imag = a.array.real * b.array.imag + a.array.imag * b.array.real
    return DenseMatrix(out)


def _first_small_entry(arr: np.ndarray, eps: float):
    """Row-major index of the first entry with modulus <= eps, or None."""
    flat = np.abs(arr).ravel() <= eps
    if not flat.any():
        return None
    pos = int(np.argmax(flat))
    return divmod(pos, arr.shape[1])


def hadamard_power(a: DenseMatrix, k: int, tol: ToleranceConfig = DEFAULT_TOLERANCES) -> DenseMatrix:
    """Entrywise k-th power. k = 0 yields all-ones regardless of zero entries."""
    if k == 0:
        return all_ones(a.rows, a.cols)
    if k < 0:
        bad = _first_small_entry(a.array, tol.entry_eps)
        if bad is not None:
            raise ValueError(f"entry at {bad} is zero (|.| <= {tol.entry_eps}); negative power undefined")
    return DenseMatrix(a.array ** k)


def hadamard_inverse(a: DenseMatrix, tol: ToleranceConfig = DEFAULT_TOLERANCES) -> DenseMatrix:
    """Entrywise reciprocal; requires every entry nonzero."""
    bad = _first_small_entry(a.array, tol.entry_eps)
    if bad is not None:
        raise ValueError(f"entry at {bad} is zero (|.| <= {tol.entry_eps}); entrywise reciprocal undefined")
    return DenseMatrix(1.0 / a.array)


# Factorization counter: test probe asserting how often structured paths
# fall back to a fresh LU. Not part of the numerical contracts.
_lu_factorizations = 0


def lu_factorization_count() -> int:
    return _lu_factorizations


class LUFactorization:
    """Row-pivoted factorization P A = L U of a square matrix.

    Pivots are chosen by largest modulus, ties broken by lowest row index.
    Singularity is decided at solve time by the pivot test
    |u_ii| <= rank_eps * ||A||_F, never by determinant magnitude.
    """

    __slots__ = ("permutation", "lower", "upper", "parity", "source_norm")

    def __init__(self, permutation, lower, upper, parity, source_norm):
        self.permutation = permutation
        self.lower = lower
        self.upper = upper
        self.parity = parity
        self.source_norm = source_norm

    @property
    def size(self) -> int:
        return self.upper.shape[0]

    def pivot_magnitudes(self) -> np.ndarray:
        return np.abs(np.diag(self.upper))

    def det(self) -> complex:
        return complex(self.parity * np.prod(np.diag(self.upper)))

    def _check_pivots(self, tol: ToleranceConfig, pivot_floor):
        floor = tol.rank_eps * self.source_norm if pivot_floor is None else pivot_floor
        pivots = self.pivot_magnitudes()
        worst = float(pivots.min())
        if worst <= floor:
            raise SingularMatrixError(
                f"matrix is singular to working precision: pivot {worst:.3e} <= threshold {floor:.3e}",
                pivot=worst,
            )

    def solve(self, rhs: np.ndarray, tol: ToleranceConfig = DEFAULT_TOLERANCES,
              pivot_floor: float | None = None) -> np.ndarray:
        """Solve A X = rhs by forward/back substitution over all columns at once."""
        n = self.size
        if rhs.shape[0] != n:
            raise ValueError(f"solve dimension mismatch: factor is {n}x{n}, rhs has {rhs.shape[0]} rows")
        self._check_pivots(tol, pivot_floor)
        b = np.asarray(rhs, dtype=np.complex128)[self.permutation]
        y = np.empty_like(b)
        for i in range(n):
            y[i] = b[i] - self.lower[i, :i] @ y[:i]
        x = np.empty_like(y)
        for i in range(n - 1, -1, -1):
            x[i] = (y[i] - self.upper[i, i + 1:] @ x[i + 1:]) / self.upper[i, i]
        return x

    def inverse(self, tol: ToleranceConfig = DEFAULT_TOLERANCES,
                pivot_floor: float | None = None) -> DenseMatrix:
        return DenseMatrix(self.solve(np.eye(self.size, dtype=np.complex128), tol, pivot_floor))


def lu_factorize(a: DenseMatrix) -> LUFactorization:
    """Factor a square matrix with partial (row) pivoting by largest modulus."""
    global _lu_factorizations
    if a.rows != a.cols:
        raise ValueError(f"lu_factorize requires a square matrix, got {a.shape}")
    _lu_factorizations += 1
    n = a.rows
    work = a.array.copy()
    perm = np.arange(n)
    parity = 1
    for k in range(n):
        p = k + int(np.argmax(np.abs(work[k:, k])))  # argmax takes the first max: lowest row wins ties
        if p != k:
            work[[k, p]] = work[[p, k]]
            perm[[k, p]] = perm[[p, k]]
            parity = -parity
        pivot = work[k, k]
        if pivot != 0 and k + 1 < n:
            work[k + 1:, k] /= pivot
            work[k + 1:, k + 1:] -= np.outer(work[k + 1:, k], work[k, k + 1:])
    lower = np.tril(work, -1) + np.eye(n, dtype=np.complex128)
    upper = np.triu(work)
    return LUFactorization(perm, lower, upper, parity, float(np.linalg.norm(a.array)))


def det_lu(a: DenseMatrix) -> complex:
    return lu_factorize(a).det()


def inverse_lu(a: DenseMatrix, tol: ToleranceConfig = DEFAULT_TOLERANCES) -> DenseMatrix:
    return lu_factorize(a).inverse(tol)
