"""Closed-form determinants and inverses of phase-masked nonsingular matrices.

For a nonsingular A and an angle matrix mask, the determinant of the masked
matrix is det(A) rotated by the total phase, and the inverse is the inverse
of A masked by the conjugate-transposed angle matrix. The cofactor/adjugate
route provides an independent small-dimension oracle for the same inverse.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .angle import AngleMatrix
from .core import (
    DEFAULT_TOLERANCES,
    DenseMatrix,
    SingularMatrixError,
    ToleranceConfig,
    hadamard_product,
    lu_factorize,
)

__all__ = [
    "det_structured",
    "inverse_structured",
    "inverse_structured_transposed",
    "Minor",
    "cofactor",
    "adjugate",
    "inverse_adjugate_structured",
]

ADJUGATE_CAP = 6


def _require_square_pair(a: DenseMatrix, t: AngleMatrix, op: str):
    if a.rows != a.cols:
        raise ValueError(f"{op} requires a square matrix, got {a.shape}")
    if t.shape != a.shape:
        raise ValueError(f"{op} shape mismatch: matrix {a.shape} vs angle matrix {t.shape}")


def det_structured(a: DenseMatrix, t: AngleMatrix) -> complex:
    """Determinant of the masked matrix without ever forming it: det(A) times
    the unit-modulus rotation by the total phase."""
    _require_square_pair(a, t, "det_structured")
    return complex(lu_factorize(a).det() * np.exp(1j * t.phase_sum()))


def inverse_structured(a: DenseMatrix, t: AngleMatrix,
                       tol: ToleranceConfig = DEFAULT_TOLERANCES) -> DenseMatrix:
    """Inverse of the masked matrix: inverse(A) masked by the conjugate
    transpose of the angle matrix. Factors A exactly once; the masked matrix
    is never formed, let alone factored."""
    _require_square_pair(a, t, "inverse_structured")
    return hadamard_product(lu_factorize(a).inverse(tol), t.hermitian().materialize())


def inverse_structured_transposed(a: DenseMatrix, t: AngleMatrix,
                                  tol: ToleranceConfig = DEFAULT_TOLERANCES) -> DenseMatrix:
    """Inverse of A masked by the transposed angle matrix: inverse(A) masked by
    the entrywise conjugate (no transpose)."""
    _require_square_pair(a, t, "inverse_structured_transposed")
    conj_mask = DenseMatrix(np.exp(-1j * (t.theta[:, None] + t.phi[None, :])))
    return hadamard_product(lu_factorize(a).inverse(tol), conj_mask)


@dataclass(frozen=True)
class Minor:
    """Submatrix obtained by deleting one row and one column of a square matrix."""

    source: DenseMatrix
    deleted_row: int
    deleted_col: int

    def __post_init__(self):
        n = self.source.rows
        if self.source.cols != n:
            raise ValueError(f"minors are defined for square matrices, got {self.source.shape}")
        if n < 2:
            raise ValueError("minors require dimension >= 2")
        if not (0 <= self.deleted_row < n and 0 <= self.deleted_col < n):
            raise ValueError(
                f"minor indices ({self.deleted_row}, {self.deleted_col}) out of range for {n}x{n}"
            )

    def extract(self) -> DenseMatrix:
        trimmed = np.delete(self.source.array, self.deleted_row, axis=0)
        return DenseMatrix(np.delete(trimmed, self.deleted_col, axis=1))


def cofactor(a: DenseMatrix, i: int, j: int) -> complex:
    """Signed minor determinant with adjugate-oriented indexing.

    cofactor(a, i, j) deletes row j and column i (note the swap), so the grid
    of cofactors is already the adjugate and dividing by det(A) gives the
    inverse with no final transpose. Most texts define the cofactor on the
    (i, j) minor and transpose at the end; this convention does not.
    A 1x1 matrix has cofactor 1 (empty minor).
    """
    n = a.rows
    if a.cols != n:
        raise ValueError(f"cofactor requires a square matrix, got {a.shape}")
    if not (0 <= i < n and 0 <= j < n):
        raise ValueError(f"cofactor indices ({i}, {j}) out of range for {n}x{n}")
    if n == 1:
        return complex(1.0)
    sign = -1.0 if (i + j) % 2 else 1.0
    return complex(sign * lu_factorize(Minor(a, deleted_row=j, deleted_col=i).extract()).det())


def adjugate(a: DenseMatrix) -> DenseMatrix:
    """Grid of cofactors; equals det(A) times the inverse for nonsingular A."""
    n = a.rows
    grid = np.empty((n, n), dtype=np.complex128)
    for i in range(n):
        for j in range(n):
            grid[i, j] = cofactor(a, i, j)
    return DenseMatrix(grid)


def inverse_adjugate_structured(a: DenseMatrix, t: AngleMatrix,
                                tol: ToleranceConfig = DEFAULT_TOLERANCES,
                                adjugate_cap: int = ADJUGATE_CAP) -> DenseMatrix:
    """Cofactor-expansion oracle for inverse_structured, capped at small sizes.

    Entry (i, j) is cofactor(a, i, j) / det(a) times the unit rotation by the
    negated phase sum theta_j + phi_i. The phase factor is evaluated as cos/sin
    of the negated sum, never as a complex reciprocal, so its modulus stays 1
    to rounding.
    """
    _require_square_pair(a, t, "inverse_adjugate_structured")
    n = a.rows
    if n > adjugate_cap:
        raise ValueError(f"adjugate oracle capped at n <= {adjugate_cap}, got n = {n}")
    factorization = lu_factorize(a)
    floor = tol.rank_eps * factorization.source_norm
    worst = float(factorization.pivot_magnitudes().min())
    if worst <= floor:
        raise SingularMatrixError(
            f"matrix is singular to working precision: pivot {worst:.3e} <= threshold {floor:.3e}",
            pivot=worst,
        )
    det = factorization.det()
    phase = np.exp(-1j * (t.phi[:, None] + t.theta[None, :]))  # (i, j) -> -(theta_j + phi_i)
    return DenseMatrix(adjugate(a).array / det * phase)
