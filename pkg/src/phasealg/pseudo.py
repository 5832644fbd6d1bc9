"""Full-rank Moore-Penrose pseudoinverses and the masked closed form.

The pseudoinverse of a full-rank matrix comes from the invertible Gram system
on its smaller side; the pseudoinverse of the phase-masked matrix is then the
base pseudoinverse masked by the conjugate-transposed angle matrix. Rank
deficiency is out of scope and rejected.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .angle import AngleMatrix, gram
from .core import (
    DEFAULT_TOLERANCES,
    DenseMatrix,
    ToleranceConfig,
    hadamard_product,
    lu_factorize,
)

__all__ = [
    "PenroseReport",
    "penrose_check",
    "pinv_full_rank",
    "gram_hadamard_factorization",
    "pinv_structured",
]


@dataclass(frozen=True)
class PenroseReport:
    """Residuals of the four defining pseudoinverse equations for a candidate X.

    r1 = ||A X A - A||_F, r2 = ||X A X - X||_F, r3 and r4 are the Hermitian
    defects of A X and X A. Passes when all four are within
    residual_eps * (1 + ||A||_F).
    """

    r1: float
    r2: float
    r3: float
    r4: float
    tolerance: float
    passed: bool

    def worst(self) -> float:
        return max(self.r1, self.r2, self.r3, self.r4)


def penrose_check(a: DenseMatrix, x: DenseMatrix,
                  tol: ToleranceConfig = DEFAULT_TOLERANCES) -> PenroseReport:
    """Evaluate the four pseudoinverse conditions for candidate x against a."""
    if x.shape != (a.cols, a.rows):
        raise ValueError(f"penrose_check expects a {a.cols}x{a.rows} candidate for a {a.rows}x{a.cols} matrix, got {x.shape}")
    aa = a.array
    xx = x.array
    ax = aa @ xx
    xa = xx @ aa
    r1 = float(np.linalg.norm(ax @ aa - aa))
    r2 = float(np.linalg.norm(xa @ xx - xx))
    r3 = float(np.linalg.norm(ax.conj().T - ax))
    r4 = float(np.linalg.norm(xa.conj().T - xa))
    limit = tol.residual_eps * (1.0 + float(np.linalg.norm(aa)))
    return PenroseReport(r1, r2, r3, r4, limit, max(r1, r2, r3, r4) <= limit)


def pinv_full_rank(a: DenseMatrix, tol: ToleranceConfig = DEFAULT_TOLERANCES) -> DenseMatrix:
    """Pseudoinverse of a full-rank matrix via its smaller Gram system.

    Tall matrices solve (A^H A) X = A^H; wide ones form A^H (A A^H)^(-1);
    square ones invert directly. The Gram pivot test uses the threshold
    rank_eps * ||A||_F^2, and a failure means rank-deficient input.
    Conditioning of the Gram system is squared relative to A; acceptable here
    because generated instances are condition-capped.
    """
    arr = a.array
    if a.rows == a.cols:
        return lu_factorize(a).inverse(tol)
    floor = tol.rank_eps * float(np.linalg.norm(arr)) ** 2
    if a.rows > a.cols:
        gram_mat = DenseMatrix(arr.conj().T @ arr)
        solved = lu_factorize(gram_mat).solve(arr.conj().T, tol, pivot_floor=floor)
        return DenseMatrix(solved)
    gram_mat = DenseMatrix(arr @ arr.conj().T)
    gram_inv = lu_factorize(gram_mat).inverse(tol, pivot_floor=floor)
    return DenseMatrix(arr.conj().T @ gram_inv.array)


def gram_hadamard_factorization(a: DenseMatrix, t: AngleMatrix) -> tuple[DenseMatrix, int, AngleMatrix]:
    """Factor the column Gram of the masked matrix without forming it.

    Returns (A^H A, m, G) where G is the left structured Gram of the angle
    matrix, so that (masked)^H (masked) equals (A^H A) entrywise-masked by
    materialize(G), i.e. by (1/m) of the dense angle Gram.
    """
    if t.shape != a.shape:
        raise ValueError(f"gram_hadamard_factorization shape mismatch: matrix {a.shape} vs angle matrix {t.shape}")
    scale, structured_gram = gram(t, "left")
    base_gram = DenseMatrix(a.array.conj().T @ a.array)
    return base_gram, scale, structured_gram


def pinv_structured(a: DenseMatrix, t: AngleMatrix,
                    tol: ToleranceConfig = DEFAULT_TOLERANCES) -> DenseMatrix:
    """Pseudoinverse of the masked matrix: pseudoinverse of A masked by the
    conjugate transpose of the angle matrix. One Gram solve on A; the masked
    matrix is never formed."""
    if t.shape != a.shape:
        raise ValueError(f"pinv_structured shape mismatch: matrix {a.shape} vs angle matrix {t.shape}")
    return hadamard_product(pinv_full_rank(a, tol), t.hermitian().materialize())
