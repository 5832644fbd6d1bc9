"""Angle vectors and rank-one angle matrices stored as phase lists.

An angle matrix is the outer product of two unit-modulus exponential vectors.
It is kept implicit as a (row phases, column phases) pair: the conjugate
transpose is then an O(m+n) phase swap instead of an O(mn) conjugation, and
the dense form is materialized only on demand.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    DEFAULT_TOLERANCES,
    DenseMatrix,
    ToleranceConfig,
    VerificationReport,
    hadamard_inverse,
    transpose,
)

__all__ = [
    "AngleVector",
    "AngleMatrix",
    "angle_matrix",
    "hadamard_inverse_transpose",
    "gram",
    "triple_product_check",
]


def _phase_array(values, what: str) -> np.ndarray:
    arr = np.array(values, dtype=np.float64)
    if arr.ndim != 1:
        raise ValueError(f"{what} must be a 1-D list of phases, got ndim={arr.ndim}")
    if arr.size < 1:
        raise ValueError(f"{what} must hold at least one phase")
    if not np.isfinite(arr).all():
        raise ValueError(f"{what} contains a non-finite phase")
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class AngleVector:
    """Real phases in radians; represents the unit-modulus vector (e^(j*phase_i))."""

    phases: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "phases", _phase_array(self.phases, "phases"))

    def __len__(self):
        return self.phases.size

    def unit(self) -> np.ndarray:
        """Materialize the complex unit vector."""
        return np.exp(1j * self.phases)


@dataclass(frozen=True, eq=False)
class AngleMatrix:
    """Rank-one matrix of unit-modulus entries, stored as (theta, phi) phase lists.

    Entry (i, k) of the dense form is e^(j*(theta_i + phi_k)). Phases are not
    normalized into [0, 2*pi); equality of two angle matrices is a statement
    about materializations, not about the stored phases.
    """

    theta: np.ndarray
    phi: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "theta", _phase_array(self.theta, "theta"))
        object.__setattr__(self, "phi", _phase_array(self.phi, "phi"))

    @property
    def rows(self) -> int:
        return self.theta.size

    @property
    def cols(self) -> int:
        return self.phi.size

    @property
    def shape(self) -> tuple[int, int]:
        return (self.theta.size, self.phi.size)

    def materialize(self) -> DenseMatrix:
        """Dense form: cos and sin of the summed phase, per entry."""
        return DenseMatrix(np.exp(1j * (self.theta[:, None] + self.phi[None, :])))

    def hermitian(self) -> AngleMatrix:
        """Conjugate transpose as a phase swap: an n-by-m angle matrix."""
        return AngleMatrix(theta=-self.phi, phi=-self.theta)

    def phase_sum(self) -> float:
        """Sum of all row and column phases; defined for square shapes only."""
        if self.rows != self.cols:
            raise ValueError(f"phase_sum requires a square angle matrix, got {self.shape}")
        return float(self.theta.sum() + self.phi.sum())


def angle_matrix(v: AngleVector, u: AngleVector) -> AngleMatrix:
    """Outer product of two angle vectors: row phases from v, column phases from u."""
    return AngleMatrix(theta=v.phases, phi=u.phases)


def hadamard_inverse_transpose(t: AngleMatrix,
                               tol: ToleranceConfig = DEFAULT_TOLERANCES) -> DenseMatrix:
    """Transpose of the entrywise reciprocal of the dense form.

    This is the long route to the conjugate transpose; it exists so the
    identity with materialize(hermitian(t)) is directly executable.
    """
    return transpose(hadamard_inverse(t.materialize(), tol))


def gram(t: AngleMatrix, side: str) -> tuple[int, AngleMatrix]:
    """Structured Gram product of an angle matrix.

    side="left" describes hermitian(t) @ t: it equals rows(t) times the n-by-n
    angle matrix built from column-phase differences (theta'=-phi, phi'=phi).
    side="right" describes t @ hermitian(t): cols(t) times the m-by-m analogue
    over row-phase differences.
    """
    if side == "left":
        return t.rows, AngleMatrix(theta=-t.phi, phi=t.phi)
    if side == "right":
        return t.cols, AngleMatrix(theta=t.theta, phi=-t.theta)
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")


def triple_product_check(t: AngleMatrix,
                         tol: ToleranceConfig = DEFAULT_TOLERANCES) -> VerificationReport:
    """Check hermitian(t) @ t @ hermitian(t) against rows*cols*hermitian(t), densely."""
    m, n = t.shape
    dense = t.materialize().array
    herm = t.hermitian().materialize().array
    product = herm @ dense @ herm
    deviation = float(np.abs(product - m * n * herm).max())
    limit = m * n * tol.entry_eps
    return VerificationReport(
        check="triple_product",
        residuals={"max_entry_error": deviation},
        tolerance=limit,
        passed=deviation <= limit,
    )
