"""Positive semidefinite operators with certified rank.

Exact backend: PSD-ness and rank come from a fraction-free pivoted LDL*
elimination, so both are certificates, not numerical guesses.  Float
backend: eigendecomposition with the standard cutoff; operators built by
generators or congruences can carry an exactly known rank instead.
"""

from __future__ import annotations

import numpy as np

from ..errors import BackendError, DimensionMismatchError, RangeInclusionError
from .matrix import EXACT, FLOAT, Matrix, default_rank_tol, psd_certify_exact
from .subspace import DEFAULT_TOL, Subspace, column_space


class PsdOperator:
    """A PSD matrix together with its (certified) rank and cached range."""

    __slots__ = ("matrix", "rank", "_range")

    def __init__(self, matrix: Matrix, rank: int, *, _trusted: bool = False):
        if not matrix.is_square:
            raise DimensionMismatchError("PSD operators are square")
        if not _trusted:
            raise ValueError("use PsdOperator.from_matrix or a generator")
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "rank", rank)
        object.__setattr__(self, "_range", None)

    def __setattr__(self, name, value):
        raise AttributeError("PsdOperator is immutable")

    @classmethod
    def from_matrix(cls, m: Matrix, tol: float | None = None) -> "PsdOperator":
        """Validate PSD-ness and compute the rank.

        Exact input is certified; float input is checked against
        ``max(m,n)*eps*scale`` (or ``tol``) and stored hermitized.
        """
        if m.backend == EXACT:
            ok, rank = psd_certify_exact(m)
            if not ok:
                raise ValueError("matrix is not positive semidefinite")
            return cls(m, rank, _trusted=True)
        scale = max(1.0, m.max_abs())
        cut = tol if tol is not None else default_rank_tol(m.rows, m.cols, scale)
        if not m.is_hermitian(tol=cut):
            raise ValueError("matrix is not Hermitian within tolerance")
        h = m.hermitize()
        eig = np.linalg.eigvalsh(h.array)
        if eig.size and float(eig[0]) < -cut * scale:
            raise ValueError("matrix has a negative eigenvalue beyond tolerance")
        rank = int(np.sum(eig > cut * scale))
        return cls(h, rank, _trusted=True)

    @classmethod
    def certified(cls, m: Matrix, rank: int) -> "PsdOperator":
        """Trusted constructor for callers that know the rank exactly."""
        return cls(m, rank, _trusted=True)

    @classmethod
    def zero(cls, dim: int, backend: str = EXACT) -> "PsdOperator":
        return cls(Matrix.zeros(dim, dim, backend), 0, _trusted=True)

    # ------------------------------------------------------------------

    @property
    def dim(self) -> int:
        return self.matrix.rows

    @property
    def backend(self) -> str:
        return self.matrix.backend

    @property
    def is_invertible(self) -> bool:
        return self.rank == self.dim

    def range(self) -> Subspace:
        """Range (column space) of the operator; computed once and cached."""
        if self._range is None:
            if self.backend == EXACT:
                sub = column_space(self.matrix)
                if sub.dim != self.rank:
                    raise ArithmeticError("certified rank disagrees with elimination")
            else:
                sub = _float_psd_range(self.matrix, self.rank)
            object.__setattr__(self, "_range", sub)
        return self._range

    def to_float(self) -> "PsdOperator":
        if self.backend == FLOAT:
            return self
        return PsdOperator(self.matrix.to_float(), self.rank, _trusted=True)

    def scaled(self, c) -> "PsdOperator":
        """c * A for a nonnegative scalar c."""
        if c == 0:
            return PsdOperator.zero(self.dim, self.backend)
        if (isinstance(c, (int, float)) and c < 0):
            raise ValueError("negative scaling leaves the PSD cone")
        return PsdOperator(self.matrix.scale(c), self.rank, _trusted=True)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PsdOperator):
            return NotImplemented
        return self.matrix == other.matrix

    def __hash__(self) -> int:
        return hash(self.matrix)

    def __repr__(self) -> str:
        return f"PsdOperator(dim={self.dim}, rank={self.rank}, backend={self.backend})"


def _float_psd_range(m: Matrix, rank: int) -> Subspace:
    if rank == 0:
        return Subspace.zero(m.rows, FLOAT)
    eigval, eigvec = np.linalg.eigh(m.array)
    basis = eigvec[:, m.rows - rank :]
    return Subspace(Matrix.from_float(basis), _validated=True)


def psd_check(m: Matrix, tol: float | None = None) -> bool:
    """Whether ``m`` is PSD.  Exact certification or eigenvalue test.

    Non-Hermitian input answers False rather than raising.  For the float
    backend ``tol`` scales the permitted asymmetry and eigenvalue dip.
    """
    if m.backend == EXACT:
        ok, _ = psd_certify_exact(m)
        return ok
    if not m.is_square:
        return False
    scale = max(1.0, m.max_abs())
    cut = tol if tol is not None else default_rank_tol(m.rows, m.cols, scale)
    if not m.is_hermitian(tol=cut):
        return False
    eig = np.linalg.eigvalsh(m.hermitize().array)
    return bool(eig.size == 0 or float(eig[0]) >= -cut * scale)


def psd_sqrt(a: PsdOperator) -> PsdOperator:
    """The PSD square root (float backend only).

    Eigenvalues below the certified rank are zeroed, so the root has exactly
    the rank (and hence the range) of the input.
    """
    if a.backend != FLOAT:
        raise BackendError("psd_sqrt requires the float backend; convert first")
    n = a.dim
    eigval, eigvec = np.linalg.eigh(a.matrix.array)
    lam = np.clip(eigval, 0.0, None)
    lam[: n - a.rank] = 0.0
    root = (eigvec * np.sqrt(lam)) @ eigvec.conj().T
    root = (root + root.conj().T) / 2.0
    return PsdOperator(Matrix.from_float(root), a.rank, _trusted=True)


def douglas_factor(a: PsdOperator, b: PsdOperator, tol: float = DEFAULT_TOL) -> Matrix:
    """Solve a^{1/2} = b^{1/2} X with the minimal-norm X (float backend).

    Exists iff ran a^{1/2} ⊆ ran b^{1/2}, i.e. iff ran a ⊆ ran b; raises
    RangeInclusionError otherwise.
    """
    if a.backend != FLOAT or b.backend != FLOAT:
        raise BackendError("douglas_factor requires the float backend; convert first")
    if a.dim != b.dim:
        raise DimensionMismatchError("operators act on different spaces")
    if not b.range().contains(a.range(), tol):
        raise RangeInclusionError("range of the left operator is not dominated")
    sa = psd_sqrt(a).matrix
    sb = psd_sqrt(b).matrix
    return sb.pinv() @ sa
