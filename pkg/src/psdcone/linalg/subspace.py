"""Subspaces of C^n and the lattice operations on them.

Exact backend: bases are pivot columns of the generating matrix and every
predicate reduces to an exact rank computation (equality and inclusion are
mutual-inclusion rank tests).  Float backend: bases are kept orthonormal and
predicates are decided through principal angles; the tolerance is an angle
in radians (a direction counts as common when its sine is below ``tol``).
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from ..errors import BackendError, DimensionMismatchError
from .matrix import EXACT, FLOAT, Matrix, default_rank_tol

#: default angle tolerance (radians) for float subspace decisions
DEFAULT_TOL = 1e-8


class Subspace:
    """A linear subspace of C^n carried by an explicit basis matrix."""

    __slots__ = ("ambient_dim", "basis", "backend")

    def __init__(self, basis: Matrix, *, _validated: bool = False):
        object.__setattr__(self, "ambient_dim", basis.rows)
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "backend", basis.backend)
        if not _validated and basis.cols:
            if basis.backend == EXACT:
                if basis.rank() != basis.cols:
                    raise ValueError("basis columns are not linearly independent")
            else:
                q = _orthonormalize(basis.array, basis.cols)
                object.__setattr__(self, "basis", Matrix.from_float(q))

    def __setattr__(self, name, value):
        raise AttributeError("Subspace is immutable")

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls, ambient_dim: int, backend: str = EXACT) -> "Subspace":
        return cls(Matrix.zeros(ambient_dim, 0, backend), _validated=True)

    @classmethod
    def full(cls, ambient_dim: int, backend: str = EXACT) -> "Subspace":
        return cls(Matrix.identity(ambient_dim, backend), _validated=True)

    @classmethod
    def span_of_vectors(cls, vectors: Sequence[Sequence], backend: str = EXACT) -> "Subspace":
        """Span of the given vectors (they need not be independent)."""
        cols = [Matrix.column_vector(v, backend) for v in vectors]
        return column_space(Matrix.hstack(cols)) if cols else cls.zero(1, backend)

    # -- basic views -----------------------------------------------------

    @property
    def dim(self) -> int:
        return self.basis.cols

    def to_float(self) -> "Subspace":
        if self.backend == FLOAT:
            return self
        return column_space(self.basis.to_float(), rank_hint=self.dim)

    def projector(self) -> Matrix:
        """Orthogonal projector onto the subspace (float backend)."""
        if self.backend != FLOAT:
            raise BackendError("projector requires the float backend")
        if self.dim == 0:
            return Matrix.zeros(self.ambient_dim, self.ambient_dim, FLOAT)
        b = self.basis.array
        return Matrix.from_float(b @ b.conj().T)

    # -- predicates ------------------------------------------------------

    def contains(self, other: "Subspace", tol: float = DEFAULT_TOL) -> bool:
        """Whether ``other`` is included in this subspace."""
        _check_pair(self, other)
        if other.dim == 0:
            return True
        if other.dim > self.dim:
            return False
        if self.backend == EXACT:
            joint = Matrix.hstack([self.basis, other.basis])
            return joint.rank() == self.dim
        return float(np.max(principal_sines(other, self))) <= tol

    def equals(self, other: "Subspace", tol: float = DEFAULT_TOL) -> bool:
        _check_pair(self, other)
        if self.dim != other.dim:
            return False
        return self.contains(other, tol) and other.contains(self, tol)

    def contains_vector(self, v: Matrix, tol: float = DEFAULT_TOL) -> bool:
        if v.rows != self.ambient_dim or v.cols != 1:
            raise DimensionMismatchError("expected an ambient column vector")
        if v.is_zero():
            return True
        return self.contains(column_space(v), tol)


def _check_pair(u: Subspace, v: Subspace) -> None:
    if u.ambient_dim != v.ambient_dim:
        raise DimensionMismatchError(
            f"ambient dimensions differ: {u.ambient_dim} vs {v.ambient_dim}"
        )
    if u.backend != v.backend:
        raise BackendError("mixed-backend subspace operation; convert first")


def _orthonormalize(arr: np.ndarray, expected_dim: int) -> np.ndarray:
    u, s, _ = np.linalg.svd(arr, full_matrices=False)
    cut = default_rank_tol(arr.shape[0], arr.shape[1], float(s[0]) if s.size else 0.0)
    r = int(np.sum(s > cut))
    if r != expected_dim:
        raise ValueError("basis columns are not numerically independent")
    return u[:, :expected_dim]


def principal_sines(u: Subspace, v: Subspace) -> np.ndarray:
    """Sines of the principal angles of every direction of ``u`` against ``v``.

    Float backend only; returns ``u.dim`` values in descending order.  A zero
    sine means the corresponding direction lies inside ``v``.
    """
    _check_pair(u, v)
    if u.backend != FLOAT:
        raise BackendError("principal angles require the float backend")
    if u.dim == 0:
        return np.zeros(0)
    ub = u.basis.array
    if v.dim == 0:
        return np.ones(u.dim)
    vb = v.basis.array
    residual = ub - vb @ (vb.conj().T @ ub)
    s = np.linalg.svd(residual, compute_uv=False)
    return np.clip(s, 0.0, 1.0)


def column_space(m: Matrix, tol: float | None = None, rank_hint: int | None = None) -> Subspace:
    """Range of ``m`` as a subspace.

    Exact: the pivot columns of ``m`` form the basis.  Float: the leading
    left singular vectors; ``rank_hint`` pins the dimension when the caller
    knows the rank (e.g. it was certified exactly), bypassing the cutoff.
    """
    if m.backend == EXACT:
        piv = m.pivot_columns()
        return Subspace(m.take_columns(piv), _validated=True)
    a = m.array
    if a.size == 0:
        return Subspace.zero(m.rows, FLOAT)
    u, s, _ = np.linalg.svd(a, full_matrices=False)
    if rank_hint is not None:
        r = rank_hint
    else:
        cut = tol if tol is not None else default_rank_tol(m.rows, m.cols, float(s[0]) if s.size else 0.0)
        r = int(np.sum(s > cut))
    return Subspace(Matrix.from_float(u[:, :r]), _validated=True)


def subspace_sum(u: Subspace, v: Subspace, tol: float = DEFAULT_TOL) -> Subspace:
    """The subspace u + v."""
    _check_pair(u, v)
    if u.dim == 0:
        return v
    if v.dim == 0:
        return u
    if u.backend == EXACT:
        return column_space(Matrix.hstack([u.basis, v.basis]))
    ub, vb = u.basis.array, v.basis.array
    w = vb - ub @ (ub.conj().T @ vb)
    uw, s, _ = np.linalg.svd(w, full_matrices=False)
    k = int(np.sum(s > tol))
    basis = np.hstack([ub, uw[:, :k]])
    return Subspace(Matrix.from_float(basis), _validated=True)


def subspace_intersect(u: Subspace, v: Subspace, tol: float = DEFAULT_TOL) -> Subspace:
    """The subspace u ∩ v.

    Exact: solve [U | -V] (x; y) = 0 and collect the points U x (the x-parts
    of a kernel basis are independent because V has independent columns).
    Float: principal directions whose angle sine is below ``tol``.
    """
    _check_pair(u, v)
    if u.dim == 0 or v.dim == 0:
        return Subspace.zero(u.ambient_dim, u.backend)
    if u.backend == EXACT:
        aug = Matrix.hstack([u.basis, -v.basis])
        kern = aug.null_space()
        if kern.cols == 0:
            return Subspace.zero(u.ambient_dim, EXACT)
        x_part = Matrix(u.dim, kern.cols, EXACT, _x=kern.exact_rows[: u.dim])
        return Subspace(u.basis @ x_part)
    sines = principal_sines(u, v)
    k = int(np.sum(sines <= tol))
    k = min(k, v.dim)
    if k == 0:
        return Subspace.zero(u.ambient_dim, FLOAT)
    ub, vb = u.basis.array, v.basis.array
    p, _, _ = np.linalg.svd(ub.conj().T @ vb)
    basis = ub @ p[:, :k]
    return Subspace(Matrix.from_float(basis), _validated=True)


def subspace_preimage(m: Matrix, v: Subspace, tol: float = DEFAULT_TOL) -> Subspace:
    """{x : m x ∈ v} for a square matrix acting on the ambient space."""
    if m.rows != m.cols:
        raise DimensionMismatchError("preimage expects a square matrix")
    if m.rows != v.ambient_dim:
        raise DimensionMismatchError("matrix size does not match the ambient dimension")
    if m.backend != v.backend:
        raise BackendError("mixed-backend preimage; convert first")
    n = m.rows
    if v.dim == n:
        return Subspace.full(n, m.backend)
    aug = Matrix.hstack([m, -v.basis]) if v.dim else m
    if m.backend == EXACT:
        kern = aug.null_space()
    else:
        scale = max(1.0, aug.norm())
        kern = aug.null_space(tol=tol * scale)
    if kern.cols == 0:
        return Subspace.zero(n, m.backend)
    if m.backend == EXACT:
        x_part = Matrix(n, kern.cols, EXACT, _x=kern.exact_rows[:n])
        return Subspace(x_part)
    x_part = Matrix.from_float(kern.array[:n, :])
    return column_space(x_part, rank_hint=kern.cols)
