"""Invertible linear / conjugate-linear operators acting on vectors and subspaces."""

from __future__ import annotations

from ..errors import DimensionMismatchError
from .matrix import EXACT, Matrix
from .subspace import Subspace, column_space

FLAVOR_LINEAR = "linear"
FLAVOR_CONJUGATE = "conjugate"
FLAVORS = (FLAVOR_LINEAR, FLAVOR_CONJUGATE)


class SemilinearOperator:
    """x ↦ T x (linear) or x ↦ T conj(x) (conjugate-linear), with T invertible."""

    __slots__ = ("t", "flavor")

    def __init__(self, t: Matrix, flavor: str = FLAVOR_LINEAR):
        if flavor not in FLAVORS:
            raise ValueError(f"unknown flavor {flavor!r}")
        if not t.is_square:
            raise DimensionMismatchError("semilinear operators are square")
        if t.backend == EXACT:
            if t.rank() != t.rows:
                raise ValueError("operator matrix is singular")
        elif t.rank() != t.rows:
            raise ValueError("operator matrix is numerically singular")
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "flavor", flavor)

    def __setattr__(self, name, value):
        raise AttributeError("SemilinearOperator is immutable")

    @property
    def dim(self) -> int:
        return self.t.rows

    @property
    def backend(self) -> str:
        return self.t.backend

    @property
    def is_conjugate(self) -> bool:
        return self.flavor == FLAVOR_CONJUGATE

    def to_float(self) -> "SemilinearOperator":
        return SemilinearOperator(self.t.to_float(), self.flavor)

    def apply_vector(self, v: Matrix) -> Matrix:
        if v.rows != self.dim or v.cols != 1:
            raise DimensionMismatchError("expected an ambient column vector")
        arg = v.conj() if self.is_conjugate else v
        return self.t @ arg

    def apply_matrix(self, m: Matrix) -> Matrix:
        """Columnwise action: each column x becomes T x or T conj(x)."""
        if m.rows != self.dim:
            raise DimensionMismatchError("row count does not match the operator")
        arg = m.conj() if self.is_conjugate else m
        return self.t @ arg

    def apply_subspace(self, u: Subspace) -> Subspace:
        """Image subspace T(u); conjugation maps subspaces to subspaces too."""
        if u.ambient_dim != self.dim:
            raise DimensionMismatchError("ambient dimension mismatch")
        if u.dim == 0:
            return Subspace.zero(self.dim, u.backend)
        img = self.apply_matrix(u.basis)
        return column_space(img, rank_hint=u.dim)

    def inverse(self) -> "SemilinearOperator":
        """The inverse map, which has the same flavor."""
        inv = self.t.conj().inverse() if self.is_conjugate else self.t.inverse()
        return SemilinearOperator(inv, self.flavor)

    def compose(self, other: "SemilinearOperator") -> "SemilinearOperator":
        """self ∘ other; flavors multiply like signs."""
        if self.dim != other.dim:
            raise DimensionMismatchError("composition dimension mismatch")
        inner = other.t.conj() if self.is_conjugate else other.t
        flavor = (
            FLAVOR_CONJUGATE
            if (self.is_conjugate != other.is_conjugate)
            else FLAVOR_LINEAR
        )
        return SemilinearOperator(self.t @ inner, flavor)

    def __repr__(self) -> str:
        return f"SemilinearOperator(dim={self.dim}, flavor={self.flavor}, backend={self.backend})"
