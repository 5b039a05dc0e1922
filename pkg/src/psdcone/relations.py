"""Order and range relations between PSD operators.

On the exact backend every predicate is decided with exact rank /
elimination arguments.  On the float backend range comparisons go through
principal angles (tolerance = angle in radians) and order comparisons
through eigenvalue bounds.  In finite dimension absolute continuity is
plain range inclusion and singularity is trivial range intersection, which
is what these predicates compute.
"""

from __future__ import annotations

from dataclasses import dataclass, asdict

import numpy as np

from .errors import BackendError, DimensionMismatchError
from .linalg import (
    DEFAULT_TOL,
    EXACT,
    Matrix,
    PsdOperator,
    principal_sines,
    psd_check,
)


def _check_pair(a: PsdOperator, b: PsdOperator) -> None:
    if a.dim != b.dim:
        raise DimensionMismatchError("operators act on different spaces")
    if a.backend != b.backend:
        raise BackendError("mixed backends; convert one operand first")


def _intersection_dim(a: PsdOperator, b: PsdOperator, tol: float) -> int:
    """dim(ran a ∩ ran b), decided per backend."""
    ra, rb = a.rank, b.rank
    if ra == 0 or rb == 0:
        return 0
    if a.backend == EXACT:
        joint = Matrix.hstack([a.range().basis, b.range().basis])
        return ra + rb - joint.rank()
    sines = principal_sines(a.range(), b.range())
    return int(np.sum(sines <= tol))


def relation_triple(
    a: PsdOperator, b: PsdOperator, tol: float = DEFAULT_TOL
) -> tuple[bool, bool, bool]:
    """(a ≪ b, b ≪ a, a ⊥ b) from a single intersection computation."""
    _check_pair(a, b)
    inter = _intersection_dim(a, b, tol)
    return (inter == a.rank, inter == b.rank, inter == 0)


def leq(a: PsdOperator, b: PsdOperator, tol: float | None = None) -> bool:
    """Loewner order: whether b - a is PSD."""
    _check_pair(a, b)
    return psd_check(b.matrix - a.matrix, tol)


def is_singular(a: PsdOperator, b: PsdOperator, tol: float = DEFAULT_TOL) -> bool:
    """Mutual singularity: ranges intersect only in 0."""
    _check_pair(a, b)
    return _intersection_dim(a, b, tol) == 0


def is_abs_continuous(a: PsdOperator, b: PsdOperator, tol: float = DEFAULT_TOL) -> bool:
    """Absolute continuity of a with respect to b: ran a ⊆ ran b."""
    _check_pair(a, b)
    return _intersection_dim(a, b, tol) == a.rank


def same_range_class(a: PsdOperator, b: PsdOperator, tol: float = DEFAULT_TOL) -> bool:
    """Mutual absolute continuity, i.e. equal ranges."""
    _check_pair(a, b)
    if a.rank != b.rank:
        return False
    return _intersection_dim(a, b, tol) == a.rank


def is_invertible_positive(a: PsdOperator) -> bool:
    return a.rank == a.dim


def _pinv_sqrt_array(b: PsdOperator) -> np.ndarray:
    """(b^{1/2})^+ using the certified rank to split the spectrum."""
    n = b.dim
    eigval, eigvec = np.linalg.eigh(b.matrix.array)
    inv_root = np.zeros(n)
    if b.rank:
        kept = np.maximum(eigval[n - b.rank :], np.finfo(float).tiny)
        inv_root[n - b.rank :] = 1.0 / np.sqrt(kept)
    return (eigvec * inv_root) @ eigvec.conj().T


def min_domination_constant(
    a: PsdOperator, b: PsdOperator, tol: float = DEFAULT_TOL
) -> float | None:
    """Least c ≥ 0 with a ≤ c·b, or None when no constant exists.

    Computed on the float backend as the top eigenvalue of
    (b^{1/2})^+ a (b^{1/2})^+; exact inputs are converted first.
    """
    _check_pair(a, b)
    af, bf = a.to_float(), b.to_float()
    if not is_abs_continuous(af, bf, tol):
        return None
    if a.rank == 0:
        return 0.0
    p = _pinv_sqrt_array(bf)
    mid = p @ af.matrix.array @ p
    mid = (mid + mid.conj().T) / 2.0
    top = float(np.linalg.eigvalsh(mid)[-1])
    return max(top, 0.0)


@dataclass(frozen=True)
class RelationReport:
    """Flat summary of every pairwise relation between two PSD operators."""

    backend: str
    dim: int
    rank_a: int
    rank_b: int
    leq_ab: bool
    leq_ba: bool
    abs_cont_ab: bool
    abs_cont_ba: bool
    singular: bool
    same_range_class: bool
    dim_range_sum: int
    dim_range_intersection: int
    min_domination_constant: float | None

    def to_dict(self) -> dict:
        return asdict(self)


def analyze_pair(a: PsdOperator, b: PsdOperator, tol: float = DEFAULT_TOL) -> RelationReport:
    """Evaluate every relation once, consistently, and report it flat.

    The range-arithmetic fields all derive from one intersection-dimension
    computation, so the reported quantities satisfy the lattice identities
    (dim sum = rank_a + rank_b - dim intersection, singular ⟺ trivial
    intersection, same range class ⟺ mutual absolute continuity).
    """
    _check_pair(a, b)
    ra, rb = a.rank, b.rank
    inter = _intersection_dim(a, b, tol)
    ac_ab = inter == ra
    ac_ba = inter == rb
    return RelationReport(
        backend=a.backend,
        dim=a.dim,
        rank_a=ra,
        rank_b=rb,
        leq_ab=leq(a, b, tol),
        leq_ba=leq(b, a, tol),
        abs_cont_ab=ac_ab,
        abs_cont_ba=ac_ba,
        singular=inter == 0,
        same_range_class=ac_ab and ac_ba,
        dim_range_sum=ra + rb - inter,
        dim_range_intersection=inter,
        min_domination_constant=(
            min_domination_constant(a, b, tol) if ac_ab else None
        ),
    )
