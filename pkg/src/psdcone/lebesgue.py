"""Lebesgue-type decomposition of one PSD operator along another.

``decompose(a, b)`` splits a into an absolutely continuous part (range
dominated by b) and a singular part, via the domain
M = {x : a^{1/2} x ∈ ran b}: the a.c. part is a^{1/2} P_M a^{1/2}.  The
split is float-backend work (square roots are spectral); its defining
invariants plus a sampled maximality oracle live in
:func:`verify_decomposition`.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import BackendError, DimensionMismatchError
from .generators import derive_seed
from .linalg import (
    DEFAULT_TOL,
    FLOAT,
    Matrix,
    PsdOperator,
    Subspace,
    psd_sqrt,
    subspace_preimage,
)
from .relations import is_singular

#: eigenvalue/asymmetry slack granted to freshly constructed parts
_CONSTRUCTION_TOL = 1e-12


def ac_domain(a: PsdOperator, b: PsdOperator, tol: float = DEFAULT_TOL) -> Subspace:
    """The subspace {x : a^{1/2} x ∈ ran b} (float backend)."""
    _check(a, b)
    root = psd_sqrt(a)
    return subspace_preimage(root.matrix, b.range(), tol)


@dataclass(frozen=True)
class LebesgueDecomposition:
    ac_part: PsdOperator
    singular_part: PsdOperator
    base: PsdOperator

    @property
    def dim(self) -> int:
        return self.base.dim


def decompose(a: PsdOperator, b: PsdOperator, tol: float = DEFAULT_TOL) -> LebesgueDecomposition:
    """Split a = ac + singular relative to b.

    Both parts are built from the same square root (ac = S P S,
    singular = S (I-P) S with P the projector onto the a.c. domain), so
    they are PSD by construction and sum to a up to rounding.
    """
    _check(a, b)
    root = psd_sqrt(a).matrix.array
    dom = ac_domain(a, b, tol)
    p = dom.projector().array
    n = a.dim
    ac_arr = root @ p @ root
    sing_arr = root @ (np.eye(n) - p) @ root
    ac_part = PsdOperator.from_matrix(Matrix.from_float(ac_arr), tol=_CONSTRUCTION_TOL)
    singular_part = PsdOperator.from_matrix(Matrix.from_float(sing_arr), tol=_CONSTRUCTION_TOL)
    return LebesgueDecomposition(ac_part=ac_part, singular_part=singular_part, base=b)


@dataclass(frozen=True)
class DecompositionCheck:
    """Outcome of the decomposition invariants plus the maximality oracle."""

    sum_ok: bool
    ac_ok: bool
    singular_ok: bool
    maximality_sampled: int
    maximality_kept: int
    maximality_violations: int
    worst_excess: float
    note: str = "finite-sample maximality check; necessary conditions only"

    @property
    def passed(self) -> bool:
        return (
            self.sum_ok
            and self.ac_ok
            and self.singular_ok
            and self.maximality_violations == 0
        )

    def to_dict(self) -> dict:
        return {
            "sum_ok": self.sum_ok,
            "ac_ok": self.ac_ok,
            "singular_ok": self.singular_ok,
            "maximality_sampled": self.maximality_sampled,
            "maximality_kept": self.maximality_kept,
            "maximality_violations": self.maximality_violations,
            "worst_excess": self.worst_excess,
            "passed": self.passed,
            "note": self.note,
        }


def _dominated_residual(c: np.ndarray, p_base: np.ndarray, n: int) -> float:
    """Spectral norm of (I-P) C (I-P), scaled: 0 iff ran C ⊆ ran base."""
    q = np.eye(n) - p_base
    r = q @ c @ q
    scale = max(1.0, float(np.linalg.norm(c, 2)))
    return float(np.linalg.norm(r, 2)) / scale


def verify_decomposition(
    dec: LebesgueDecomposition,
    a: PsdOperator,
    trials: int = 200,
    seed: int = 0,
    tol: float = DEFAULT_TOL,
) -> DecompositionCheck:
    """Check the defining invariants and sample the maximality property.

    Maximality oracle: draw contractions 0 ≤ R ≤ I, form C = a^{1/2} R a^{1/2}
    (every PSD C ≤ a arises this way), keep those whose range is dominated by
    the base within tolerance, and demand C ≤ ac_part + tol·I.  Half of the
    draws are supported on the a.c. domain so the filter stays non-vacuous
    when the base is rank deficient.
    """
    if a.backend != FLOAT:
        raise BackendError("verification runs on the float backend")
    n = a.dim
    ac = dec.ac_part.matrix.array
    sing = dec.singular_part.matrix.array
    total = ac + sing - a.matrix.array
    scale_a = max(1.0, float(np.linalg.norm(a.matrix.array, 2)))
    sum_ok = float(np.linalg.norm(total, 2)) <= tol * scale_a

    p_base = dec.base.range().projector().array
    ac_ok = _dominated_residual(ac, p_base, n) <= tol
    singular_ok = is_singular(dec.singular_part, dec.base, tol)

    root = psd_sqrt(a).matrix.array
    p_dom = ac_domain(a, dec.base, tol).projector().array
    rng = np.random.default_rng(derive_seed(seed, 71, n))
    kept = 0
    violations = 0
    worst = 0.0
    cushion = ac + tol * np.eye(n)
    for k in range(trials):
        w = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        w = (w + w.conj().T) / 2.0
        top = float(np.linalg.norm(w, 2)) or 1.0
        r = (np.eye(n) + w / top) / 2.0  # eigenvalues in [0, 1]
        if k % 2 == 1:
            r = p_dom @ r @ p_dom  # still 0 ≤ R ≤ I, supported on the domain
        c = root @ r @ root
        c = (c + c.conj().T) / 2.0
        if _dominated_residual(c, p_base, n) > tol:
            continue
        kept += 1
        gap = float(np.linalg.eigvalsh(cushion - c)[0])
        if gap < -_CONSTRUCTION_TOL * scale_a:
            violations += 1
            worst = max(worst, -gap)
    return DecompositionCheck(
        sum_ok=sum_ok,
        ac_ok=ac_ok,
        singular_ok=singular_ok,
        maximality_sampled=trials,
        maximality_kept=kept,
        maximality_violations=violations,
        worst_excess=worst,
    )


def _check(a: PsdOperator, b: PsdOperator) -> None:
    if a.backend != FLOAT or b.backend != FLOAT:
        raise BackendError(
            "lebesgue decomposition uses spectral square roots; convert to the float backend"
        )
    if a.dim != b.dim:
        raise DimensionMismatchError("operators act on different spaces")
