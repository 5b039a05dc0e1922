"""Seeded generators for PSD operators, operator pairs and invertible maps.

Exact-backend draws use small Gaussian integers (real/imaginary parts in
-3..3) so downstream elimination stays fast and every certificate is exact.
All generators are deterministic in their seed and re-certify what they
promise (rank, relation class, invertibility), retrying up to
``RETRY_BUDGET`` times before giving up.
"""

from __future__ import annotations

import random

import numpy as np

from .errors import GenerationError
from .linalg import (
    EXACT,
    FLOAT,
    FLAVOR_LINEAR,
    Matrix,
    PsdOperator,
    SemilinearOperator,
)
from .relations import analyze_pair

RETRY_BUDGET = 64

_ENTRY_LO, _ENTRY_HI = -3, 3
_MIX = 0x9E3779B97F4A7C15
_MASK = (1 << 63) - 1


def derive_seed(seed: int, *salts: int) -> int:
    """Deterministically derive an independent sub-seed."""
    h = seed & _MASK
    for s in salts:
        h = (h ^ ((s + 1) * _MIX)) & _MASK
        h = (h * 0xBF58476D1CE4E5B9 + 0x94D049BB133111EB) & _MASK
    return h


def _gauss_int_matrix(rows: int, cols: int, rand: random.Random) -> Matrix:
    data = [
        [
            (rand.randint(_ENTRY_LO, _ENTRY_HI), rand.randint(_ENTRY_LO, _ENTRY_HI))
            for _ in range(cols)
        ]
        for _ in range(rows)
    ]
    return Matrix.exact(data)


def _float_factor(rows: int, cols: int, rng: np.random.Generator) -> Matrix:
    g = (rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))) / np.sqrt(2)
    return Matrix.from_float(g)


def random_psd(dim: int, rank: int, seed: int, backend: str = EXACT) -> PsdOperator:
    """Seeded PSD operator of certified rank, built as G G*."""
    if not 0 <= rank <= dim:
        raise ValueError(f"rank {rank} out of range for dimension {dim}")
    if rank == 0:
        return PsdOperator.zero(dim, backend)
    if backend == EXACT:
        rand = random.Random(derive_seed(seed, 101, dim, rank))
        for _ in range(RETRY_BUDGET):
            g = _gauss_int_matrix(dim, rank, rand)
            if g.rank() == rank:
                return PsdOperator.certified(g @ g.H, rank)
        raise GenerationError("could not draw a full-column-rank exact factor")
    rng = np.random.default_rng(derive_seed(seed, 102, dim, rank))
    for _ in range(RETRY_BUDGET):
        g = _float_factor(dim, rank, rng)
        s = np.linalg.svd(g.array, compute_uv=False)
        if s[-1] / s[0] > 1e-6:
            return PsdOperator.certified((g @ g.H).hermitize(), rank)
    raise GenerationError("could not draw a well-conditioned float factor")


def rank_one(f: Matrix) -> PsdOperator:
    """f f* for a nonzero column vector f."""
    if f.cols != 1:
        raise ValueError("expected a column vector")
    if f.is_zero():
        raise ValueError("zero vector spans no line")
    return PsdOperator.certified(f @ f.H, 1)


def random_semilinear(
    dim: int, seed: int, flavor: str = FLAVOR_LINEAR
) -> SemilinearOperator:
    """Seeded invertible Gaussian-integer operator of the requested flavor."""
    rand = random.Random(derive_seed(seed, 103, dim))
    for _ in range(RETRY_BUDGET):
        t = _gauss_int_matrix(dim, dim, rand)
        if t.rank() == dim:
            return SemilinearOperator(t, flavor)
    raise GenerationError("could not draw an invertible matrix")


def random_pair_with_relation(
    dim: int, relation: str, seed: int, backend: str = EXACT
) -> tuple[PsdOperator, PsdOperator]:
    """Seeded pair (a, b) certified to satisfy the requested relation.

    relation ∈ {"ac", "singular", "incomparable"}: absolutely continuous
    (a ≪ b; strict-rank or equal-range, half and half), mutually singular,
    or neither comparable nor singular (needs dim ≥ 3).
    """
    if relation == "ac":
        return _pair_ac(dim, seed, backend)
    if relation == "singular":
        if dim < 2:
            raise GenerationError("singular pairs with nonzero parts need dim >= 2")
        return _pair_singular(dim, seed, backend)
    if relation == "incomparable":
        if dim < 3:
            raise GenerationError(
                "incomparable pairs are impossible below dimension 3: with "
                "partially overlapping ranges both ranks would have to exceed "
                "the overlap and still fit in the space"
            )
        return _pair_incomparable(dim, seed, backend)
    raise ValueError(f"unknown relation {relation!r}")


def _factor(dim: int, rank: int, sub: int, backend: str, attempt: int) -> Matrix:
    if backend == EXACT:
        rand = random.Random(derive_seed(sub, attempt))
        g = _gauss_int_matrix(dim, rank, rand)
    else:
        rng = np.random.default_rng(derive_seed(sub, attempt))
        g = _float_factor(dim, rank, rng)
    return g


def _operator_from_factor(g: Matrix, rank: int) -> PsdOperator | None:
    if g.backend == EXACT:
        if g.rank() != rank:
            return None
        return PsdOperator.certified(g @ g.H, rank)
    s = np.linalg.svd(g.array, compute_uv=False)
    if rank and (s.size < rank or s[0] == 0.0 or s[rank - 1] / s[0] <= 1e-6):
        return None
    return PsdOperator.certified((g @ g.H).hermitize(), rank)


def _pair_ac(dim: int, seed: int, backend: str) -> tuple[PsdOperator, PsdOperator]:
    rand = random.Random(derive_seed(seed, 201, dim))
    for attempt in range(RETRY_BUDGET):
        rb = rand.randint(1, dim)
        equal_range = rand.random() < 0.5
        ra = rb if equal_range else rand.randint(0, rb - 1)
        h = _factor(dim, rb, derive_seed(seed, 202, dim), backend, attempt)
        b = _operator_from_factor(h, rb)
        if b is None:
            continue
        if ra == 0:
            return PsdOperator.zero(dim, backend), b
        m = _factor(rb, ra, derive_seed(seed, 203, dim), backend, attempt)
        g = h @ m
        a = _operator_from_factor(g, ra)
        if a is None:
            continue
        report = analyze_pair(a, b)
        if report.abs_cont_ab and (not equal_range or report.same_range_class):
            return a, b
    raise GenerationError("exhausted retries building an absolutely continuous pair")


def _pair_singular(dim: int, seed: int, backend: str) -> tuple[PsdOperator, PsdOperator]:
    rand = random.Random(derive_seed(seed, 301, dim))
    for attempt in range(RETRY_BUDGET):
        ra = rand.randint(0, dim - 1)
        rb = rand.randint(0 if ra else 1, dim - ra)
        a = _operator_from_factor(
            _factor(dim, ra, derive_seed(seed, 302, dim), backend, attempt), ra
        ) if ra else PsdOperator.zero(dim, backend)
        b = _operator_from_factor(
            _factor(dim, rb, derive_seed(seed, 303, dim), backend, attempt), rb
        ) if rb else PsdOperator.zero(dim, backend)
        if a is None or b is None:
            continue
        report = analyze_pair(a, b)
        if report.singular:
            return a, b
    raise GenerationError("exhausted retries building a singular pair")


def _pair_incomparable(dim: int, seed: int, backend: str) -> tuple[PsdOperator, PsdOperator]:
    rand = random.Random(derive_seed(seed, 401, dim))
    for attempt in range(RETRY_BUDGET):
        shared = rand.randint(1, dim - 2)
        pa = rand.randint(1, dim - shared - 1)
        pb = rand.randint(1, dim - shared - pa)
        s = _factor(dim, shared, derive_seed(seed, 402, dim), backend, attempt)
        xa = _factor(dim, pa, derive_seed(seed, 403, dim), backend, attempt)
        xb = _factor(dim, pb, derive_seed(seed, 404, dim), backend, attempt)
        ga = Matrix.hstack([s, xa])
        gb = Matrix.hstack([s, xb])
        a = _operator_from_factor(ga, shared + pa)
        b = _operator_from_factor(gb, shared + pb)
        if a is None or b is None:
            continue
        report = analyze_pair(a, b)
        if not report.abs_cont_ab and not report.abs_cont_ba and not report.singular:
            return a, b
    raise GenerationError("exhausted retries building an incomparable pair")
