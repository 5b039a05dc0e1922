"""Subspaces: membership, sums, intersections, preimages, principal angles."""

import random

import numpy as np
import pytest

from psdcone.errors import DimensionMismatchError
from psdcone.linalg import (
    EXACT,
    FLOAT,
    Matrix,
    Subspace,
    column_space,
    subspace_intersect,
    subspace_preimage,
    subspace_sum,
)
from psdcone.linalg.subspace import principal_sines


def _rand_exact(rand, rows, cols):
    return Matrix.exact(
        [[(rand.randint(-3, 3), rand.randint(-3, 3)) for _ in range(cols)] for _ in range(rows)]
    )


def test_span_membership_exact():
    u = column_space(Matrix.exact([[1], [1], [0]]))
    assert u.contains_vector(Matrix.exact([[2], [2], [0]]))
    assert not u.contains_vector(Matrix.exact([[1], [0], [0]]))


def test_zero_and_full():
    z = Subspace.zero(3, EXACT)
    f = Subspace.full(3, EXACT)
    assert z.dim == 0 and f.dim == 3
    assert f.contains(z)
    assert not z.contains(f)
    assert z.equals(Subspace.zero(3, EXACT))


def test_principal_sines_known_angles():
    e1 = column_space(Matrix.from_float([[1.0], [0.0]]))
    e2 = column_space(Matrix.from_float([[0.0], [1.0]]))
    diag = column_space(Matrix.from_float([[1.0], [1.0]]))
    assert principal_sines(e1, e2)[0] == pytest.approx(1.0)
    assert principal_sines(e1, e1)[0] == pytest.approx(0.0, abs=1e-14)
    # 45 degrees between e1 and the diagonal
    assert principal_sines(e1, diag)[0] == pytest.approx(np.sin(np.pi / 4))


def test_dimension_formula_sum_plus_intersection():
    rand = random.Random(99)
    for _ in range(40):
        n = rand.randint(2, 5)
        u = column_space(_rand_exact(rand, n, rand.randint(1, n)))
        v = column_space(_rand_exact(rand, n, rand.randint(1, n)))
        s = subspace_sum(u, v)
        i = subspace_intersect(u, v)
        assert s.dim + i.dim == u.dim + v.dim
        assert s.contains(u) and s.contains(v)
        assert u.contains(i) and v.contains(i)


def test_intersection_agrees_between_backends():
    rand = random.Random(123)
    for _ in range(30):
        n = rand.randint(2, 5)
        a = _rand_exact(rand, n, rand.randint(1, n))
        b = _rand_exact(rand, n, rand.randint(1, n))
        exact_dim = subspace_intersect(column_space(a), column_space(b)).dim
        float_dim = subspace_intersect(
            column_space(a.to_float()), column_space(b.to_float())
        ).dim
        assert exact_dim == float_dim


def test_preimage_frozen_case():
    # rows of all-ones map x to ((x1+x2), (x1+x2)); the preimage of span{e1}
    # is exactly the antidiagonal span{(1, -1)}
    m = Matrix.exact([[1, 1], [1, 1]])
    target = column_space(Matrix.exact([[1], [0]]))
    pre = subspace_preimage(m, target)
    assert pre.dim == 1
    assert pre.equals(column_space(Matrix.exact([[1], [-1]])))


def test_preimage_characterization():
    rand = random.Random(456)
    for _ in range(30):
        n = rand.randint(2, 4)
        m = _rand_exact(rand, n, n)
        v = column_space(_rand_exact(rand, n, rand.randint(1, n)))
        pre = subspace_preimage(m, v)
        # every preimage basis vector must actually land inside v
        for j in range(pre.dim):
            assert v.contains_vector(m @ pre.basis.column(j))
        # dimension identity: ker(m) plus the directions m sends into v
        expected = n - m.rank() + subspace_intersect(column_space(m), v).dim
        assert pre.dim == expected


def test_preimage_of_full_space_is_full():
    m = Matrix.exact([[1, 2], [3, 4]])
    assert subspace_preimage(m, Subspace.full(2, EXACT)).dim == 2


def test_float_preimage_matches_exact():
    rand = random.Random(789)
    for _ in range(20):
        n = rand.randint(2, 4)
        m = _rand_exact(rand, n, n)
        v = column_space(_rand_exact(rand, n, rand.randint(1, n)))
        exact_pre = subspace_preimage(m, v)
        float_pre = subspace_preimage(
            m.to_float(), column_space(v.basis.to_float())
        )
        assert float_pre.dim == exact_pre.dim
        if exact_pre.dim:
            assert float_pre.equals(
                column_space(exact_pre.basis.to_float()), 1e-8
            )


def test_dependent_float_basis_rejected():
    dependent = Matrix.from_float([[1.0, 2.0], [1.0, 2.0]])
    with pytest.raises(ValueError):
        Subspace(dependent)


def test_ambient_mismatch():
    u = column_space(Matrix.exact([[1], [0]]))
    w = column_space(Matrix.exact([[1], [0], [0]]))
    with pytest.raises(DimensionMismatchError):
        subspace_sum(u, w)


def test_projector_is_idempotent_and_hermitian():
    u = column_space(Matrix.from_float([[1.0, 0.0], [1.0, 1.0], [0.0, 2.0]]))
    p = u.projector()
    assert (p @ p).allclose(p, 1e-12)
    assert p.is_hermitian(1e-12)
    assert Subspace.zero(2, FLOAT).projector().is_zero(1e-15)
