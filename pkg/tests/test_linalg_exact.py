"""Exact-backend matrix algebra against naive reference implementations."""

import random

import pytest

from psdcone.errors import DimensionMismatchError
from psdcone.linalg import EXACT, GaussianRational, Matrix
from psdcone.linalg.matrix import psd_certify_exact

from naive_oracles import grid_of, naive_det, naive_rank


def _random_exact(rand, rows, cols, span=3):
    return Matrix.exact(
        [
            [(rand.randint(-span, span), rand.randint(-span, span)) for _ in range(cols)]
            for _ in range(rows)
        ]
    )


def test_det_matches_cofactor_expansion():
    rand = random.Random(101)
    for _ in range(60):
        n = rand.randint(1, 4)
        m = _random_exact(rand, n, n)
        want = naive_det(grid_of(m))
        got = m.det()
        assert (got.re, got.im) == want


def test_det_frozen_values():
    assert Matrix.exact([[2, 1], [1, 1]]).det() == GaussianRational.coerce(1)
    # det [[i, 1],[1, i]] = i*i - 1 = -2
    assert Matrix.exact([[(0, 1), 1], [1, (0, 1)]]).det() == GaussianRational.coerce(-2)


def test_rank_matches_naive_elimination():
    rand = random.Random(202)
    for _ in range(80):
        rows = rand.randint(1, 5)
        cols = rand.randint(1, 5)
        m = _random_exact(rand, rows, cols, span=2)
        assert m.rank() == naive_rank(grid_of(m))


def test_rref_shape_and_idempotence():
    rand = random.Random(303)
    for _ in range(30):
        m = _random_exact(rand, rand.randint(1, 4), rand.randint(1, 5))
        red, pivots = m.rref()
        assert len(pivots) == m.rank()
        red2, pivots2 = red.rref()
        assert red2 == red and pivots2 == pivots
        for r, c in enumerate(pivots):
            assert red.entry(r, c) == GaussianRational.coerce(1)


def test_null_space_annihilates_and_has_right_dimension():
    rand = random.Random(404)
    for _ in range(40):
        m = _random_exact(rand, rand.randint(1, 4), rand.randint(1, 5))
        ns = m.null_space()
        assert ns.cols == m.cols - m.rank()
        if ns.cols:
            assert (m @ ns).is_zero()
            assert ns.rank() == ns.cols


def test_null_space_of_zero_column_matrix_raises():
    m = Matrix.exact([[1], [2]])
    taken = m.take_columns([])
    with pytest.raises(DimensionMismatchError):
        taken.null_space()


def test_inverse_and_singular_error():
    rand = random.Random(505)
    found = 0
    while found < 20:
        n = rand.randint(1, 4)
        m = _random_exact(rand, n, n)
        if m.rank() < n:
            with pytest.raises(ZeroDivisionError):
                m.inverse()
            continue
        inv = m.inverse()
        assert m @ inv == Matrix.identity(n, EXACT)
        assert inv @ m == Matrix.identity(n, EXACT)
        found += 1


def test_pinv_satisfies_penrose_identities():
    rand = random.Random(606)
    for _ in range(40):
        m = _random_exact(rand, rand.randint(1, 4), rand.randint(1, 4), span=2)
        p = m.pinv()
        assert m @ p @ m == m
        assert p @ m @ p == p
        assert (m @ p).H == m @ p
        assert (p @ m).H == p @ m
        assert p.rank() == m.rank()


def test_pinv_frozen_diagonal():
    m = Matrix.exact([[2, 0], [0, 0]])
    assert m.pinv() == Matrix.exact([[("1/2", 0), 0], [0, 0]])


def test_psd_certificate_on_gram_matrices():
    rand = random.Random(707)
    for _ in range(50):
        n = rand.randint(1, 4)
        g = _random_exact(rand, n, rand.randint(1, n), span=2)
        gram = g @ g.H
        ok, rank = psd_certify_exact(gram)
        assert ok
        assert rank == g.rank()


def test_psd_certificate_rejections():
    indefinite = Matrix.exact([[0, 1], [1, 0]])
    assert psd_certify_exact(indefinite) == (False, 0)
    negative = Matrix.exact([[-1]])
    assert psd_certify_exact(negative)[0] is False
    non_hermitian = Matrix.exact([[1, 1], [0, 1]])
    assert psd_certify_exact(non_hermitian)[0] is False
    zero = Matrix.zeros(3, 3)
    assert psd_certify_exact(zero) == (True, 0)
    # zero diagonal with a nonzero row cannot be PSD
    trap = Matrix.exact([[0, 1], [1, 5]])
    assert psd_certify_exact(trap)[0] is False


def test_matmul_and_adjoint_consistency():
    rand = random.Random(808)
    for _ in range(20):
        a = _random_exact(rand, rand.randint(1, 3), rand.randint(1, 3))
        b = _random_exact(rand, a.cols, rand.randint(1, 3))
        prod = a @ b
        assert prod.H == b.H @ a.H
        assert prod.conj() == a.conj() @ b.conj()


def test_hermitize_fixes_hermitian_part():
    m = Matrix.exact([[1, (2, 1)], [(2, -1), 3]])
    assert m.is_hermitian()
    assert m.hermitize() == m
