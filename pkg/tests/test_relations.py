"""Domination / singularity analysis of operator pairs."""

import math
import random
from fractions import Fraction

import pytest

from psdcone.generators import derive_seed, random_pair_with_relation, random_psd
from psdcone.linalg import EXACT, FLOAT, Matrix, PsdOperator
from psdcone.relations import (
    analyze_pair,
    is_abs_continuous,
    is_singular,
    leq,
    min_domination_constant,
    relation_triple,
    same_range_class,
)

from naive_oracles import min_constant_bisect

DOM = 2**60


def _op(rows):
    return PsdOperator.from_matrix(Matrix.exact(rows))


def test_frozen_report_diag_pair():
    report = analyze_pair(_op([[1, 0], [0, 0]]), _op([[1, 0], [0, 1]]))
    assert report.backend == EXACT
    assert (report.rank_a, report.rank_b) == (1, 2)
    assert report.leq_ab and not report.leq_ba
    assert report.abs_cont_ab and not report.abs_cont_ba
    assert not report.singular
    assert not report.same_range_class
    assert report.dim_range_sum == 2
    assert report.dim_range_intersection == 1
    assert report.min_domination_constant == pytest.approx(1.0)


def test_frozen_report_singular_pair():
    ones = _op([[1, 1], [1, 1]])
    e1 = _op([[1, 0], [0, 0]])
    report = analyze_pair(ones, e1)
    assert report.singular
    assert not report.abs_cont_ab and not report.abs_cont_ba
    assert report.dim_range_intersection == 0
    assert report.min_domination_constant is None


def test_min_constant_oracle_reproduces_known_values():
    # lambda_max of ones(2) against the identity is exactly 2
    ones = _op([[1, 1], [1, 1]])
    eye = _op([[1, 0], [0, 1]])
    got = min_constant_bisect(ones, eye)
    assert abs(got - 2) < Fraction(1, 2**38)
    # [[2,1],[1,1]] against the identity: largest eigenvalue (3+sqrt 5)/2
    bumpy = _op([[2, 1], [1, 1]])
    want = (3 + math.sqrt(5)) / 2
    assert abs(float(min_constant_bisect(bumpy, eye)) - want) < 1e-9


def test_min_constant_matches_bisection_oracle():
    rand = random.Random(31)
    checked = 0
    while checked < 15:
        dim = rand.randint(2, 4)
        a, b = random_pair_with_relation(dim, "ac", derive_seed(31, checked))
        if a.rank == 0:
            checked += 1
            continue
        oracle = min_constant_bisect(a, b)
        got = min_domination_constant(a, b)
        assert got is not None and oracle is not None
        assert abs(float(oracle) - got) < 1e-7 * max(1.0, got)
        # the constant it names must actually dominate (with headroom for floats)
        assert leq(a, b.scaled(Fraction(float(got) * (1 + 1e-9)).limit_denominator(10**12)))
        checked += 1


def test_min_constant_degenerate_cases():
    zero = PsdOperator.zero(2, EXACT)
    eye = _op([[1, 0], [0, 1]])
    assert min_domination_constant(zero, eye) == 0.0
    ones = _op([[1, 1], [1, 1]])
    e1 = _op([[1, 0], [0, 0]])
    assert min_domination_constant(ones, e1) is None  # not dominated at all


def test_domination_at_large_scale_decides_range_inclusion():
    rand = random.Random(77)
    for k in range(60):
        dim = rand.randint(2, 4)
        kind = ("ac", "singular", "incomparable")[k % 3]
        if kind == "incomparable" and dim < 3:
            kind = "ac"
        a, b = random_pair_with_relation(dim, kind, derive_seed(77, k))
        assert is_abs_continuous(a, b) == leq(a, b.scaled(DOM))
        assert is_abs_continuous(b, a) == leq(b, a.scaled(DOM))


def test_leq_basics():
    a = random_psd(3, 2, seed=5)
    b = random_psd(3, 3, seed=6)
    apb = PsdOperator.certified(a.matrix + b.matrix, 3)
    assert leq(a, apb)
    assert not leq(apb, a)  # b is invertible, so the sum strictly exceeds a
    assert leq(a, a)


def test_relation_triple_consistent_with_analyze():
    rand = random.Random(13)
    for k in range(40):
        dim = rand.randint(2, 4)
        a = random_psd(dim, rand.randint(0, dim), derive_seed(13, k, 0))
        b = random_psd(dim, rand.randint(0, dim), derive_seed(13, k, 1))
        triple = relation_triple(a, b)
        rep = analyze_pair(a, b)
        assert triple == (rep.abs_cont_ab, rep.abs_cont_ba, rep.singular)


def test_same_range_class():
    a = random_psd(3, 2, seed=8)
    assert same_range_class(a, a.scaled(2))
    other = random_psd(3, 1, seed=9)
    assert not same_range_class(a, other)


def test_zero_operator_relations():
    zero = PsdOperator.zero(3, EXACT)
    b = random_psd(3, 2, seed=10)
    assert is_abs_continuous(zero, b)
    assert is_singular(zero, b)  # trivial intersection
    rep = analyze_pair(zero, b)
    assert rep.abs_cont_ab and rep.singular and rep.min_domination_constant == 0.0


def test_float_report_matches_exact_on_integer_data():
    rand = random.Random(21)
    for k in range(25):
        dim = rand.randint(2, 4)
        kind = ("ac", "singular")[k % 2]
        a, b = random_pair_with_relation(dim, kind, derive_seed(21, k))
        exact_rep = analyze_pair(a, b)
        float_rep = analyze_pair(a.to_float(), b.to_float())
        assert float_rep.backend == FLOAT
        for field in ("abs_cont_ab", "abs_cont_ba", "singular", "leq_ab", "leq_ba",
                      "rank_a", "rank_b", "dim_range_sum", "dim_range_intersection"):
            assert getattr(float_rep, field) == getattr(exact_rep, field), (field, k)


def test_report_dict_round_trip():
    rep = analyze_pair(_op([[1, 0], [0, 0]]), _op([[1, 0], [0, 1]]))
    d = rep.to_dict()
    assert d["abs_cont_ab"] is True
    assert set(d) == {
        "backend", "dim", "rank_a", "rank_b", "leq_ab", "leq_ba",
        "abs_cont_ab", "abs_cont_ba", "singular", "same_range_class",
        "dim_range_sum", "dim_range_intersection", "min_domination_constant",
    }


def test_dimension_mismatch_rejected():
    a = random_psd(2, 1, seed=1)
    b = random_psd(3, 1, seed=2)
    with pytest.raises(Exception):
        analyze_pair(a, b)
