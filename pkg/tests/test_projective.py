"""Line geometry: induced maps, reconstruction, coplanarity checks."""

import pytest

from psdcone.errors import DimensionMismatchError, LineMapError, NotSemilinearError
from psdcone.generators import derive_seed, random_semilinear
from psdcone.linalg import EXACT, FLAVOR_CONJUGATE, FLAVOR_LINEAR, Matrix
from psdcone.preserver import PreserverSpec, WeightFamily, make_wild_map
from psdcone.projective import (
    Line,
    LineMap,
    induced_line_map,
    projective_scalar,
    reconstruct_semilinear,
    swap_counterexample_line_map,
    unit_line,
    verify_projectivity,
)


def test_line_normalization_and_equality():
    assert Line.from_vector([2, 4, 0]) == Line.from_vector([1, 2, 0])
    assert Line.from_vector([(0, 2), (0, 4), 0]) == Line.from_vector([1, 2, 0])
    assert hash(Line.from_vector([3, 3])) == hash(Line.from_vector([1, 1]))
    assert Line.from_vector([0, 5]) == unit_line(2, 1)


def test_line_rejects_zero_and_mismatch():
    with pytest.raises(ValueError):
        Line.from_vector([0, 0])
    with pytest.raises(DimensionMismatchError):
        Line(3, (1, 0))


def test_line_map_caches_and_validates():
    lm = LineMap.from_operator(random_semilinear(3, 4))
    ln = Line.from_vector([1, 2, 3])
    assert lm(ln) == lm(ln)
    with pytest.raises(DimensionMismatchError):
        lm(Line.from_vector([1, 0]))


def test_projective_scalar():
    a = Matrix.exact([[2, 0], [0, 4]])
    b = Matrix.exact([[1, 0], [0, 2]])
    assert projective_scalar(a, b) == projective_scalar(a, b)  # stable
    assert a == b.scale(projective_scalar(a, b))
    assert projective_scalar(a, Matrix.exact([[1, 0], [0, 3]])) is None


def test_round_trip_both_flavors_dims_2_to_5():
    for seed in range(8):
        dim = 2 + seed % 4
        for flavor in (FLAVOR_LINEAR, FLAVOR_CONJUGATE):
            t = random_semilinear(dim, derive_seed(500, seed, flavor == "conjugate"), flavor=flavor)
            lm = induced_line_map(PreserverSpec.congruence(t))
            rec = reconstruct_semilinear(lm)
            assert rec.flavor == flavor
            lam = projective_scalar(rec.t, t.t)
            assert lam is not None and bool(lam)


def test_round_trip_through_float_snapping():
    t = random_semilinear(3, 42)
    spec = PreserverSpec.form_iv(t, WeightFamily.seeded(5))
    rec = reconstruct_semilinear(induced_line_map(spec))
    assert rec.flavor == FLAVOR_LINEAR
    assert projective_scalar(rec.t, t.t) is not None


def test_wild_maps_act_trivially_on_lines():
    lm = induced_line_map(make_wild_map(9, 3))
    for v in ([1, 0, 0], [1, 2, 3], [(1, 1), (0, 2), (3, 0)]):
        assert lm(Line.from_vector(v)) == Line.from_vector(v)
    rec = reconstruct_semilinear(lm)
    assert projective_scalar(rec.t, Matrix.identity(3, EXACT)) is not None


def test_projectivity_passes_for_operator_maps():
    rep = verify_projectivity(LineMap.from_operator(random_semilinear(4, 3)), trials=20, seed=1)
    assert rep.passed
    assert rep.coplanar_triples > 0 and rep.independent_triples > 0


def test_projectivity_rejects_the_swap_counterexample():
    rep = verify_projectivity(swap_counterexample_line_map(3), trials=0, seed=0)
    assert not rep.passed
    # the canonical witness: [e1], [e3], [e1+e3] stop being coplanar
    kinds = {f["kind"] for f in rep.failures}
    assert "canonical" in kinds


def test_projectivity_needs_three_dimensions():
    with pytest.raises(DimensionMismatchError):
        verify_projectivity(LineMap.from_operator(random_semilinear(2, 1)))


def test_reconstruction_rejects_the_swap_map():
    with pytest.raises(NotSemilinearError):
        reconstruct_semilinear(swap_counterexample_line_map(3))


def test_reconstruction_rejects_collapsed_coordinates():
    # a map squashing [e2] onto [e1] has dependent coordinate images
    def fn(line):
        if line == unit_line(3, 1):
            return unit_line(3, 0)
        return line

    with pytest.raises(NotSemilinearError):
        reconstruct_semilinear(LineMap(3, fn))


def test_snap_rejects_irrational_directions():
    from psdcone.projective import _snap_direction
    import numpy as np

    # best fraction with denominator <= the snap cap still misses sqrt(2)
    # by ~5e-11, an order of magnitude outside the acceptance window
    with pytest.raises(LineMapError):
        _snap_direction(np.array([1.0, np.sqrt(2)], dtype=complex))
    with pytest.raises(LineMapError):
        _snap_direction(np.zeros(3, dtype=complex))
    snapped = _snap_direction(np.array([2.0, 1.0], dtype=complex))
    from psdcone.linalg import GaussianRational

    assert snapped == (GaussianRational.coerce(1), GaussianRational.coerce("1/2"))
    # float noise well below the window must not spoil a true rational
    noisy = np.array([1.0, 0.5 + 3e-14, -0.25j], dtype=complex)
    assert _snap_direction(noisy) == tuple(
        GaussianRational.coerce(c) for c in ("1", "1/2", (0, "-1/4"))
    )


def test_induced_map_refuses_rank_breaking_specs(monkeypatch):
    # if a map fails to keep rank-one images rank one the induced map must
    # refuse rather than pick an arbitrary direction
    spec = PreserverSpec.congruence(random_semilinear(2, 6))
    from psdcone.linalg import PsdOperator

    monkeypatch.setattr(
        "psdcone.preserver.apply_map",
        lambda s, a: PsdOperator.from_matrix(Matrix.exact([[1, 0], [0, 1]])),
    )
    monkeypatch.setattr(
        "psdcone.projective.apply_map",
        lambda s, a: PsdOperator.from_matrix(Matrix.exact([[1, 0], [0, 1]])),
    )
    lm = induced_line_map(spec)
    with pytest.raises(LineMapError):
        lm(unit_line(2, 0))
