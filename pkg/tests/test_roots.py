import pytest

from h4matroid.gfield import GoldenNumber
from h4matroid.roots import (
    TranscriptionError,
    canonicalize,
    dot,
    h4_columns,
    h4_points,
    load_h4,
    lookup,
    parallel_pairs,
    reflect,
    vector,
)


def test_sixty_non_parallel_columns():
    cols = h4_columns()
    assert len(cols) == 60
    assert all(len(c) == 4 for c in cols)
    assert parallel_pairs(h4_points()) == []


def test_columns_follow_matrix_order():
    pts = h4_points()
    assert pts[0].coords == vector(1, 0, 0, 0)
    assert pts[12].coords == vector(0, "t", "t2", 1)
    assert pts[29].coords == vector("t2", 0, "t", -1)


def test_three_root_lengths():
    # squared lengths 1, 4 and 4τ² up to the projective scaling of the columns
    norms = {dot(c, c) for c in h4_columns()}
    tau2 = GoldenNumber(1, 1)
    assert norms == {GoldenNumber(1), GoldenNumber(4), tau2 * 4}


def test_lookup_is_projective():
    for p in h4_points():
        assert lookup(p.coords) == p.id
        assert lookup([-x for x in p.coords]) == p.id
        assert lookup([x * GoldenNumber(0, 1) for x in p.coords]) == p.id
    assert lookup(vector(1, 2, 3, 4)) is None


def test_canonicalize_rejects_zero():
    with pytest.raises(ValueError):
        canonicalize(vector(0, 0, 0, 0))


def test_strict_load_rejects_duplicates():
    cols = h4_columns()
    bad = cols[:59] + [tuple(-x for x in cols[3])]
    with pytest.raises(TranscriptionError):
        load_h4(bad)
    assert len(parallel_pairs(load_h4(bad, strict=False))) == 1


def test_reflections_permute_the_roots():
    pts = h4_points()
    for x in pts[::7]:
        for v in pts:
            w = reflect(v.coords, x.coords)
            assert dot(w, w) == dot(v.coords, v.coords)
            assert lookup(w) is not None
        assert lookup(reflect(x.coords, x.coords)) == x.id
