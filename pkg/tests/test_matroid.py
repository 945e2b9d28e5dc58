import pytest

from h4matroid.matroid import (
    EXPECTED_COUNTS,
    ClassificationError,
    H4Matroid,
    flat_is_orthogonal_frame,
)
from h4matroid.roots import dot, h4_points, lookup, vector

# flat counts by class
COUNTS = {"point": 60, "line2": 450, "line3": 200, "line5": 72, "pi3": 600, "pi5": 360, "pi6": 300, "pi15": 60}


def test_flat_counts(m):
    assert m.counts() == COUNTS == EXPECTED_COUNTS


def test_rank_basics(m):
    assert m.rank([]) == 0
    assert m.rank([5]) == 1
    assert m.rank(range(60)) == 4
    assert m.is_basis((0, 1, 2, 3))
    assert not m.is_basis((0, 1, 2))


def test_closure_classes(m):
    assert m.closure([]).cls == "empty"
    assert m.closure([7]).cls == "point"
    assert m.closure(range(60)).cls == "ground"
    for cls in ("line2", "line3", "line5"):
        line = m.flats[cls][0]
        assert m.closure(line.points[:2]).points == line.points
    with pytest.raises(IndexError):
        m.closure([60])


def test_plane_shapes(m):
    # (points, 2-point lines, 3-point lines, 5-point lines) inside each plane type
    shapes = {"pi3": (4, 3, 1, 0), "pi5": (6, 5, 0, 1), "pi6": (6, 3, 4, 0), "pi15": (15, 15, 10, 6)}
    for cls, shape in shapes.items():
        for f in m.flats[cls][:10]:
            lines = m.lines_inside(f.points)
            got = (len(f.points), *(sum(len(l) == k for l in lines) for k in (2, 3, 5)))
            assert got == shape


def test_unknown_plane_shape_is_rejected(m):
    # a Π15 with one point removed is no plane of M(H4)
    pts = m.flats["pi15"][0].points[:-1]
    with pytest.raises(ClassificationError):
        m.classify_plane(pts)


def test_incidence_table(m):
    table = m.incidence_table()
    assert table.ok
    assert table.uniform("point", "pi15") == 15
    assert table.uniform("point", "pi6") == 30
    assert table.uniform("point", "pi3") == 10  # as apex
    assert table.uniform("point", "pi5") == 6  # as apex
    assert table.apex_total == {"pi3": {40}, "pi5": {36}}
    assert table.uniform("line3", "pi6") == 6
    assert table.uniform("line5", "pi15") == 5


def test_covering_partitions(m):
    r = m.check_flat_covering(m.flats["point"][0])
    assert r.partitioned and r.residual == 59
    for cls, residual in (("line2", 58), ("line3", 57), ("line5", 55)):
        r = m.check_flat_covering(m.flats[cls][0])
        assert r.partitioned and r.residual == residual


def test_pi15_meets(m):
    r = m.pi15_pairwise_intersections()
    assert r["rank2_pairs"] == 60 * 59 // 2
    assert r["profiles"] == [(24, 20, 15)]
    assert not r["failures"]


def test_bases(m):
    assert m.count_bases() == 398_475


def test_orthoframes(m):
    frames = m.orthoframes
    assert len(frames) == 75
    assert all(len(m.frames_through(x)) == 5 for x in range(60))
    pts = h4_points()
    for f in frames:
        assert m.is_basis(f.points)
        assert all(not dot(pts[a], pts[b]) for i, a in enumerate(f.points) for b in f.points[i + 1 :])
        assert flat_is_orthogonal_frame(pts, f.points)
    assert m.orthoframe_characterizations()["disagreements"] == 0


def test_worked_orthoframe_examples(m):
    listed = {f.points for f in m.orthoframes}
    for cols in (
        [vector(0, 1, "-t", "-t2"), vector(1, 0, "t2", "-t"), vector("t", "t2", 0, 1), vector("t2", "-t", -1, 0)],
        [vector(1, 1, 1, 1), vector(0, "t", "-t2", 1), vector(1, "t", 0, "-t2"), vector("t2", "-t", -1, 0)],
    ):
        assert tuple(sorted(lookup(c) for c in cols)) in listed


def test_orthoplanes(m):
    pts = h4_points()
    planes = m.orthoplanes
    assert {p.points for p in planes} == {f.points for f in m.flats["pi15"]}
    for x in range(60):
        assert set(planes[x].points) == {y for y in range(60) if y != x and not dot(pts[x], pts[y])}
        assert m.orthopoint(planes[x]) == x


def test_pi15_restricts_to_h3(m):
    for plane in m.flats["pi15"]:
        r = m.pi15_as_h3(plane)
        assert r["points"] == 15 and r["lines"] == (15, 10, 6) and r["partition"]


def test_double_counting(m):
    for name, lhs, rhs in m.double_counting():
        assert lhs == rhs, name


def test_census(m):
    c = m.census()
    assert c.matches()
    assert c.bases == 398_475 and c.orthoframes == 75


def test_tampered_matrix_changes_the_census():
    from h4matroid.roots import h4_columns, load_h4

    cols = [list(c) for c in h4_columns()]
    cols[20][1] = -cols[20][1]
    m = H4Matroid(load_h4(cols, strict=False))
    try:
        assert m.counts() != COUNTS
    except ClassificationError:
        pass
