import random
from itertools import combinations

import numpy as np
import pytest

from h4matroid.gfield import ONE, ZERO, GoldenNumber
from h4matroid.roots import h4_points
from h4matroid.zkernel import ZTable, echelon, quadruples, span_forms, zdet, zmul, zrank


def golden_det(rows):
    """Oracle: determinant by elimination over the field itself."""
    m = [list(r) for r in rows]
    n = len(m)
    det = ONE
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c]), None)
        if piv is None:
            return ZERO
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det = det * m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return det


def golden_rank(vectors):
    m = [list(v) for v in vectors]
    rank = 0
    for c in range(4):
        piv = next((r for r in range(rank, len(m)) if m[r][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][c]:
                f = m[r][c] / m[rank][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[rank])]
        rank += 1
    return rank


def as_golden(pair):
    return GoldenNumber(*pair)


@pytest.fixture(scope="module")
def table():
    return ZTable([p.zcoords for p in h4_points()])


def test_zmul_matches_field_product():
    rng = random.Random(1)
    for _ in range(500):
        x = (rng.randint(-9, 9), rng.randint(-9, 9))
        y = (rng.randint(-9, 9), rng.randint(-9, 9))
        assert as_golden(zmul(x, y)) == as_golden(x) * as_golden(y)


def test_det4_matches_field_elimination(table):
    pts = h4_points()
    rng = random.Random(2)
    quads = np.array([sorted(rng.sample(range(60), 4)) for _ in range(400)])
    da, db = table.det4(quads)
    for q, a, b in zip(quads, da, db):
        cols = [pts[i].coords for i in q]
        rows = [[cols[j][i] for j in range(4)] for i in range(4)]
        assert GoldenNumber(int(a), int(b)) == golden_det(rows)


def test_zdet_matches_field_elimination():
    pts = h4_points()
    rng = random.Random(3)
    for _ in range(100):
        q = rng.sample(range(60), 4)
        z = zdet([[pts[i].zcoords[r] for i in q] for r in range(4)])
        assert as_golden(z) == golden_det([[pts[i].coords[r] for i in q] for r in range(4)])


def test_rank_matches_field_elimination():
    pts = h4_points()
    rng = random.Random(4)
    for _ in range(400):
        ids = rng.sample(range(60), rng.randint(1, 6))
        assert zrank([pts[i].zcoords for i in ids]) == golden_rank([pts[i].coords for i in ids])
    assert echelon([]) == []


def test_span_forms_cut_out_the_span(table):
    pts = h4_points()
    rng = random.Random(5)
    for r in (1, 2, 3):
        for _ in range(20):
            ids = rng.sample(range(60), r)
            if zrank([pts[i].zcoords for i in ids]) < r:
                continue
            forms = span_forms([pts[i].zcoords for i in ids])
            members = set(np.flatnonzero(table.zero_set(forms)).tolist())
            oracle = {
                j for j in range(60) if golden_rank([pts[i].coords for i in ids] + [pts[j].coords]) == r
            }
            assert members == oracle


def test_quadruples():
    q = quadruples(8)
    assert len(q) == 70
    assert [tuple(x) for x in q] == list(combinations(range(8), 4))
    assert sum(len(quadruples(8, f)) for f in range(8)) == 70
