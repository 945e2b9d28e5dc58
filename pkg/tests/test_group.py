import random

import pytest

from h4matroid import group as grp
from h4matroid.group import PermGroup


def cyc(n, *cycle):
    p = list(range(n))
    for a, b in zip(cycle, cycle[1:] + cycle[:1]):
        p[a] = b
    return tuple(p)


def test_perm_helpers():
    p = cyc(5, 0, 1, 2)
    q = cyc(5, 3, 4)
    assert grp.compose(p, grp.inverse(p)) == grp.identity(5)
    assert grp.compose(p, q)[3] == p[q[3]]
    assert grp.order(grp.compose(p, q)) == 6
    assert grp.parity(p) == 0 and grp.parity(q) == 1
    assert grp.cycles(p) == [(0, 1, 2)]
    assert grp.fixed_points(p) == [3, 4]
    assert grp.power(p, 3) == grp.identity(5)
    assert grp.power(p, -1) == grp.inverse(p)
    with pytest.raises(ValueError):
        grp.check_perm((0, 0, 1))


@pytest.mark.parametrize(
    "gens, degree, order",
    [
        ([cyc(5, 0, 1, 2, 3, 4), cyc(5, 0, 1)], 5, 120),
        ([cyc(5, 0, 1, 2), cyc(5, 2, 3, 4)], 5, 60),
        ([cyc(8, 0, 1, 2, 3, 4, 5, 6, 7), (0, 7, 6, 5, 4, 3, 2, 1)], 8, 16),
        ([cyc(7, 0, 1, 2, 3, 4, 5, 6), cyc(7, 0, 1)], 7, 5040),
        ([], 4, 1),
    ],
)
def test_orders(gens, degree, order):
    g = PermGroup(gens, degree)
    assert g.order() == order
    if order <= 5040:
        assert len(set(g.elements())) == order


def test_membership():
    a5 = PermGroup([cyc(5, 0, 1, 2), cyc(5, 2, 3, 4)])
    assert cyc(5, 0, 1, 2, 3, 4) in a5
    assert cyc(5, 0, 1) not in a5
    assert a5.stabilizer(0).order() == 12
    for pt, u in a5.transversal(0).items():
        assert u[a5.base[0]] == pt


def test_random_elements_are_members():
    s6 = PermGroup([cyc(6, 0, 1, 2, 3, 4, 5), cyc(6, 0, 1)])
    rng = random.Random(0)
    assert all(s6.random_element(rng) in s6 for _ in range(50))


def test_symmetric_group_is_primitive():
    assert grp.minimal_blocks([cyc(6, 0, 1, 2, 3, 4, 5), cyc(6, 0, 1)]).primitive


def test_regular_cyclic_group_of_order_60_is_imprimitive():
    r = grp.minimal_blocks([cyc(60, *range(60))])
    assert not r.primitive
    # the block through {0, y} is the subgroup generated by y
    assert r.block_sizes() == [d for d in range(2, 61) if 60 % d == 0]


def test_dihedral_square_blocks():
    # symmetries of a square: {0,2} and {1,3} form blocks
    r = grp.minimal_blocks([cyc(4, 0, 1, 2, 3), (0, 3, 2, 1)])
    assert not r.primitive
    assert [[0, 2], [1, 3]] in [sorted(map(sorted, s)) for s in r.systems]


def test_table_isomorphism():
    s5 = grp.symmetric_group_elements(5)
    assert len(s5) == 120
    t = grp.direct_product_table(grp.multiplication_table(s5), grp.cyclic_table(2))
    assert grp.isomorphic(t, t)
    # shuffle the element labels
    rng = random.Random(7)
    perm = list(range(240))
    rng.shuffle(perm)
    inv = {v: k for k, v in enumerate(perm)}
    shuffled = [[perm[t[inv[i]][inv[j]]] for j in range(240)] for i in range(240)]
    assert grp.isomorphic(shuffled, t)
    assert not grp.isomorphic(grp.cyclic_table(240), t)
    # same order, same element-order multiset is not enough: Z4 x Z2 vs D4
    d4 = grp.multiplication_table(list(PermGroup([cyc(4, 0, 1, 2, 3), (0, 3, 2, 1)]).elements()))
    z4z2 = grp.direct_product_table(grp.cyclic_table(4), grp.cyclic_table(2))
    assert not grp.isomorphic(d4, z4z2)


def test_isomorphism_rejects_large_tables():
    with pytest.raises(ValueError):
        grp.isomorphic(grp.cyclic_table(241), grp.cyclic_table(241))


def test_orbits():
    gens = [cyc(6, 0, 1, 2), cyc(6, 3, 4)]
    orbs = grp.orbits(gens, range(6), grp.point_action)
    assert sorted(map(sorted, orbs)) == [[0, 1, 2], [3, 4], [5]]
    assert sorted(grp.orbit(gens, 3, grp.point_action)) == [3, 4]
