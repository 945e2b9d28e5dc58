from h4matroid import group as grp
from h4matroid.autos import HypergraphSearch, row_swap_perm

FANO = [(0, 1, 2), (0, 3, 4), (0, 5, 6), (1, 3, 5), (1, 4, 6), (2, 3, 6), (2, 4, 5)]


def test_search_finds_fano_automorphisms():
    pair_type = [[1] * 7 for _ in range(7)]
    search = HypergraphSearch(7, FANO, pair_type, linear=True)
    autos = search.search({})
    assert len(autos) == 168
    assert all(search.is_automorphism(g) for g in autos)
    assert grp.PermGroup(autos).order() == 168
    assert not search.is_automorphism((1, 0, 2, 3, 4, 5, 6))


def test_search_respects_prefix():
    pair_type = [[1] * 7 for _ in range(7)]
    search = HypergraphSearch(7, FANO, pair_type, linear=True)
    fixing = search.search({0: 0, 1: 1})
    assert len(fixing) == 168 // 7 // 6
    assert all(g[0] == 0 and g[1] == 1 for g in fixing)


def test_group_orders(sym):
    assert sym.geometric_group.order() == 7200
    assert sym.aut.order == 14_400
    assert all(sym.aut.certified)
    assert all(sym.preserves_bases(g) for g in sym.aut.generators)
    assert len(sym.elements) == 14_400


def test_geometric_group_sits_inside(sym):
    assert all(sym.aut_group.contains(r) for r in sym.reflections)


def test_reflections(sym, m):
    for x, r in enumerate(sym.reflections):
        assert grp.is_identity(grp.compose(r, r))
        assert set(grp.fixed_points(r)) == {x, *m.orthoplanes[x].points}


def test_point_stabilizer(sym):
    r = sym.stabilizer(0, with_table=True)
    assert r.ok
    assert r.order == 240
    assert r.isomorphic_to_s5_x_z2
    assert len(r.restriction_kernel) == 2


def test_stabilizers_everywhere(sym):
    assert all(sym.stabilizer(x).ok for x in range(60))


def test_transitivity(sym):
    r = sym.transitivity_report()
    for cls in ("point", "line2", "line3", "line5", "pi3", "pi5", "pi6", "pi15", "orthoframes"):
        assert r[cls] == 1, cls
    assert r["intersecting_line3_pairs"] == 2
    assert r["intersecting_line5_pairs"] == 1


def test_primitivity(sym):
    r = sym.primitivity_check()
    assert r["primitive"] and r["stabilizer_maximal"]
    assert not r["plane_action_primitive"]
    assert r["plane_block_systems"] == [[5, 3]]
    assert r["plane_blocks_are_frames"]


def test_nongeometric_witness(sym):
    w = sym.nongeometric_witness()
    assert not w.in_geometric
    assert w.frame_parity == 1
    assert w.kernel_is_geometric and w.homomorphism and w.coset_cover
    assert all(sym.frame_parity(r) == 0 for r in sym.reflections[:10])


def test_duality_graph(sym):
    d = sym.duality_graph_aut()
    assert d.vertices == 120 and d.degrees == {15} and d.connected
    assert d.swap_is_automorphism and d.swap_involution and d.swap_commutes
    assert d.side_preserving_order == 14_400 and d.total_order == 28_800


def test_duality_commutes(sym):
    for g in sym.aut.generators:
        assert all(sym.duality_commutes(g, x) for x in range(60))


def test_pencil_graphs(sym):
    for x in (0, 17, 59):
        r = sym.pencil_graph(x)
        assert r.ok and len(r.lines) == 10 and set(r.degrees) == {6}


def test_row_swap_is_an_automorphism(sym, m):
    g = row_swap_perm(m, (2, 3, 0, 1))
    assert g is not None
    assert sym.line_search().is_automorphism(g)
    assert sym.preserves_bases(g)


def test_non_automorphism_is_rejected(sym, m):
    g = list(range(60))
    line = m.flats["line3"][0].points
    other = next(p for p in range(60) if p not in line and m.rank([*line[:2], p]) == 3)
    g[line[2]], g[other] = g[other], g[line[2]]
    assert not sym.line_search().is_automorphism(tuple(g))
    assert tuple(g) not in sym.aut_group


def test_aut_preserves_every_flat_class(sym, m):
    for g in sym.aut.generators:
        for cls in ("pi6", "pi15", "line5"):
            family = {f.points for f in m.flats[cls]}
            assert all(grp.map_set(g, f) in family for f in family)
        assert all(v for v in sym.preserves_structure(g).values())


def test_intersecting_pairs(sym):
    assert len(sym.intersecting_pairs("line3")) == 2700
    for a, b in sym.intersecting_pairs("line5")[:20]:
        assert len(set(a) & set(b)) == 1
