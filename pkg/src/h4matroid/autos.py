"""Geometric and combinatorial symmetries of M(H4).

The geometric group is generated by reflections in the roots.  The full
automorphism group is found by a backtracking search over point
permutations that preserve the 3- and 5-point lines, pruned by refining
candidate images with pair types; each generator is then certified to
preserve every basis.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from . import group as grp
from .group import Perm, PermGroup
from .matroid import FLAT_CLASSES, H4Matroid
from .roots import PointIndex, reflect
from .zkernel import quadruples

EXPECTED_AUT_ORDER = 14_400
EXPECTED_GEOMETRIC_ORDER = 7_200
EXPECTED_STABILIZER_ORDER = 240


class SearchError(RuntimeError):
    """The automorphism search produced an inconsistent result."""


# -- backtracking search ------------------------------------------------------


@dataclass
class SearchStats:
    nodes: int = 0
    leaves: int = 0
    rejected_leaves: int = 0


class HypergraphSearch:
    """Point permutations preserving a family of point sets.

    ``pair_type[i][j]`` must be an invariant of unordered pairs under every
    permutation preserving the family (the diagonal is ignored).  When
    ``linear`` is set, two points determine at most one member of the
    family and images of a member's remaining points are confined to the
    image member as soon as two of its points are placed.
    """

    def __init__(self, n: int, family: Iterable[Iterable[int]], pair_type: Sequence[Sequence[int]], linear: bool = False) -> None:
        self.n = n
        self.family = {frozenset(e) for e in family}
        self.linear = linear
        self.pair_type = [list(row) for row in pair_type]
        for i in range(n):
            self.pair_type[i][i] = -1
        types = {t for row in self.pair_type for t in row}
        self._mask = [
            {t: sum(1 << q for q in range(n) if self.pair_type[a][q] == t) for t in types} for a in range(n)
        ]
        self._edges_of: list[list[frozenset[int]]] = [[] for _ in range(n)]
        self._edge_mask: dict[frozenset[int], int] = {}
        self._edge_of_pair: dict[tuple[int, int], frozenset[int]] = {}
        for e in self.family:
            self._edge_mask[e] = sum(1 << q for q in e)
            for p in e:
                self._edges_of[p].append(e)
            if linear:
                for a, b in combinations(sorted(e), 2):
                    self._edge_of_pair[(a, b)] = e
        self.stats = SearchStats()

    def _edge_through(self, a: int, b: int) -> frozenset[int] | None:
        return self._edge_of_pair.get((a, b) if a < b else (b, a))

    def _assign(self, img: list[int], dom: list[int], a: int, b: int) -> bool:
        """Map ``a`` to ``b`` and refine; False on contradiction."""
        stack = [(a, b)]
        while stack:
            a, b = stack.pop()
            if img[a] != -1:
                if img[a] != b:
                    return False
                continue
            if not (dom[a] >> b) & 1:
                return False
            img[a] = b
            dom[a] = 1 << b
            row = self.pair_type[a]
            mrow = self._mask[b]
            for p in range(self.n):
                if img[p] != -1:
                    continue
                d = dom[p] & mrow[row[p]]
                if d != dom[p]:
                    if d == 0:
                        return False
                    dom[p] = d
            if self.linear:
                for e in self._edges_of[a]:
                    for c in e:
                        if c != a and img[c] != -1:
                            target = self._edge_through(b, img[c])
                            if target is None or len(target) != len(e):
                                return False
                            m = self._edge_mask[target]
                            for p in e:
                                if img[p] == -1:
                                    d = dom[p] & m
                                    if d == 0:
                                        return False
                                    dom[p] = d
                            break
            for p in range(self.n):
                if img[p] == -1 and dom[p] & (dom[p] - 1) == 0:
                    stack.append((p, dom[p].bit_length() - 1))
        return True

    def is_automorphism(self, perm: Sequence[int]) -> bool:
        return all(frozenset(perm[p] for p in e) in self.family for e in self.family)

    def search(self, prefix: dict[int, int], first_only: bool = False) -> list[Perm]:
        """All family-preserving permutations extending ``prefix``."""
        img = [-1] * self.n
        dom = [(1 << self.n) - 1] * self.n
        for a, b in prefix.items():
            if not self._assign(img, dom, a, b):
                return []
        found: list[Perm] = []
        self._recurse(img, dom, found, first_only)
        return found

    def _recurse(self, img: list[int], dom: list[int], found: list[Perm], first_only: bool) -> bool:
        self.stats.nodes += 1
        free = [p for p in range(self.n) if img[p] == -1]
        if not free:
            self.stats.leaves += 1
            perm = tuple(img)
            if self.is_automorphism(perm):
                found.append(perm)
                return first_only
            self.stats.rejected_leaves += 1
            return False
        p = min(free, key=lambda q: (bin(dom[q]).count("1"), q))
        d = dom[p]
        while d:
            low = d & -d
            b = low.bit_length() - 1
            d ^= low
            img2, dom2 = img[:], dom[:]
            if self._assign(img2, dom2, p, b) and self._recurse(img2, dom2, found, first_only):
                return True
        return False


def generating_subset(elements: Iterable[Perm], degree: int, start: Sequence[Perm] = ()) -> list[Perm]:
    """Greedy: keep each element not already in the group of those kept."""
    gens = list(start)
    g = PermGroup(gens, degree)
    for e in elements:
        if not g.contains(e):
            gens.append(e)
            g = PermGroup(gens, degree)
    return gens[len(start):]


# -- reports -------------------------------------------------------------------


@dataclass
class AutResult:
    group: PermGroup
    generators: list[Perm]
    stabilizer_size: int
    orbit_size: int
    certified: list[bool]
    stats: SearchStats

    @property
    def order(self) -> int:
        return self.group.order()


@dataclass
class StabilizerReport:
    point: int
    order: int
    reflection_central: bool
    restriction_image_order: int
    restriction_kernel: list[Perm]
    kernel_is_reflection: bool
    frame_action_order: int
    equals_plane_stabilizer: bool
    isomorphic_to_s5_x_z2: bool | None = None

    @property
    def ok(self) -> bool:
        return (
            self.order == EXPECTED_STABILIZER_ORDER
            and self.reflection_central
            and self.restriction_image_order == 120
            and self.kernel_is_reflection
            and self.frame_action_order == 120
            and self.equals_plane_stabilizer
            and self.isomorphic_to_s5_x_z2 is not False
        )


@dataclass
class WitnessReport:
    witness: Perm
    in_geometric: bool
    normalized: Perm
    plane_point: int
    frame_permutation: Perm
    frame_parity: int
    kernel_is_geometric: bool
    homomorphism: bool
    coset_cover: bool


@dataclass
class DualityReport:
    vertices: int
    edges: int
    degrees: set[int]
    connected: bool
    swap_is_automorphism: bool
    swap_involution: bool
    adjacency_symmetric: bool
    swap_commutes: bool
    side_preserving_order: int
    side_preserving_equals_aut: bool
    total_order: int
    generators: list[Perm] = field(default_factory=list)


@dataclass
class PencilReport:
    point: int
    lines: list[tuple[int, ...]]
    degrees: list[int]
    connected: bool
    complementary_pairs_pi15: bool
    five_line_pairs_give_pi15s: bool

    @property
    def ok(self) -> bool:
        return (
            len(self.lines) == 10
            and set(self.degrees) == {6}
            and self.connected
            and self.complementary_pairs_pi15
            and self.five_line_pairs_give_pi15s
        )


class Symmetries:
    """Symmetry computations over one matroid instance."""

    def __init__(self, matroid: H4Matroid | None = None) -> None:
        self.m = matroid or H4Matroid()
        self.n = self.m.n
        self._index = PointIndex(self.m.points)

    # -- reflections ----------------------------------------------------

    def reflection_perm(self, r: int) -> Perm:
        x = self.m.points[r].coords
        images = []
        for p in self.m.points:
            j = self._index.lookup(reflect(p.coords, x))
            if j is None:
                raise SearchError(f"reflection in {r} sends point {p.id} outside the ground set")
            images.append(j)
        return grp.check_perm(images)

    @cached_property
    def reflections(self) -> list[Perm]:
        return [self.reflection_perm(r) for r in range(self.n)]

    @cached_property
    def geometric_group(self) -> PermGroup:
        return PermGroup(self.reflections, self.n, base=[0])

    # -- full automorphism group -----------------------------------------

    @cached_property
    def pair_types(self) -> list[list[int]]:
        return [[self.m.pair_type(i, j) if i != j else 0 for j in range(self.n)] for i in range(self.n)]

    def line_search(self) -> HypergraphSearch:
        family = [f.points for c in ("line3", "line5") for f in self.m.flats[c]]
        return HypergraphSearch(self.n, family, self.pair_types, linear=True)

    @cached_property
    def aut(self) -> AutResult:
        return self._automorphisms(self.line_search(), certify=True)

    @property
    def aut_group(self) -> PermGroup:
        return self.aut.group

    def _automorphisms(self, search: HypergraphSearch, certify: bool) -> AutResult:
        stab0 = search.search({0: 0})
        reps = []
        for y in range(self.n):
            hit = search.search({0: y}, first_only=True)
            if hit:
                reps.append(hit[0])
        gens = generating_subset(stab0, self.n)
        gens += generating_subset(reps, self.n, start=gens)
        group = PermGroup(gens, self.n, base=[0])
        if group.order() != len(stab0) * len(reps):
            raise SearchError(
                f"group order {group.order()} != {len(stab0)} * {len(reps)} from exhaustive search"
            )
        certified = [self.preserves_bases(g) for g in gens] if certify else []
        if certify and not all(certified):
            raise SearchError("a line-preserving generator does not preserve bases")
        return AutResult(group, gens, len(stab0), len(reps), certified, search.stats)

    @cached_property
    def _quads(self) -> np.ndarray:
        return quadruples(self.n)

    @cached_property
    def _basis_mask(self) -> np.ndarray:
        return self.m.table.nonsingular(self._quads)

    def preserves_bases(self, g: Perm) -> bool:
        image = np.asarray(g, dtype=np.int64)[self._quads]
        return bool(np.array_equal(self.m.table.nonsingular(image), self._basis_mask))

    def preserves_structure(self, g: Perm) -> dict[str, bool]:
        """Which flat classes and orthoframes ``g`` maps onto themselves."""
        out = {}
        for cls in FLAT_CLASSES:
            sets = {f.points for f in self.m.flats[cls]}
            out[cls] = all(grp.map_set(g, s) in sets for s in sets)
        frames = {f.points for f in self.m.orthoframes}
        out["orthoframes"] = all(grp.map_set(g, s) in frames for s in frames)
        out["bases"] = self.preserves_bases(g)
        return out

    # -- stabilizers ------------------------------------------------------

    @cached_property
    def elements(self) -> list[Perm]:
        return list(self.aut_group.elements())

    @cached_property
    def _stabilizers(self) -> dict[int, list[Perm]]:
        out: dict[int, list[Perm]] = {x: [] for x in range(self.n)}
        for g in self.elements:
            for x in grp.fixed_points(g):
                out[x].append(g)
        return out

    def stabilizer_elements(self, x: int) -> list[Perm]:
        return self._stabilizers[x]

    def stabilizer(self, x: int, with_table: bool = False) -> StabilizerReport:
        elems = self.stabilizer_elements(x)
        plane = self.m.orthoplanes[x]
        rx = self.reflections[x]
        gens = generating_subset(elems, self.n)

        central = all(grp.compose(rx, g) == grp.compose(g, rx) for g in gens)
        restricted = {tuple(g[p] for p in plane.points) for g in elems}
        kernel = [g for g in elems if all(g[p] == p for p in plane.points)]
        ident = grp.identity(self.n)
        frames = self._plane_frames(x)
        frame_images = {self._frame_permutation(g, frames) for g in elems}

        plane_orbit = grp.orbit(self.aut.generators, plane.points, grp.set_action)
        equals_plane_stab = (
            all(grp.map_set(g, plane.points) == plane.points for g in gens)
            and len(plane_orbit) * len(elems) == self.aut.order
        )
        report = StabilizerReport(
            point=x,
            order=len(elems),
            reflection_central=central,
            restriction_image_order=len(restricted),
            restriction_kernel=kernel,
            kernel_is_reflection=sorted(kernel) == sorted({ident, rx}),
            frame_action_order=len(frame_images),
            equals_plane_stabilizer=equals_plane_stab,
        )
        if with_table:
            report.isomorphic_to_s5_x_z2 = grp.isomorphic(grp.multiplication_table(elems), s5_x_z2_table())
        return report

    def _plane_frames(self, x: int) -> list[frozenset[int]]:
        """The five orthoframes through ``x`` with ``x`` removed."""
        return [frozenset(f.points) - {x} for f in self.m.frames_through(x)]

    @staticmethod
    def _frame_permutation(g: Perm, frames: list[frozenset[int]]) -> Perm:
        index = {f: i for i, f in enumerate(frames)}
        return tuple(index[frozenset(g[p] for p in f)] for f in frames)

    # -- transitivity and primitivity ---------------------------------------

    def intersecting_pairs(self, cls: str) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
        out = set()
        for p in range(self.n):
            for a, b in combinations(self.m.containing[p][cls], 2):
                out.add(tuple(sorted((a.points, b.points))))
        return sorted(out)

    def transitivity_report(self) -> dict[str, int | dict]:
        gens = self.aut.generators
        out: dict[str, int | dict] = {}
        for cls in FLAT_CLASSES:
            out[cls] = len(grp.orbits(gens, [f.points for f in self.m.flats[cls]]))
        out["orthoframes"] = len(grp.orbits(gens, [f.points for f in self.m.orthoframes]))

        def pair_action(g: Perm, pair):
            return tuple(sorted(grp.map_set(g, s) for s in pair))

        for cls in ("line3", "line5"):
            pairs = self.intersecting_pairs(cls)
            orbs = grp.orbits(gens, pairs, pair_action)
            out[f"intersecting_{cls}_pairs"] = len(orbs)
            kinds = [sorted({self.m.closure(a + b).cls for a, b in orb}) for orb in orbs]
            out[f"intersecting_{cls}_pair_spans"] = {
                "orbit_sizes": sorted(len(o) for o in orbs),
                "spans": kinds,
            }
        return out

    def primitivity_check(self) -> dict:
        blocks = grp.minimal_blocks(self.aut.generators)
        pencil_sizes = sorted({1 + a + b for a in (0, 20) for b in (0, 12, 24)})
        divisors = [d for d in range(1, self.n + 1) if self.n % d == 0]

        x = 0
        plane = self.m.orthoplanes[x]
        local = {p: i for i, p in enumerate(plane.points)}
        restricted = []
        for g in generating_subset(self.stabilizer_elements(x), self.n):
            restricted.append(tuple(local[g[p]] for p in plane.points))
        sub_blocks = grp.minimal_blocks(restricted)
        frames = sorted(sorted(local[p] for p in f) for f in self._plane_frames(x))
        nontrivial = [s for s in sub_blocks.systems if 1 < len(s) < len(plane)]

        stab_gens = generating_subset(self.stabilizer_elements(0), self.n)
        transversal = self.aut_group.transversal(0)
        maximal = all(
            len(grp.orbit(stab_gens + [transversal[y]], 0)) == self.n for y in range(1, self.n)
        )
        return {
            "primitive": blocks.primitive,
            "block_systems": len(blocks.systems),
            "candidate_block_sizes": pencil_sizes,
            "sizes_dividing_degree": [s for s in pencil_sizes if s in divisors],
            "stabilizer_maximal": maximal,
            "plane_action_primitive": sub_blocks.primitive,
            "plane_block_systems": [[len(s), len(s[0])] for s in nontrivial],
            "plane_blocks_are_frames": nontrivial == [frames],
        }

    # -- geometric vs non-geometric ------------------------------------------

    def frame_parity(self, g: Perm) -> int:
        """Parity of the frame permutation of ``h^-1 g`` on P_0, h geometric with h(0) = g(0)."""
        h = self.geometric_group.transversal(0)[g[0]]
        t = grp.compose(grp.inverse(h), g)
        return grp.parity(self._frame_permutation(t, self._plane_frames(0)))

    def nongeometric_witness(self) -> WitnessReport:
        geo = self.geometric_group
        witness = next((g for g in self.aut.generators if not geo.contains(g)), None)
        if witness is None:
            raise SearchError("every automorphism generator is geometric")
        h = geo.transversal(0)[witness[0]]
        normalized = grp.compose(grp.inverse(h), witness)
        frames = self._plane_frames(0)
        fperm = self._frame_permutation(normalized, frames)

        kernel_ok = all((self.frame_parity(g) == 0) == geo.contains(g) for g in self.elements)
        gens = self.aut.generators
        hom = all(
            self.frame_parity(grp.compose(a, b)) == (self.frame_parity(a) + self.frame_parity(b)) % 2
            for a in gens + [witness]
            for b in gens + [witness]
        )
        cover = (
            all(self.aut_group.contains(r) for r in self.reflections)
            and 2 * geo.order() == self.aut.order
            and not geo.contains(witness)
        )
        return WitnessReport(
            witness=witness,
            in_geometric=geo.contains(witness),
            normalized=normalized,
            plane_point=0,
            frame_permutation=fperm,
            frame_parity=grp.parity(fperm),
            kernel_is_geometric=kernel_ok,
            homomorphism=hom,
            coset_cover=cover,
        )

    # -- point/plane duality -------------------------------------------------

    def duality_graph(self) -> tuple[list[tuple[int, int]], Perm]:
        """Edges (point, 60 + plane index) and the point/orthoplane swap."""
        planes = self.m.flats["pi15"]
        pindex = {f.points: j for j, f in enumerate(planes)}
        edges = [(x, self.n + j) for j, f in enumerate(planes) for x in f.points]
        swap = [0] * (self.n + len(planes))
        for x in range(self.n):
            j = pindex[self.m.orthoplanes[x].points]
            swap[x] = self.n + j
            swap[self.n + j] = x
        return sorted(edges), tuple(swap)

    def induced_on_graph(self, g: Perm) -> Perm:
        planes = self.m.flats["pi15"]
        pindex = {f.points: j for j, f in enumerate(planes)}
        out = list(g) + [0] * len(planes)
        for j, f in enumerate(planes):
            out[self.n + j] = self.n + pindex[grp.map_set(g, f.points)]
        return tuple(out)

    def duality_graph_aut(self) -> DualityReport:
        edges, swap = self.duality_graph()
        nv = len(swap)
        edge_set = set(edges)
        adj: list[set[int]] = [set() for _ in range(nv)]
        for a, b in edges:
            adj[a].add(b)
            adj[b].add(a)

        def is_graph_aut(p: Perm) -> bool:
            return all(tuple(sorted((p[a], p[b]))) in edge_set for a, b in edges)

        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)

        orth = self.m.orthoplanes
        symmetric = all((x in orth[y]) == (y in orth[x]) for x in range(self.n) for y in range(self.n))
        commutes = all(
            grp.compose(self.induced_on_graph(g), swap) == grp.compose(swap, self.induced_on_graph(g))
            for g in self.aut.generators
        )

        # side-preserving automorphisms are point permutations preserving the plane family
        family = [f.points for f in self.m.flats["pi15"]]
        pair_count = [[0] * self.n for _ in range(self.n)]
        for f in family:
            for a, b in combinations(f, 2):
                pair_count[a][b] += 1
                pair_count[b][a] += 1
        side = self._automorphisms(HypergraphSearch(self.n, family, pair_count), certify=False)
        same = all(self.aut_group.contains(g) for g in side.generators) and all(
            side.group.contains(g) for g in self.aut.generators
        )
        side_ok = all(is_graph_aut(self.induced_on_graph(g)) for g in side.generators)
        swap_aut = is_graph_aut(swap)
        connected = len(seen) == nv
        total = side.order * 2 if (swap_aut and connected and side_ok) else side.order
        return DualityReport(
            vertices=nv,
            edges=len(edges),
            degrees={len(a) for a in adj},
            connected=connected,
            swap_is_automorphism=swap_aut,
            swap_involution=grp.is_identity(grp.compose(swap, swap)),
            adjacency_symmetric=symmetric,
            swap_commutes=commutes,
            side_preserving_order=side.order,
            side_preserving_equals_aut=same and side_ok,
            total_order=total,
            generators=side.generators,
        )

    def duality_commutes(self, g: Perm, x: int) -> bool:
        """P_{g(x)} == g(P_x)."""
        return self.m.orthoplanes[g[x]].points == grp.map_set(g, self.m.orthoplanes[x].points)

    # -- pencils ----------------------------------------------------------------

    def pencil_graph(self, x: int) -> PencilReport:
        lines = [f.points for f in self.m.containing[x]["line3"]]
        k = len(lines)
        span = {}
        for i, j in combinations(range(k), 2):
            span[(i, j)] = self.m.closure(lines[i] + lines[j]).cls
        adj = {i: {j for j in range(k) if j != i and span[tuple(sorted((i, j)))] == "pi6"} for i in range(k)}
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for w in adj[v] - seen:
                seen.add(w)
                stack.append(w)
        comp_ok = all(
            span[tuple(sorted((i, j)))] == "pi15" for i in range(k) for j in range(k) if i != j and j not in adj[i]
        )
        fives = [f.points for f in self.m.containing[x]["line5"]]
        spans5 = {self.m.closure(a + b) for a, b in combinations(fives, 2)}
        through_x = {f for f in self.m.containing[x]["pi15"]}
        return PencilReport(
            point=x,
            lines=lines,
            degrees=[len(adj[i]) for i in range(k)],
            connected=len(seen) == k,
            complementary_pairs_pi15=comp_ok,
            five_line_pairs_give_pi15s=len(spans5) == 15 and spans5 == through_x,
        )


def s5_x_z2_table() -> list[list[int]]:
    s5 = grp.symmetric_group_elements(5)
    return grp.direct_product_table(grp.multiplication_table(s5), grp.cyclic_table(2))


def row_swap_perm(m: H4Matroid, swap: Sequence[int]) -> Perm | None:
    """Point permutation induced by permuting coordinates, if any."""
    index = PointIndex(m.points)
    images = []
    for p in m.points:
        j = index.lookup([p.coords[swap[i]] for i in range(4)])
        if j is None:
            return None
        images.append(j)
    return tuple(images)
