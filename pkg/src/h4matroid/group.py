"""Permutation groups: composition, stabilizer chains, orbits, blocks.

Permutations are tuples of images, ``p[i]`` being the image of ``i``.
Products compose right to left: ``compose(p, q)[i] == p[q[i]]``.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Iterator, Sequence

Perm = tuple[int, ...]


def identity(n: int) -> Perm:
    return tuple(range(n))


def is_identity(p: Perm) -> bool:
    return all(i == x for i, x in enumerate(p))


def check_perm(p: Sequence[int]) -> Perm:
    if sorted(p) != list(range(len(p))):
        raise ValueError("not a permutation")
    return tuple(p)


def compose(p: Perm, q: Perm) -> Perm:
    return tuple(p[i] for i in q)


def inverse(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def power(p: Perm, k: int) -> Perm:
    result = identity(len(p))
    base = p if k >= 0 else inverse(p)
    k = abs(k)
    while k:
        if k & 1:
            result = compose(base, result)
        base = compose(base, base)
        k >>= 1
    return result


def cycles(p: Perm) -> list[tuple[int, ...]]:
    seen = set()
    out = []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        cyc = [i]
        seen.add(i)
        j = p[i]
        while j != i:
            cyc.append(j)
            seen.add(j)
            j = p[j]
        out.append(tuple(cyc))
    return out


def order(p: Perm) -> int:
    from math import lcm

    result = 1
    for c in cycles(p):
        result = lcm(result, len(c))
    return result


def parity(p: Perm) -> int:
    """0 for even permutations, 1 for odd."""
    return sum(len(c) - 1 for c in cycles(p)) % 2


def fixed_points(p: Perm) -> list[int]:
    return [i for i, x in enumerate(p) if i == x]


def fmt_perm(p: Perm) -> str:
    cs = cycles(p)
    return "".join("(" + " ".join(map(str, c)) + ")" for c in cs) or "()"


def map_set(p: Perm, s: Iterable[int]) -> tuple[int, ...]:
    return tuple(sorted(p[i] for i in s))


@dataclass
class _Level:
    point: int
    gens: list[Perm] = field(default_factory=list)
    # orbit point -> transversal element u with u[point] == orbit point
    transversal: dict[int, Perm] = field(default_factory=dict)


class PermGroup:
    """A permutation group stored as a stabilizer chain.

    Built by deterministic Schreier-Sims; new base points are the smallest
    points moved by the element that needs them.  ``base`` fixes a prefix of
    the base, which makes the first levels' stabilizers available directly.
    """

    def __init__(self, gens: Iterable[Sequence[int]], degree: int | None = None, base: Sequence[int] = ()) -> None:
        gens = [check_perm(g) for g in gens]
        if degree is None:
            if not gens:
                raise ValueError("degree is required for a group without generators")
            degree = len(gens[0])
        self.degree = degree
        self._id = identity(degree)
        self.generators = [g for g in gens if not is_identity(g)]
        self._levels: list[_Level] = []
        for b in base:
            self._new_level(b)
        for g in self.generators:
            self._extend(0, g)

    def _new_level(self, point: int) -> _Level:
        lvl = _Level(point, [], {point: self._id})
        self._levels.append(lvl)
        return lvl

    def _sift(self, g: Perm, start: int = 0) -> tuple[Perm, int]:
        """Strip ``g`` through levels ``start..``; returns residue and level reached."""
        for i in range(start, len(self._levels)):
            lvl = self._levels[i]
            img = g[lvl.point]
            u = lvl.transversal.get(img)
            if u is None:
                return g, i
            g = compose(inverse(u), g)
        return g, len(self._levels)

    def _extend(self, i: int, g: Perm) -> None:
        residue, _ = self._sift(g, i)
        if is_identity(residue):
            return
        if i == len(self._levels):
            moved = next(k for k, x in enumerate(g) if k != x)
            self._new_level(moved)
        lvl = self._levels[i]
        old = dict(lvl.transversal)
        lvl.gens.append(g)
        # grow the orbit
        queue = deque(lvl.transversal)
        while queue:
            p = queue.popleft()
            u = lvl.transversal[p]
            for s in lvl.gens:
                q = s[p]
                if q not in lvl.transversal:
                    lvl.transversal[q] = compose(s, u)
                    queue.append(q)
        # Schreier generators not already processed
        for p, u in list(lvl.transversal.items()):
            for s in list(lvl.gens):
                if p in old and s is not g:
                    continue
                q = s[p]
                sg = compose(inverse(lvl.transversal[q]), compose(s, u))
                if not is_identity(sg):
                    self._extend(i + 1, sg)

    # -- queries ----------------------------------------------------------

    @property
    def base(self) -> list[int]:
        return [lvl.point for lvl in self._levels]

    @property
    def strong_generators(self) -> list[Perm]:
        out: list[Perm] = []
        for lvl in self._levels:
            for g in lvl.gens:
                if g not in out:
                    out.append(g)
        return out

    def orbit_lengths(self) -> list[int]:
        return [len(lvl.transversal) for lvl in self._levels]

    def order(self) -> int:
        result = 1
        for n in self.orbit_lengths():
            result *= n
        return result

    def __len__(self) -> int:
        return self.order()

    def contains(self, g: Sequence[int]) -> bool:
        g = tuple(g)
        if len(g) != self.degree:
            return False
        residue, _ = self._sift(g)
        return is_identity(residue)

    __contains__ = contains

    def stabilizer_chain_group(self, depth: int) -> PermGroup:
        """The pointwise stabilizer of the first ``depth`` base points."""
        gens = [g for lvl in self._levels[depth:] for g in lvl.gens]
        return PermGroup(gens, self.degree, self.base[depth:])

    def stabilizer(self, point: int) -> PermGroup:
        """Point stabilizer, via a chain rebuilt with ``point`` first."""
        if self._levels and self._levels[0].point == point:
            return self.stabilizer_chain_group(1)
        g = PermGroup(self.generators, self.degree, base=[point])
        return g.stabilizer_chain_group(1)

    def transversal(self, level: int = 0) -> dict[int, Perm]:
        return dict(self._levels[level].transversal)

    def elements(self) -> Iterator[Perm]:
        """Every element, as products of transversal representatives."""

        def rec(i: int, acc: Perm) -> Iterator[Perm]:
            if i < 0:
                yield acc
                return
            for u in self._levels[i].transversal.values():
                yield from rec(i - 1, compose(u, acc))

        yield from rec(len(self._levels) - 1, self._id)

    def random_element(self, rng) -> Perm:
        acc = self._id
        for lvl in reversed(self._levels):
            pts = sorted(lvl.transversal)
            acc = compose(lvl.transversal[rng.choice(pts)], acc)
        return acc

    def is_transitive(self) -> bool:
        return len(orbit(self.generators or [self._id], 0)) == self.degree


def generate(gens: Iterable[Sequence[int]], degree: int | None = None) -> PermGroup:
    return PermGroup(gens, degree)


# -- orbits under arbitrary actions -------------------------------------------


def point_action(p: Perm, x: int) -> int:
    return p[x]


def set_action(p: Perm, s: tuple[int, ...]) -> tuple[int, ...]:
    return map_set(p, s)


def orbit(
    gens: Sequence[Perm],
    seed: Hashable,
    action: Callable[[Perm, Hashable], Hashable] = point_action,
    *,
    witnesses: bool = False,
) -> dict:
    """Orbit of ``seed``; values are transversal elements when ``witnesses``.

    With witnesses, ``action(orbit[y], seed) == y`` for every orbit element.
    """
    if not gens:
        return {seed: None}
    n = len(gens[0])
    out: dict = {seed: identity(n) if witnesses else None}
    queue = deque([seed])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = action(g, x)
            if y not in out:
                out[y] = compose(g, out[x]) if witnesses else None
                queue.append(y)
    return out


def orbits(gens: Sequence[Perm], items: Iterable[Hashable], action=set_action) -> list[list]:
    """Partition ``items`` into orbits (union-find over generator images)."""
    items = list(items)
    index = {x: i for i, x in enumerate(items)}
    parent = list(range(len(items)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, x in enumerate(items):
        for g in gens:
            y = action(g, x)
            j = index.get(y)
            if j is None:
                raise ValueError(f"image {y!r} of {x!r} is outside the item set")
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)
    groups: dict[int, list] = {}
    for i, x in enumerate(items):
        groups.setdefault(find(i), []).append(x)
    return list(groups.values())


# -- blocks ------------------------------------------------------------------


def minimal_block_system(gens: Sequence[Perm], a: int, b: int) -> list[list[int]]:
    """The finest block system in which ``a`` and ``b`` share a block."""
    n = len(gens[0])
    parent = list(range(n))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    queue = deque()

    def union(x: int, y: int) -> None:
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[max(rx, ry)] = min(rx, ry)
            queue.append((x, y))

    union(a, b)
    while queue:
        x, y = queue.popleft()
        for g in gens:
            union(g[x], g[y])
    blocks: dict[int, list[int]] = {}
    for i in range(n):
        blocks.setdefault(find(i), []).append(i)
    return sorted(blocks.values())


@dataclass
class BlockReport:
    primitive: bool
    systems: list[list[list[int]]]

    def block_sizes(self) -> list[int]:
        return sorted({len(s[0]) for s in self.systems})


def minimal_blocks(group: PermGroup | Sequence[Perm]) -> BlockReport:
    """Minimal block systems containing ``{0, y}`` for each ``y``.

    The action must be transitive.  It is primitive exactly when every one of
    these systems is the single block of all points.
    """
    gens = list(group.generators) if isinstance(group, PermGroup) else list(group)
    n = len(gens[0])
    if len(orbit(gens, 0)) != n:
        raise ValueError("block systems are only defined here for transitive actions")
    systems = []
    seen = set()
    for y in range(1, n):
        sys_ = minimal_block_system(gens, 0, y)
        key = tuple(map(tuple, sys_))
        if key not in seen:
            seen.add(key)
            systems.append(sys_)
    primitive = all(len(s) == 1 for s in systems)
    return BlockReport(primitive, systems)


# -- finite groups given by multiplication tables ---------------------------


Table = Sequence[Sequence[int]]


def multiplication_table(elements: Sequence[Perm]) -> list[list[int]]:
    index = {g: i for i, g in enumerate(elements)}
    return [[index[compose(g, h)] for h in elements] for g in elements]


def _table_identity(t: Table) -> int:
    n = len(t)
    for e in range(n):
        if all(t[e][x] == x for x in range(n)):
            return e
    raise ValueError("table has no identity")


def element_orders(t: Table) -> list[int]:
    e = _table_identity(t)
    out = []
    for x in range(len(t)):
        k, y = 1, x
        while y != e:
            y = t[y][x]
            k += 1
        out.append(k)
    return out


def _generated(t: Table, gens: Sequence[int]) -> list[int]:
    e = _table_identity(t)
    seen = {e}
    queue = deque([e])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = t[x][g]
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return sorted(seen)


def _small_generating_set(t: Table, orders: list[int]) -> list[int]:
    n = len(t)
    gens: list[int] = []
    span = {_table_identity(t)}
    by_order = sorted(range(n), key=lambda x: (-orders[x], x))
    while len(span) < n:
        best = None
        for x in by_order:
            if x in span:
                continue
            size = len(_generated(t, gens + [x]))
            if best is None or size > best[0]:
                best = (size, x)
            if size == n:
                break
        gens.append(best[1])
        span = set(_generated(t, gens))
    return gens


def isomorphic(ta: Table, tb: Table) -> bool:
    """Decide whether two groups given by multiplication tables are isomorphic.

    Backtracks over images of a small generating set of the first group,
    pruned by element orders, and checks each candidate map is a
    homomorphism onto the second group.
    """
    n = len(ta)
    if n != len(tb):
        return False
    if n > 240:
        raise ValueError("isomorphism test is limited to groups of order <= 240")
    oa, ob = element_orders(ta), element_orders(tb)
    if Counter(oa) != Counter(ob):
        return False
    gens = _small_generating_set(ta, oa)
    ea, eb = _table_identity(ta), _table_identity(tb)

    def extend(images: list[int]) -> bool:
        # breadth-first words in the generators define the map
        phi = {ea: eb}
        queue = deque([ea])
        while queue:
            x = queue.popleft()
            for g, h in zip(gens, images):
                y = ta[x][g]
                z = tb[phi[x]][h]
                if y in phi:
                    if phi[y] != z:
                        return False
                else:
                    phi[y] = z
                    queue.append(y)
        if len(set(phi.values())) != n:
            return False
        return all(phi[ta[x][y]] == tb[phi[x]][phi[y]] for x in range(n) for y in range(n))

    def search(k: int, images: list[int]) -> bool:
        if k == len(gens):
            return extend(images)
        for cand in range(n):
            if ob[cand] != oa[gens[k]]:
                continue
            if search(k + 1, images + [cand]):
                return True
        return False

    return search(0, [])


def cyclic_table(n: int) -> list[list[int]]:
    return [[(i + j) % n for j in range(n)] for i in range(n)]


def direct_product_table(ta: Table, tb: Table) -> list[list[int]]:
    na, nb = len(ta), len(tb)
    return [
        [ta[i // nb][j // nb] * nb + tb[i % nb][j % nb] for j in range(na * nb)]
        for i in range(na * nb)
    ]


def symmetric_group_elements(k: int) -> list[Perm]:
    from itertools import permutations

    return [tuple(p) for p in permutations(range(k))]
