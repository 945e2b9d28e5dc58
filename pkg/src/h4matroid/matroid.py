"""Rank oracle, flats, bases and orthoframes of M(H4)."""

from __future__ import annotations

from collections import Counter, defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .roots import RootPoint, dot, h4_points
from .zkernel import ZTable, quadruples, zrank

# flat class tags, in table order
LINE_CLASSES = ("line2", "line3", "line5")
PLANE_CLASSES = ("pi3", "pi5", "pi6", "pi15")
FLAT_CLASSES = ("point",) + LINE_CLASSES + PLANE_CLASSES

DISPLAY = {
    "point": "points",
    "line2": "2-pt lines",
    "line3": "3-pt lines",
    "line5": "5-pt lines",
    "pi3": "Π3",
    "pi5": "Π5",
    "pi6": "Π6",
    "pi15": "Π15",
}

EXPECTED_COUNTS = {
    "point": 60,
    "line2": 450,
    "line3": 200,
    "line5": 72,
    "pi3": 600,
    "pi5": 360,
    "pi6": 300,
    "pi15": 60,
}

# number of flats of the column kind containing one flat of the row kind;
# pi3/pi5 entries for points count apex incidences only
EXPECTED_INCIDENCE = {
    "point": {"line2": 15, "line3": 10, "line5": 6, "pi3": 10, "pi5": 6, "pi6": 30, "pi15": 15},
    "line2": {"line2": 1, "line3": 0, "line5": 0, "pi3": 4, "pi5": 4, "pi6": 2, "pi15": 2},
    "line3": {"line2": 0, "line3": 1, "line5": 0, "pi3": 3, "pi5": 0, "pi6": 6, "pi15": 3},
    "line5": {"line2": 0, "line3": 0, "line5": 1, "pi3": 0, "pi5": 5, "pi6": 0, "pi15": 5},
}

EXPECTED_BASES = 398_475
EXPECTED_ORTHOFRAMES = 75


class ClassificationError(ValueError):
    """A flat does not match any of the known flat classes."""


@dataclass(frozen=True, order=True)
class Flat:
    points: tuple[int, ...]
    rank: int
    cls: str

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, p: object) -> bool:
        return p in self.pointset

    @cached_property
    def pointset(self) -> frozenset[int]:
        return frozenset(self.points)


@dataclass(frozen=True, order=True)
class Orthoframe:
    points: tuple[int, int, int, int]


@dataclass
class FlatLists:
    """All flats of rank 1-3, grouped by class, each list sorted."""

    by_class: dict[str, list[Flat]]

    def __getitem__(self, cls: str) -> list[Flat]:
        return self.by_class[cls]

    def counts(self) -> dict[str, int]:
        return {c: len(self.by_class[c]) for c in FLAT_CLASSES}

    def as_sets(self) -> dict[str, set[tuple[int, ...]]]:
        return {c: {f.points for f in self.by_class[c]} for c in FLAT_CLASSES}


@dataclass
class IncidenceTable:
    """Observed incidence counts; ``values[row][col]`` is the set of counts seen."""

    values: dict[str, dict[str, set[int]]]
    apex_total: dict[str, set[int]]
    deviations: list[tuple[str, str, tuple[int, ...], int, int]] = field(default_factory=list)

    def uniform(self, row: str, col: str) -> int | None:
        vals = self.values[row][col]
        return next(iter(vals)) if len(vals) == 1 else None

    @property
    def ok(self) -> bool:
        return not self.deviations


@dataclass
class CoveringReport:
    flat: Flat
    cover_counts: dict[str, int]
    residual: int
    partitioned: bool


@dataclass
class Census:
    counts: dict[str, int]
    incidence: IncidenceTable
    bases: int
    orthoframes: int

    def matches(self) -> bool:
        return (
            self.counts == EXPECTED_COUNTS
            and self.incidence.ok
            and self.bases == EXPECTED_BASES
            and self.orthoframes == EXPECTED_ORTHOFRAMES
        )


def _count_bases_from(args):
    zcoords, first = args
    table = ZTable(zcoords)
    return int(table.nonsingular(quadruples(table.n, first)).sum())


class H4Matroid:
    """The linear matroid of a table of root points (H4 by default)."""

    def __init__(self, points: Sequence[RootPoint] | None = None) -> None:
        self.points = tuple(h4_points() if points is None else points)
        self.n = len(self.points)
        self.table = ZTable([p.zcoords for p in self.points])

    # -- rank and closure ----------------------------------------------

    def _check(self, subset: Iterable[int]) -> list[int]:
        ids = sorted(set(subset))
        for i in ids:
            if not 0 <= i < self.n:
                raise IndexError(f"point id {i} out of range 0..{self.n - 1}")
        return ids

    def rank(self, subset: Iterable[int]) -> int:
        ids = self._check(subset)
        return zrank([self.table.rows[i] for i in ids])

    def is_basis(self, subset: Iterable[int]) -> bool:
        ids = self._check(subset)
        return len(ids) == 4 and self.rank(ids) == 4

    def closure(self, subset: Iterable[int]) -> Flat:
        ids = self._check(subset)
        r, members = self.table.span_members(ids)
        return self._make_flat(tuple(members), r)

    def _make_flat(self, pts: tuple[int, ...], r: int) -> Flat:
        if r == 0:
            return Flat((), 0, "empty")
        if r == 1:
            return Flat(pts, 1, "point")
        if r == 2:
            return Flat(pts, 2, _line_class(len(pts)))
        if r == 3:
            return Flat(pts, 3, self.classify_plane(pts))
        return Flat(pts, r, "ground")

    # -- lines ----------------------------------------------------------

    @cached_property
    def _line_data(self) -> tuple[list[tuple[int, ...]], dict[tuple[int, int], int]]:
        lines: list[tuple[int, ...]] = []
        line_of: dict[tuple[int, int], int] = {}
        for i, j in combinations(range(self.n), 2):
            if (i, j) in line_of:
                continue
            _, members = self.table.span_members([i, j])
            idx = len(lines)
            lines.append(tuple(members))
            for pair in combinations(members, 2):
                line_of[pair] = idx
        return lines, line_of

    def line_through(self, i: int, j: int) -> tuple[int, ...]:
        lines, line_of = self._line_data
        return lines[line_of[(min(i, j), max(i, j))]]

    def pair_type(self, i: int, j: int) -> int:
        """Size of the line spanned by two distinct points."""
        return len(self.line_through(i, j))

    def lines_inside(self, pts: Iterable[int]) -> set[tuple[int, ...]]:
        lines, line_of = self._line_data
        return {lines[line_of[pair]] for pair in combinations(sorted(pts), 2)}

    def classify_plane(self, pts: Sequence[int]) -> str:
        sizes = Counter(len(l) for l in self.lines_inside(pts))
        shape = (len(pts), sizes.get(2, 0), sizes.get(3, 0), sizes.get(5, 0))
        try:
            return _PLANE_SHAPES[shape]
        except KeyError:
            raise ClassificationError(f"rank-3 flat {tuple(pts)} has unknown shape {shape}") from None

    # -- flat enumeration -------------------------------------------------

    @cached_property
    def flats(self) -> FlatLists:
        return self.enumerate_flats()

    def enumerate_flats(self) -> FlatLists:
        """Every flat of rank 1, 2 and 3, classified.

        Lines are closures of pairs; planes are closures of a line with one
        further point, deduplicated by point set.
        """
        lines, _ = self._line_data
        by_class: dict[str, list[Flat]] = defaultdict(list)
        for p in range(self.n):
            by_class["point"].append(Flat((p,), 1, "point"))
        for line in lines:
            by_class[_line_class(len(line))].append(Flat(line, 2, _line_class(len(line))))

        planes: set[tuple[int, ...]] = set()
        for line in lines:
            covered = set(line)
            for k in range(self.n):
                if k in covered:
                    continue
                r, members = self.table.span_members([line[0], line[1], k])
                if r != 3:
                    raise ClassificationError(f"closure of {line[:2] + (k,)} has rank {r}")
                covered.update(members)
                planes.add(tuple(members))
        for pts in planes:
            cls = self.classify_plane(pts)
            by_class[cls].append(Flat(pts, 3, cls))
        for cls in FLAT_CLASSES:
            by_class[cls].sort()
        return FlatLists(dict(by_class))

    def counts(self) -> dict[str, int]:
        return self.flats.counts()

    @cached_property
    def flat_index(self) -> dict[tuple[int, ...], Flat]:
        return {f.points: f for c in FLAT_CLASSES for f in self.flats[c]}

    @cached_property
    def containing(self) -> dict[int, dict[str, list[Flat]]]:
        """For each point, the flats of each class that contain it."""
        out: dict[int, dict[str, list[Flat]]] = {p: defaultdict(list) for p in range(self.n)}
        for cls in FLAT_CLASSES:
            for f in self.flats[cls]:
                for p in f.points:
                    out[p][cls].append(f)
        return out

    def apex(self, plane: Flat) -> int:
        """The point of a Π3 or Π5 off its long line."""
        big = max(self.lines_inside(plane.points), key=len)
        (a,) = set(plane.points) - set(big)
        return a

    def incidence_table(self) -> IncidenceTable:
        flats = self.flats
        values: dict[str, dict[str, set[int]]] = {r: defaultdict(set) for r in EXPECTED_INCIDENCE}
        apex_total: dict[str, set[int]] = defaultdict(set)
        deviations = []

        apex_counts = {cls: Counter(self.apex(f) for f in flats[cls]) for cls in ("pi3", "pi5")}
        for p in range(self.n):
            row = {}
            for col in LINE_CLASSES + ("pi6", "pi15"):
                row[col] = len(self.containing[p][col])
            for col in ("pi3", "pi5"):
                row[col] = apex_counts[col][p]
                apex_total[col].add(len(self.containing[p][col]))
            for col, v in row.items():
                values["point"][col].add(v)
                exp = EXPECTED_INCIDENCE["point"][col]
                if v != exp:
                    deviations.append(("point", col, (p,), v, exp))

        planes_over: dict[tuple[int, ...], Counter] = defaultdict(Counter)
        for cls in PLANE_CLASSES:
            for f in flats[cls]:
                for line in self.lines_inside(f.points):
                    planes_over[line][cls] += 1
        for lcls in LINE_CLASSES:
            for line in flats[lcls]:
                for col in LINE_CLASSES + PLANE_CLASSES:
                    v = int(col == lcls) if col in LINE_CLASSES else planes_over[line.points][col]
                    values[lcls][col].add(v)
                    exp = EXPECTED_INCIDENCE[lcls][col]
                    if v != exp:
                        deviations.append((lcls, col, line.points, v, exp))
        return IncidenceTable(
            {r: dict(v) for r, v in values.items()}, dict(apex_total), deviations
        )

    def covers(self, flat: Flat) -> list[Flat]:
        """Flats of the next rank that contain ``flat``."""
        target = 2 if flat.rank == 1 else 3
        classes = LINE_CLASSES if target == 2 else PLANE_CLASSES
        pts = flat.pointset
        anchor = flat.points[0]
        return [
            f for cls in classes for f in self.containing[anchor][cls] if pts <= f.pointset
        ]

    def check_flat_covering(self, flat: Flat) -> CoveringReport:
        if flat.rank not in (1, 2):
            raise ValueError("flat covering check expects a point or a line")
        covers = self.covers(flat)
        pts = flat.pointset
        seen: set[int] = set()
        disjoint = True
        for c in covers:
            extra = c.pointset - pts
            if seen & extra:
                disjoint = False
            seen |= extra
        rest = set(range(self.n)) - pts
        return CoveringReport(
            flat=flat,
            cover_counts=dict(Counter(c.cls for c in covers)),
            residual=len(seen),
            partitioned=disjoint and seen == rest,
        )

    def pi15_pairwise_intersections(self) -> dict:
        planes = self.flats["pi15"]
        bad = []
        profiles = set()
        rank2 = 0
        for i, p in enumerate(planes):
            profile = Counter()
            for j, q in enumerate(planes):
                if i == j:
                    continue
                meet = tuple(sorted(p.pointset & q.pointset))
                ok = len(meet) >= 2 and self.rank(meet) == 2 and self.closure(meet).points == meet
                if not ok:
                    bad.append((i, j, meet))
                    continue
                profile[len(meet)] += 1
                if i < j:
                    rank2 += 1
            profiles.add((profile[5], profile[3], profile[2]))
        return {
            "pairs": len(planes) * (len(planes) - 1) // 2,
            "rank2_pairs": rank2,
            "profiles": sorted(profiles),
            "failures": bad,
        }

    # -- bases and orthoframes -------------------------------------------

    def count_bases(self, jobs: int = 1) -> int:
        if jobs <= 1:
            return int(self.table.nonsingular(quadruples(self.n)).sum())
        zc = [p.zcoords for p in self.points]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = pool.map(_count_bases_from, [(zc, i) for i in range(self.n - 3)])
            return sum(parts)

    @cached_property
    def orthogonal(self) -> np.ndarray:
        ga, gb = self.table.gram()
        return (ga == 0) & (gb == 0)

    @cached_property
    def two_point_pairs(self) -> np.ndarray:
        m = np.zeros((self.n, self.n), dtype=bool)
        for line in self.flats["line2"]:
            i, j = line.points
            m[i, j] = m[j, i] = True
        return m

    @cached_property
    def orthoframes(self) -> list[Orthoframe]:
        return self.enumerate_orthoframes()

    def enumerate_orthoframes(self) -> list[Orthoframe]:
        """Bases whose six pairs are all 2-point lines."""
        adj = self.two_point_pairs
        nbrs = [set(np.flatnonzero(adj[i]).tolist()) for i in range(self.n)]
        frames = []
        for a in range(self.n):
            for b in sorted(x for x in nbrs[a] if x > a):
                common_ab = nbrs[a] & nbrs[b]
                for c in sorted(x for x in common_ab if x > b):
                    for d in sorted(x for x in common_ab & nbrs[c] if x > c):
                        if self.is_basis((a, b, c, d)):
                            frames.append(Orthoframe((a, b, c, d)))
        return frames

    def frames_through(self, x: int) -> list[Orthoframe]:
        return [f for f in self.orthoframes if x in f.points]

    def orthoframe_characterizations(self) -> dict[str, int]:
        """Compare the three descriptions of orthoframes over every 4-subset.

        Returns the number of subsets satisfying each description and the
        number on which they disagree.
        """
        quads = quadruples(self.n)
        basis = self.table.nonsingular(quads)
        orth = np.ones(len(quads), dtype=bool)
        two = np.ones(len(quads), dtype=bool)
        for s, t in combinations(range(4), 2):
            orth &= self.orthogonal[quads[:, s], quads[:, t]]
            two &= self.two_point_pairs[quads[:, s], quads[:, t]]
        frames = {f.points for f in self.orthoframes}
        keys = ((quads[:, 0] * self.n + quads[:, 1]) * self.n + quads[:, 2]) * self.n + quads[:, 3]
        frame_keys = [((a * self.n + b) * self.n + c) * self.n + d for a, b, c, d in frames]
        listed = np.isin(keys, np.array(frame_keys, dtype=np.int64))
        by_definition = two & basis
        disagree = int(((by_definition != orth) | (by_definition != listed)).sum())
        return {
            "pairwise_orthogonal": int(orth.sum()),
            "two_point_basis": int(by_definition.sum()),
            "listed": len(frames),
            "disagreements": disagree,
        }

    def orthoplane(self, x: int) -> Flat:
        """P_x: union of the orthoframes through ``x``, minus ``x``.

        Raises ValueError if it differs from the set of points orthogonal
        to ``x`` or is not a 15-point plane.
        """
        union = set()
        for f in self.frames_through(x):
            union.update(f.points)
        union.discard(x)
        pts = tuple(sorted(union))
        kernel = tuple(int(y) for y in np.flatnonzero(self.orthogonal[x]))
        if pts != kernel:
            raise ValueError(f"orthoplane of {x}: frame union {pts} != orthogonal set {kernel}")
        flat = self.flat_index.get(pts)
        if flat is None or flat.cls != "pi15":
            raise ValueError(f"orthoplane of {x} is not a 15-point plane")
        return flat

    @cached_property
    def orthoplanes(self) -> list[Flat]:
        return [self.orthoplane(x) for x in range(self.n)]

    def orthopoint(self, plane: Flat) -> int:
        for x, p in enumerate(self.orthoplanes):
            if p.points == plane.points:
                return x
        raise ValueError(f"{plane.points} is not an orthoplane")

    def pi15_as_h3(self, plane: Flat) -> dict:
        if plane.cls != "pi15":
            raise ValueError("expected a 15-point plane")
        sizes = Counter(len(l) for l in self.lines_inside(plane.points))
        adj = self.two_point_pairs
        triples = [
            t
            for t in combinations(plane.points, 3)
            if adj[t[0], t[1]] and adj[t[0], t[2]] and adj[t[1], t[2]] and self.rank(t) == 3
        ]
        covered = [p for t in triples for p in t]
        return {
            "points": len(plane),
            "lines": (sizes.get(2, 0), sizes.get(3, 0), sizes.get(5, 0)),
            "frames": triples,
            "partition": len(triples) == 5 and sorted(covered) == list(plane.points),
        }

    def census(self, jobs: int = 1) -> Census:
        return Census(
            counts=self.counts(),
            incidence=self.incidence_table(),
            bases=self.count_bases(jobs),
            orthoframes=len(self.orthoframes),
        )

    def double_counting(self) -> list[tuple[str, int, int]]:
        """Identities tying flat counts to incidence counts: (name, lhs, rhs)."""
        counts = self.counts()
        out = []
        pairs = sum(len(l) * (len(l) - 1) // 2 for c in LINE_CLASSES for l in self.flats[c])
        out.append(("pairs covered by lines", pairs, self.n * (self.n - 1) // 2))
        for pcls in PLANE_CLASSES:
            inner = Counter()
            for f in self.flats[pcls]:
                for l in self.lines_inside(f.points):
                    inner[_line_class(len(l))] += 1
            for lcls in LINE_CLASSES:
                out.append(
                    (
                        f"{lcls} inside {pcls}",
                        inner[lcls],
                        counts[lcls] * EXPECTED_INCIDENCE[lcls][pcls],
                    )
                )
        for cls, size in (("pi3", 4), ("pi5", 6), ("pi6", 6), ("pi15", 15)):
            total = sum(len(self.containing[p][cls]) for p in range(self.n))
            out.append((f"point-{cls} incidences", total, counts[cls] * size))
        # pairs of 3-point lines through a point: each spans a Π15 or a Π6
        pi6_pairs = pi15_pairs = 0
        for p in range(self.n):
            for l1, l2 in combinations(self.containing[p]["line3"], 2):
                cls = self.closure(l1.points + l2.points).cls
                pi6_pairs += cls == "pi6"
                pi15_pairs += cls == "pi15"
        out.append(("3-line pairs per point spanning Π15", pi15_pairs, self.n * 15))
        out.append(("3-line pairs per point spanning Π6", pi6_pairs, self.n * 30))
        out.append(("Π6 from pencil pairs", pi6_pairs // 6, counts["pi6"]))
        return out


_PLANE_SHAPES = {
    (4, 3, 1, 0): "pi3",
    (6, 5, 0, 1): "pi5",
    (6, 3, 4, 0): "pi6",
    (15, 15, 10, 6): "pi15",
}


def _line_class(size: int) -> str:
    try:
        return {2: "line2", 3: "line3", 5: "line5"}[size]
    except KeyError:
        raise ClassificationError(f"line with {size} points") from None


def flat_is_orthogonal_frame(points: Sequence[RootPoint], ids: Sequence[int]) -> bool:
    return all(dot(points[i], points[j]) == 0 for i, j in combinations(ids, 2))
