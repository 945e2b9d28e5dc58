"""Rebuild every flat of M(H4) from its 75 orthoframes alone.

Nothing here touches coordinates or the rank oracle; the only input is
the list of orthoframes as 4-tuples of point ids.
"""

from __future__ import annotations

from collections import defaultdict
from itertools import combinations
from typing import Iterable, Sequence


def reconstruct_from_orthoframes(frames: Iterable[Sequence[int]]) -> dict[str, list[tuple[int, ...]]]:
    frames = [tuple(sorted(f)) for f in frames]
    points = sorted({p for f in frames for p in f})

    # orthoplanes: union of the frames through x, minus x
    through: dict[int, set[int]] = defaultdict(set)
    for f in frames:
        for x in f:
            through[x].update(f)
    orthoplane = {x: tuple(sorted(through[x] - {x})) for x in points}
    pi15 = sorted(set(orthoplane.values()))

    line2 = sorted({pair for f in frames for pair in combinations(f, 2)})

    # 3- and 5-point lines are the larger pairwise meets of 15-point planes
    meets: dict[int, set[tuple[int, ...]]] = defaultdict(set)
    for a, b in combinations(pi15, 2):
        meet = tuple(sorted(set(a) & set(b)))
        meets[len(meet)].add(meet)
    line3 = sorted(meets[3])
    line5 = sorted(meets[5])

    # Π3 / Π5: a 3- or 5-point line of an orthoplane plus its orthopoint
    pi3, pi5 = set(), set()
    for x, plane in orthoplane.items():
        pset = set(plane)
        for line in line3:
            if pset.issuperset(line):
                pi3.add(tuple(sorted(line + (x,))))
        for line in line5:
            if pset.issuperset(line):
                pi5.add(tuple(sorted(line + (x,))))

    # Π6: intersecting 3-point lines that do not lie in a common Π15
    plane_sets = [set(p) for p in pi15]
    lines_at: dict[int, list[tuple[int, ...]]] = defaultdict(list)
    for line in line3:
        for p in line:
            lines_at[p].append(line)

    def in_common_pi15(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
        u = set(a) | set(b)
        return any(u <= s for s in plane_sets)

    pi6 = set()
    for p in points:
        for a, b in combinations(lines_at[p], 2):
            if in_common_pi15(a, b):
                continue
            # the other two lines of the quadrilateral meet a and b off p
            others = [
                c
                for q in a
                if q != p
                for c in lines_at[q]
                if c not in (a, b) and len(set(c) & (set(b) - {p})) == 1
            ]
            quad = {a, b, *others}
            union = tuple(sorted({q for line in quad for q in line}))
            if len(quad) == 4 and len(union) == 6:
                pi6.add(union)

    return {
        "point": [(p,) for p in points],
        "line2": line2,
        "line3": line3,
        "line5": line5,
        "pi3": sorted(pi3),
        "pi5": sorted(pi5),
        "pi6": sorted(pi6),
        "pi15": pi15,
    }
