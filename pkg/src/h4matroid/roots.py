"""The 60 columns of the H4 matrix as sign-canonical root points."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .gfield import ONE, TAU, ZERO, GoldenNumber

Vector = tuple[GoldenNumber, GoldenNumber, GoldenNumber, GoldenNumber]

_TOKENS = {
    "0": ZERO,
    "1": ONE,
    "-1": -ONE,
    "t": TAU,
    "-t": -TAU,
    "t2": TAU * TAU,
    "-t2": -(TAU * TAU),
}

# Rows of H, five blocks of twelve columns.
_H_ROWS = (
    # block 1
    (
        "1 0 0 0 1 1 1 1 1 1 1 1",
        "0 1 0 0 1 1 1 1 -1 -1 -1 -1",
        "0 0 1 0 1 1 -1 -1 1 1 -1 -1",
        "0 0 0 1 1 -1 1 -1 1 -1 1 -1",
    ),
    # block 2
    (
        "0 0 0 0 0 0 0 0 0 0 0 0",
        "t t t t t2 t2 t2 t2 1 1 1 1",
        "t2 t2 -t2 -t2 1 1 -1 -1 t t -t -t",
        "1 -1 1 -1 t -t t -t t2 -t2 t2 -t2",
    ),
    # block 3
    (
        "t t t t t2 t2 t2 t2 1 1 1 1",
        "0 0 0 0 0 0 0 0 0 0 0 0",
        "1 1 -1 -1 t t -t -t t2 t2 -t2 -t2",
        "t2 -t2 t2 -t2 1 -1 1 -1 t -t t -t",
    ),
    # block 4
    (
        "t t t t t2 t2 t2 t2 1 1 1 1",
        "t2 t2 -t2 -t2 1 1 -1 -1 t t -t -t",
        "0 0 0 0 0 0 0 0 0 0 0 0",
        "1 -1 1 -1 t -t t -t t2 -t2 t2 -t2",
    ),
    # block 5
    (
        "t t t t t2 t2 t2 t2 1 1 1 1",
        "1 1 -1 -1 t t -t -t t2 t2 -t2 -t2",
        "t2 -t2 t2 -t2 1 -1 1 -1 t -t t -t",
        "0 0 0 0 0 0 0 0 0 0 0 0",
    ),
)


class TranscriptionError(ValueError):
    """The column table contains duplicate or parallel vectors."""


@dataclass(frozen=True)
class RootPoint:
    id: int
    coords: Vector

    @property
    def zcoords(self) -> tuple[tuple[int, int], ...]:
        """Coordinates as integer pairs ``(a, b)`` for ``a + b*t``."""
        return tuple(c.as_int_pair() for c in self.coords)

    def __str__(self) -> str:
        return "[" + ", ".join(_pretty(c) for c in self.coords) + "]"


def _pretty(x: GoldenNumber) -> str:
    for tok, val in _TOKENS.items():
        if val == x:
            return tok.replace("t2", "t^2")
    return str(x)


def h4_columns() -> list[Vector]:
    """The 60 columns of H exactly as printed, before canonicalization."""
    cols: list[Vector] = []
    for block in _H_ROWS:
        rows = [[_TOKENS[tok] for tok in row.split()] for row in block]
        for j in range(12):
            cols.append(tuple(rows[i][j] for i in range(4)))  # type: ignore[arg-type]
    return cols


def canonicalize(v: Sequence[GoldenNumber]) -> Vector:
    """Return ``v`` or ``-v`` so that the first nonzero coordinate is positive."""
    for c in v:
        s = c.sign()
        if s > 0:
            return tuple(v)  # type: ignore[return-value]
        if s < 0:
            return tuple(-x for x in v)  # type: ignore[return-value]
    raise ValueError("cannot canonicalize the zero vector")


def _projective_key(v: Sequence[GoldenNumber]) -> Vector | None:
    for c in v:
        if c:
            inv = c.inverse()
            return tuple(x * inv for x in v)  # type: ignore[return-value]
    return None


def load_h4(columns: Iterable[Sequence[GoldenNumber]] | None = None, *, strict: bool = True) -> list[RootPoint]:
    """Load the ground set.  ``columns`` defaults to the H4 matrix.

    With ``strict`` the table is checked for parallel columns and a
    :class:`TranscriptionError` is raised if any are found.
    """
    cols = h4_columns() if columns is None else [tuple(GoldenNumber.coerce(x) for x in c) for c in columns]
    points = [RootPoint(i, canonicalize(c)) for i, c in enumerate(cols)]
    if strict:
        parallel = parallel_pairs(points)
        if parallel:
            raise TranscriptionError(f"parallel columns: {parallel[:5]}")
    return points


def parallel_pairs(points: Sequence[RootPoint]) -> list[tuple[int, int]]:
    seen: dict[Vector, int] = {}
    out = []
    for p in points:
        key = _projective_key(p.coords)
        if key in seen:
            out.append((seen[key], p.id))
        else:
            seen[key] = p.id  # type: ignore[index]
    return out


@lru_cache(maxsize=1)
def h4_points() -> tuple[RootPoint, ...]:
    return tuple(load_h4())


def dot(u: RootPoint | Sequence[GoldenNumber], v: RootPoint | Sequence[GoldenNumber]) -> GoldenNumber:
    uc = u.coords if isinstance(u, RootPoint) else u
    vc = v.coords if isinstance(v, RootPoint) else v
    total = ZERO
    for x, y in zip(uc, vc):
        total = total + x * y
    return total


class PointIndex:
    """Projective lookup of vectors in a fixed point table."""

    def __init__(self, points: Sequence[RootPoint]) -> None:
        self._keys = {}
        for p in points:
            self._keys.setdefault(_projective_key(p.coords), p.id)

    def lookup(self, v: Sequence[GoldenNumber | int]) -> int | None:
        key = _projective_key([GoldenNumber.coerce(x) for x in v])
        if key is None:
            return None
        return self._keys.get(key)


@lru_cache(maxsize=1)
def _h4_index() -> PointIndex:
    return PointIndex(h4_points())


def lookup(v: Sequence[GoldenNumber | int], points: Sequence[RootPoint] | None = None) -> int | None:
    """Id of the point proportional to ``v``, or ``None``."""
    index = _h4_index() if points is None else PointIndex(points)
    return index.lookup(v)


def vector(*entries: str | int | GoldenNumber) -> Vector:
    """Build a 4-vector from shorthand tokens like ``"t2"``, ``"-t"``, ``1``."""
    out = []
    for e in entries:
        if isinstance(e, str):
            out.append(_TOKENS[e])
        else:
            out.append(GoldenNumber.coerce(e))
    return tuple(out)  # type: ignore[return-value]


def reflect(v: Sequence[GoldenNumber], x: Sequence[GoldenNumber]) -> Vector:
    """Reflection of ``v`` in the hyperplane orthogonal to ``x``."""
    coef = (dot(v, x) * 2) / dot(x, x)
    return tuple(vi - coef * xi for vi, xi in zip(v, x))  # type: ignore[return-value]
