"""Exact linear algebra over Z[t] on integer coefficient pairs.

Every entry of H lies in Z[t], so the bulk enumerations never need
division: elimination is fraction-free and determinants are expanded
directly.  An element ``a + b*t`` is stored as the pair ``(a, b)``; numpy
arrays carry the two coefficients in separate integer arrays.
"""

from __future__ import annotations

from itertools import combinations
from typing import Sequence

import numpy as np

ZPair = tuple[int, int]
ZVec = Sequence[ZPair]

ROW_PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
# Laplace expansion of a 4x4 determinant along the first two columns.
_COMPLEMENT = (5, 4, 3, 2, 1, 0)
_LAPLACE_SIGN = (1, -1, 1, 1, -1, 1)


def zmul(x: ZPair, y: ZPair) -> ZPair:
    a, b = x
    c, d = y
    bd = b * d
    return (a * c + bd, a * d + b * c + bd)


def zsub(x: ZPair, y: ZPair) -> ZPair:
    return (x[0] - y[0], x[1] - y[1])


def zdet(m: Sequence[Sequence[ZPair]]) -> ZPair:
    """Determinant of a small square matrix by cofactor expansion."""
    n = len(m)
    if n == 0:
        return (1, 0)
    if n == 1:
        return m[0][0]
    if n == 2:
        return zsub(zmul(m[0][0], m[1][1]), zmul(m[0][1], m[1][0]))
    acc = (0, 0)
    for j in range(n):
        if m[0][j] == (0, 0):
            continue
        minor = [row[:j] + row[j + 1 :] for row in m[1:]]
        term = zmul(m[0][j], zdet(minor))
        acc = (acc[0] + term[0], acc[1] + term[1]) if j % 2 == 0 else (acc[0] - term[0], acc[1] - term[1])
    return acc


def echelon(vectors: Sequence[ZVec]) -> list[list[ZPair]]:
    """Fraction-free row reduction; returns independent reduced vectors.

    Pivot is the first nonzero entry, in input order.
    """
    basis: list[tuple[int, list[ZPair]]] = []
    for v in vectors:
        w = list(v)
        for col, b in basis:
            c = w[col]
            if c != (0, 0):
                p = b[col]
                w = [zsub(zmul(p, wi), zmul(c, bi)) for wi, bi in zip(w, b)]
        for col, c in enumerate(w):
            if c != (0, 0):
                basis.append((col, w))
                break
        if len(basis) == len(w):
            break
    return [b for _, b in basis]


def zrank(vectors: Sequence[ZVec]) -> int:
    return len(echelon(vectors))


def span_forms(basis: Sequence[ZVec]) -> list[list[ZPair]]:
    """Linear forms whose common zero set is the span of ``basis``.

    For independent ``basis`` of size r < 4 these are the (r+1)-minors of
    ``[basis | p]`` containing the last column, expanded along it.
    """
    r = len(basis)
    dim = len(basis[0]) if basis else 4
    forms = []
    for rows in combinations(range(dim), r + 1):
        coeffs = [(0, 0)] * dim
        for idx, k in enumerate(rows):
            sub = [[basis[c][rr] for c in range(r)] for rr in rows if rr != k]
            minor = zdet(sub)
            sgn = 1 if (idx + r) % 2 == 0 else -1
            coeffs[k] = (sgn * minor[0], sgn * minor[1])
        forms.append(coeffs)
    return forms


class ZTable:
    """Vectorised Z[t] data for a fixed table of 4-vectors."""

    def __init__(self, zcoords: Sequence[ZVec]) -> None:
        arr = np.array(zcoords, dtype=np.int64)  # (n, 4, 2)
        self.n = arr.shape[0]
        self.a = arr[:, :, 0]
        self.b = arr[:, :, 1]
        self.rows = [list(map(tuple, row)) for row in arr.tolist()]
        self._plucker: tuple[np.ndarray, np.ndarray] | None = None

    def evaluate(self, form: Sequence[ZPair]) -> tuple[np.ndarray, np.ndarray]:
        """Value of a linear form at every table vector."""
        ca = np.array([c[0] for c in form], dtype=np.int64)
        cb = np.array([c[1] for c in form], dtype=np.int64)
        va = self.a @ ca + self.b @ cb
        vb = self.b @ ca + self.a @ cb + self.b @ cb
        return va, vb

    def zero_set(self, forms: Sequence[Sequence[ZPair]]) -> np.ndarray:
        mask = np.ones(self.n, dtype=bool)
        for f in forms:
            va, vb = self.evaluate(f)
            mask &= (va == 0) & (vb == 0)
        return mask

    def span_members(self, ids: Sequence[int]) -> tuple[int, list[int]]:
        """Rank of ``ids`` and the ids of all table vectors in their span."""
        basis = echelon([self.rows[i] for i in ids])
        r = len(basis)
        if r == 0:
            return 0, []
        if r == len(self.rows[0]):
            return r, list(range(self.n))
        mask = self.zero_set(span_forms(basis))
        return r, np.flatnonzero(mask).tolist()

    def gram(self) -> tuple[np.ndarray, np.ndarray]:
        """All pairwise dot products as coefficient arrays."""
        a, b = self.a, self.b
        ga = a @ a.T + b @ b.T
        gb = a @ b.T + b @ a.T + b @ b.T
        return ga, gb

    def plucker(self) -> tuple[np.ndarray, np.ndarray]:
        """2x2 minors for every ordered column pair: arrays (n, n, 6)."""
        if self._plucker is None:
            a, b = self.a, self.b
            pa = np.zeros((self.n, self.n, 6), dtype=np.int64)
            pb = np.zeros_like(pa)
            for s, (r0, r1) in enumerate(ROW_PAIRS):
                # u[r0] v[r1] - u[r1] v[r0]
                xa, xb = _zmul_arr(a[:, None, r0], b[:, None, r0], a[None, :, r1], b[None, :, r1])
                ya, yb = _zmul_arr(a[:, None, r1], b[:, None, r1], a[None, :, r0], b[None, :, r0])
                pa[:, :, s] = xa - ya
                pb[:, :, s] = xb - yb
            self._plucker = (pa, pb)
        return self._plucker

    def det4(self, quads: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Determinants of the column quadruples in ``quads`` (shape (m, 4))."""
        pa, pb = self.plucker()
        i, j, k, l = quads[:, 0], quads[:, 1], quads[:, 2], quads[:, 3]
        da = np.zeros(len(quads), dtype=np.int64)
        db = np.zeros_like(da)
        for s in range(6):
            c = _COMPLEMENT[s]
            xa, xb = _zmul_arr(pa[i, j, s], pb[i, j, s], pa[k, l, c], pb[k, l, c])
            if _LAPLACE_SIGN[s] > 0:
                da += xa
                db += xb
            else:
                da -= xa
                db -= xb
        return da, db

    def nonsingular(self, quads: np.ndarray) -> np.ndarray:
        da, db = self.det4(quads)
        return (da != 0) | (db != 0)


def _zmul_arr(a, b, c, d):
    bd = b * d
    return a * c + bd, a * d + b * c + bd


def quadruples(n: int, first: int | None = None) -> np.ndarray:
    """All increasing 4-tuples of ``range(n)``, optionally with a fixed smallest element."""
    if first is None:
        flat = np.fromiter((x for q in combinations(range(n), 4) for x in q), dtype=np.int64)
        return flat.reshape(-1, 4)
    rest = np.fromiter(
        (x for q in combinations(range(first + 1, n), 3) for x in q), dtype=np.int64
    ).reshape(-1, 3)
    return np.hstack([np.full((len(rest), 1), first, dtype=np.int64), rest])
