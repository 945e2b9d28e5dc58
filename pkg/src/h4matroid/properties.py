"""Seeded randomized property checks.

Each function runs ``cases`` random trials and returns the list of
failing inputs (empty on success).
"""

from __future__ import annotations

import random
from fractions import Fraction

from .autos import Symmetries
from .gfield import GoldenNumber
from .matroid import H4Matroid


def random_golden(rng: random.Random, span: int = 12) -> GoldenNumber:
    def q() -> Fraction:
        return Fraction(rng.randint(-span, span), rng.randint(1, span))

    return GoldenNumber(q(), q())


def golden_field_axioms(rng: random.Random, cases: int) -> list:
    failures = []
    for _ in range(cases):
        x, y, z = random_golden(rng), random_golden(rng), random_golden(rng)
        checks = [
            (x + y) + z == x + (y + z),
            (x * y) * z == x * (y * z),
            x + y == y + x,
            x * y == y * x,
            x * (y + z) == x * y + x * z,
            (x * y).sign() == x.sign() * y.sign(),
            (x + y).conj() == x.conj() + y.conj(),
            (x * y).conj() == x.conj() * y.conj(),
            x.conj().conj() == x,
            (x * x.conj()).b == 0,
        ]
        if x:
            checks.append(x * x.inverse() == 1)
        if not all(checks):
            failures.append((x, y, z))
    return failures


def _random_subset(rng: random.Random, n: int, max_size: int) -> set[int]:
    return set(rng.sample(range(n), rng.randint(0, max_size)))


def rank_submodularity(m: H4Matroid, rng: random.Random, cases: int, max_size: int = 8) -> list:
    failures = []
    for _ in range(cases):
        a = _random_subset(rng, m.n, max_size)
        b = _random_subset(rng, m.n, max_size)
        ra, rb = m.rank(a), m.rank(b)
        rab = m.rank(a | b)
        ok = (
            m.rank(a | b) + m.rank(a & b) <= ra + rb
            and m.rank(a & b) <= min(ra, rb)
            and max(ra, rb) <= rab
            and ra <= len(a)
        )
        if not ok:
            failures.append((sorted(a), sorted(b)))
    return failures


def closure_axioms(m: H4Matroid, rng: random.Random, cases: int, max_size: int = 6) -> list:
    failures = []
    for _ in range(cases):
        a = _random_subset(rng, m.n, max_size)
        b = a | _random_subset(rng, m.n, 3)
        ca = m.closure(a)
        ok = (
            a <= ca.pointset
            and m.closure(ca.points).points == ca.points
            and ca.pointset <= m.closure(b).pointset
            and m.rank(ca.points) == m.rank(a) == ca.rank
        )
        if not ok:
            failures.append(sorted(a))
    return failures


def duality_commutation(sym: Symmetries, rng: random.Random, cases: int) -> list:
    failures = []
    group = sym.aut_group
    for _ in range(cases):
        g = group.random_element(rng)
        x = rng.randrange(sym.n)
        if not sym.duality_commutes(g, x):
            failures.append((g, x))
    return failures
