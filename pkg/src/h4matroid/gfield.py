"""Exact arithmetic in the golden field Q(t), t^2 = t + 1.

Elements are written ``a + b*t`` with rational ``a`` and ``b``.  The real
embedding used for signs is ``t = (1 + sqrt(5)) / 2``.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import total_ordering
from typing import Union

Rational = Union[int, Fraction]

TAU_FLOAT = (1.0 + math.sqrt(5.0)) / 2.0

_NUMBER_RE = re.compile(r"^\s*([+-]?\d+(?:/\d+)?)\s*\+\s*([+-]?\d+(?:/\d+)?)\s*\*\s*t\s*$")


@total_ordering
class GoldenNumber:
    """An element ``a + b*t`` of Q(t).

    Instances are immutable and hashable.  Comparison uses the real
    embedding, so ``GoldenNumber(0, 1) > 1``.
    """

    __slots__ = ("_a", "_b")

    def __init__(self, a: Rational | str = 0, b: Rational | str = 0) -> None:
        self._a = Fraction(a)
        self._b = Fraction(b)

    @property
    def a(self) -> Fraction:
        return self._a

    @property
    def b(self) -> Fraction:
        return self._b

    @classmethod
    def coerce(cls, x: GoldenNumber | Rational) -> GoldenNumber:
        if isinstance(x, GoldenNumber):
            return x
        if isinstance(x, (int, Fraction)):
            return cls(x, 0)
        raise TypeError(f"cannot coerce {type(x).__name__} to GoldenNumber")

    # -- ring operations ------------------------------------------------

    def __add__(self, other: GoldenNumber | Rational) -> GoldenNumber:
        try:
            o = GoldenNumber.coerce(other)
        except TypeError:
            return NotImplemented
        return GoldenNumber(self._a + o._a, self._b + o._b)

    __radd__ = __add__

    def __neg__(self) -> GoldenNumber:
        return GoldenNumber(-self._a, -self._b)

    def __sub__(self, other: GoldenNumber | Rational) -> GoldenNumber:
        try:
            o = GoldenNumber.coerce(other)
        except TypeError:
            return NotImplemented
        return GoldenNumber(self._a - o._a, self._b - o._b)

    def __rsub__(self, other: GoldenNumber | Rational) -> GoldenNumber:
        return (-self) + other

    def __mul__(self, other: GoldenNumber | Rational) -> GoldenNumber:
        try:
            o = GoldenNumber.coerce(other)
        except TypeError:
            return NotImplemented
        a, b, c, d = self._a, self._b, o._a, o._b
        bd = b * d
        return GoldenNumber(a * c + bd, a * d + b * c + bd)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        """Field norm ``x * conj(x)``, a rational number."""
        a, b = self._a, self._b
        return a * a + a * b - b * b

    def inverse(self) -> GoldenNumber:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("GoldenNumber zero has no inverse")
        c = self.conj()
        return GoldenNumber(c._a / n, c._b / n)

    def __truediv__(self, other: GoldenNumber | Rational) -> GoldenNumber:
        try:
            o = GoldenNumber.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: GoldenNumber | Rational) -> GoldenNumber:
        return GoldenNumber.coerce(other) * self.inverse()

    def __pow__(self, n: int) -> GoldenNumber:
        if n < 0:
            return self.inverse() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conj(self) -> GoldenNumber:
        """Galois conjugate, t -> 1 - t."""
        return GoldenNumber(self._a + self._b, -self._b)

    # -- order ----------------------------------------------------------

    def sign(self) -> int:
        """Sign of ``a + b*(1 + sqrt 5)/2`` decided with rational arithmetic only."""
        # 2x = (2a + b) + b*sqrt5
        p = 2 * self._a + self._b
        q = self._b
        sp = (p > 0) - (p < 0)
        sq = (q > 0) - (q < 0)
        if sq == 0:
            return sp
        if sp == 0 or sp == sq:
            return sq
        # opposite signs: compare p^2 with 5 q^2
        lhs, rhs = p * p, 5 * q * q
        if lhs > rhs:
            return sp
        if lhs < rhs:
            return sq
        return 0  # unreachable for rational p, q not both zero

    def __eq__(self, other: object) -> bool:
        if isinstance(other, GoldenNumber):
            return self._a == other._a and self._b == other._b
        if isinstance(other, (int, Fraction)):
            return self._b == 0 and self._a == other
        return NotImplemented

    def __lt__(self, other: GoldenNumber | Rational) -> bool:
        try:
            o = GoldenNumber.coerce(other)
        except TypeError:
            return NotImplemented
        return (self - o).sign() < 0

    def __hash__(self) -> int:
        if self._b == 0:
            return hash(self._a)
        return hash((self._a, self._b))

    def __bool__(self) -> bool:
        return bool(self._a) or bool(self._b)

    def __float__(self) -> float:
        return float(self._a) + float(self._b) * TAU_FLOAT

    # -- text -------------------------------------------------------------

    def __repr__(self) -> str:
        return f"GoldenNumber({self._a!s}, {self._b!s})"

    def __str__(self) -> str:
        return format_golden(self)

    def is_integral(self) -> bool:
        return self._a.denominator == 1 and self._b.denominator == 1

    def as_int_pair(self) -> tuple[int, int]:
        """Coefficients as integers; only valid for elements of Z[t]."""
        if not self.is_integral():
            raise ValueError(f"{self} is not in Z[t]")
        return int(self._a), int(self._b)


ZERO = GoldenNumber(0, 0)
ONE = GoldenNumber(1, 0)
TAU = GoldenNumber(0, 1)


def add(x: GoldenNumber, y: GoldenNumber) -> GoldenNumber:
    return x + y


def mul(x: GoldenNumber, y: GoldenNumber) -> GoldenNumber:
    return x * y


def inverse(x: GoldenNumber) -> GoldenNumber:
    return x.inverse()


def sign(x: GoldenNumber) -> int:
    return x.sign()


def conj(x: GoldenNumber) -> GoldenNumber:
    return x.conj()


def format_golden(x: GoldenNumber) -> str:
    """Render as ``a+b*t``, e.g. ``3/2+-1/2*t``."""
    return f"{x.a}+{x.b}*t"


def parse_golden(text: str) -> GoldenNumber:
    """Inverse of :func:`format_golden`."""
    m = _NUMBER_RE.match(text)
    if m is None:
        raise ValueError(f"not a golden number: {text!r}")
    return GoldenNumber(Fraction(m.group(1)), Fraction(m.group(2)))
