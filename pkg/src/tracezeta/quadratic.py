"""Exact arithmetic in real quadratic fields Q(sqrt d)."""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import total_ordering

from sympy import factorint

from .errors import FieldMismatch

Rational = int | Fraction


def squarefree_split(n: int) -> tuple[int, int]:
    """n = s^2 * d with d squarefree; returns (s, d).  n must be positive."""
    if n <= 0:
        raise ValueError(f"expected a positive integer, got {n}")
    s, d = 1, 1
    for prime, e in factorint(n).items():
        s *= prime ** (e // 2)
        if e % 2:
            d *= prime
    return s, d


def _is_squarefree(d: int) -> bool:
    return d >= 1 and all(e == 1 for e in factorint(d).values())


@total_ordering
class QuadraticNumber:
    """a + b*sqrt(d) with a, b rational and d a squarefree positive integer.

    Rational values are stored with b = 0 and d = 1.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a: Rational = 0, b: Rational = 0, d: int = 1):
        a, b = Fraction(a), Fraction(b)
        if d < 1 or not _is_squarefree(d):
            raise ValueError(f"d={d} is not a squarefree positive integer")
        if d == 1:
            a, b = a + b, Fraction(0)
        if b == 0:
            d = 1
        self.a, self.b, self.d = a, b, d

    @classmethod
    def sqrt(cls, n: Rational) -> QuadraticNumber:
        """The positive square root of a nonnegative rational."""
        n = Fraction(n)
        if n < 0:
            raise ValueError("square root of a negative number is not real")
        if n == 0:
            return cls(0)
        # sqrt(u/v) = sqrt(u v) / v
        s, d = squarefree_split(n.numerator * n.denominator)
        return cls(0, Fraction(s, n.denominator), d)

    @classmethod
    def coerce(cls, x) -> QuadraticNumber:
        if isinstance(x, QuadraticNumber):
            return x
        if isinstance(x, (int, Fraction)):
            return cls(x)
        raise TypeError(f"cannot use {type(x).__name__} as a quadratic number")

    def _common(self, other: QuadraticNumber) -> int:
        if self.d == 1:
            return other.d
        if other.d == 1 or other.d == self.d:
            return self.d
        raise FieldMismatch(f"Q(sqrt {self.d}) and Q(sqrt {other.d}) mixed")

    def is_rational(self) -> bool:
        return self.b == 0

    def __add__(self, other):
        try:
            other = QuadraticNumber.coerce(other)
        except TypeError:
            return NotImplemented
        d = self._common(other)
        return QuadraticNumber(self.a + other.a, self.b + other.b, d)

    __radd__ = __add__

    def __neg__(self) -> QuadraticNumber:
        return QuadraticNumber(-self.a, -self.b, self.d)

    def __sub__(self, other):
        try:
            other = QuadraticNumber.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            other = QuadraticNumber.coerce(other)
        except TypeError:
            return NotImplemented
        d = self._common(other)
        return QuadraticNumber(
            self.a * other.a + self.b * other.b * d,
            self.a * other.b + self.b * other.a,
            d,
        )

    __rmul__ = __mul__

    def conj(self) -> QuadraticNumber:
        return QuadraticNumber(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.d

    def trace(self) -> Fraction:
        """Trace over Q of the field generated by self (degree 1 or 2)."""
        return 2 * self.a if self.b else self.a

    def inverse(self) -> QuadraticNumber:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        return QuadraticNumber(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        try:
            other = QuadraticNumber.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return QuadraticNumber.coerce(other) * self.inverse()

    def __pow__(self, e: int) -> QuadraticNumber:
        if e < 0:
            return self.inverse() ** (-e)
        out = QuadraticNumber(1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def sign(self) -> int:
        """Exact sign of the real number a + b sqrt d."""
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sb == 0 or sa == sb:
            return sa or sb
        if sa == 0:
            return sb
        # opposite signs: compare a^2 with b^2 d
        lhs, rhs = self.a * self.a, self.b * self.b * self.d
        return sa if lhs > rhs else (sb if lhs < rhs else 0)

    def __eq__(self, other) -> bool:
        try:
            other = QuadraticNumber.coerce(other)
        except TypeError:
            return NotImplemented
        return (self.a, self.b, self.d) == (other.a, other.b, other.d)

    def __lt__(self, other) -> bool:
        try:
            return (self - other).sign() < 0
        except TypeError:
            return NotImplemented

    def __hash__(self) -> int:
        return hash((self.a, self.b, self.d))

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def __repr__(self) -> str:
        return f"QuadraticNumber({self})"

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        sign = "-" if self.b < 0 else "+"
        return f"{self.a}{sign}{abs(self.b)}√{self.d}"

    @classmethod
    def parse(cls, text: str) -> QuadraticNumber:
        """Inverse of ``str``: ``"a"`` or ``"a+b√d"`` with a, b in p/q form."""
        text = text.replace(" ", "")
        m = re.fullmatch(r"(-?\d+(?:/\d+)?)(?:([+-])(\d+(?:/\d+)?)(?:√|sqrt)(\d+))?", text)
        if not m:
            raise ValueError(f"cannot parse quadratic number {text!r}")
        a = Fraction(m.group(1))
        if m.group(2) is None:
            return cls(a)
        b = Fraction(m.group(3)) * (-1 if m.group(2) == "-" else 1)
        return cls(a, b, int(m.group(4)))
