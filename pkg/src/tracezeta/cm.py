"""Grössencharacter values for CM elliptic curves with class number one."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from importlib import resources
from typing import Any

from sympy import isprime

from .errors import InertPrime, NormalizationFailure, NormMismatch, UnsupportedCMField
from .trace import FrobeniusData, frobenius_cm
from .variety import Variety

CLASS_NUMBER_ONE = (1, 2, 3, 7, 11, 19, 43, 67, 163)


@dataclass(frozen=True, order=True)
class ImagQuadInteger:
    """x + y*delta in the ring of integers of Q(sqrt -d).

    delta = sqrt(-d) when d is not 3 mod 4, else (1 + sqrt(-d))/2.
    """

    x: int
    y: int
    d: int

    @property
    def half_integral(self) -> bool:
        return self.d % 4 == 3

    def __add__(self, other: ImagQuadInteger) -> ImagQuadInteger:
        self._same(other)
        return ImagQuadInteger(self.x + other.x, self.y + other.y, self.d)

    def __neg__(self) -> ImagQuadInteger:
        return ImagQuadInteger(-self.x, -self.y, self.d)

    def __sub__(self, other: ImagQuadInteger) -> ImagQuadInteger:
        return self + (-other)

    def __mul__(self, other: ImagQuadInteger) -> ImagQuadInteger:
        self._same(other)
        x1, y1, x2, y2, d = self.x, self.y, other.x, other.y, self.d
        if self.half_integral:
            # delta^2 = delta - (1 + d)/4
            c = (1 + d) // 4
            return ImagQuadInteger(x1 * x2 - c * y1 * y2, x1 * y2 + x2 * y1 + y1 * y2, d)
        return ImagQuadInteger(x1 * x2 - d * y1 * y2, x1 * y2 + x2 * y1, d)

    def __pow__(self, e: int) -> ImagQuadInteger:
        out = ImagQuadInteger(1, 0, self.d)
        for _ in range(e):
            out = out * self
        return out

    def _same(self, other: ImagQuadInteger) -> None:
        if self.d != other.d:
            raise ValueError(f"mixed fields Q(sqrt -{self.d}) and Q(sqrt -{other.d})")

    def conj(self) -> ImagQuadInteger:
        if self.half_integral:
            return ImagQuadInteger(self.x + self.y, -self.y, self.d)
        return ImagQuadInteger(self.x, -self.y, self.d)

    def norm(self) -> int:
        if self.half_integral:
            return self.x * self.x + self.x * self.y + self.y * self.y * (1 + self.d) // 4
        return self.x * self.x + self.d * self.y * self.y

    def trace(self) -> int:
        """psi + conj(psi)."""
        return 2 * self.x + self.y if self.half_integral else 2 * self.x

    def real_part(self) -> float:
        return self.x + self.y / 2 if self.half_integral else float(self.x)

    def imag_part(self) -> float:
        s = math.sqrt(self.d)
        return self.y * s / 2 if self.half_integral else self.y * s

    def __complex__(self) -> complex:
        return complex(self.real_part(), self.imag_part())

    def __str__(self) -> str:
        if self.d == 1:
            return f"{self.x}{self.y:+d}i"
        delta = f"√-{self.d}" if not self.half_integral else f"(1+√-{self.d})/2"
        return f"{self.x}{self.y:+d}*{delta}"


def units(d: int) -> list[ImagQuadInteger]:
    if d == 1:
        return [ImagQuadInteger(x, y, 1) for x, y in ((1, 0), (0, 1), (-1, 0), (0, -1))]
    if d == 3:
        # +-1, +-delta, +-(delta - 1) with delta = (1 + sqrt -3)/2 a primitive 6th root of unity
        w = ImagQuadInteger(0, 1, 3)
        return [w**k for k in range(6)]
    return [ImagQuadInteger(1, 0, d), ImagQuadInteger(-1, 0, d)]


def discriminant(d: int) -> int:
    return -d if d % 4 == 3 else -4 * d


def split_prime(p: int, d: int) -> list[ImagQuadInteger]:
    """All elements of norm p, i.e. the generators of the primes above p with all unit multiples."""
    if d not in CLASS_NUMBER_ONE:
        raise UnsupportedCMField(f"d={d} is not one of the class-number-one fields {CLASS_NUMBER_ONE}")
    if not isprime(p):
        raise ValueError(f"{p} is not prime")
    found = []
    if d % 4 == 3:
        # (2x + y)^2 + d y^2 = 4p
        ymax = math.isqrt(4 * p // d)
        for y in range(-ymax, ymax + 1):
            rest = 4 * p - d * y * y
            s = math.isqrt(rest)
            if s * s != rest:
                continue
            for u in {s, -s}:
                if (u - y) % 2 == 0:
                    found.append(ImagQuadInteger((u - y) // 2, y, d))
    else:
        ymax = math.isqrt(p // d)
        for y in range(-ymax, ymax + 1):
            rest = p - d * y * y
            s = math.isqrt(rest)
            if s * s == rest:
                for x in {s, -s}:
                    found.append(ImagQuadInteger(x, y, d))
    if not found:
        raise InertPrime(f"{p} is inert in Q(sqrt -{d})")
    return sorted(set(found))


def is_ramified(p: int, d: int) -> bool:
    return discriminant(d) % p == 0


def canonical(candidates: list[ImagQuadInteger]) -> ImagQuadInteger:
    """Prefer nonnegative real part, then nonnegative imaginary part, then the smallest coordinates."""
    return min(candidates, key=lambda z: (z.real_part() < 0, z.imag_part() < 0, z.x, z.y))


@dataclass(frozen=True)
class CMCurve:
    """y^2 = x^3 + a4 x + a6 with CM by the ring of integers of Q(sqrt -d)."""

    label: str
    d: int
    a4: int
    a6: int
    primes: tuple[int, ...] = ()

    def __post_init__(self):
        if self.d not in CLASS_NUMBER_ONE:
            raise UnsupportedCMField(f"d={self.d} is not a class-number-one parameter")

    def variety(self, p: int) -> Variety:
        """Projective model y^2 z = x^3 + a4 x z^2 + a6 z^3 in coordinates (x, y, z)."""
        terms = [((0, 2, 1), 1), ((3, 0, 0), -1), ((1, 0, 2), -self.a4), ((0, 0, 3), -self.a6)]
        poly_ = tuple((e, c % p) for e, c in terms if c % p)
        return Variety(p=p, num_vars=3, polys=(poly_,), dim_hint=1, betti_hint=(1, 2, 1), label=f"{self.label}/F_{p}")

    def discriminant(self) -> int:
        return -16 * (4 * self.a4**3 + 27 * self.a6**2)


def gross_char(curve: CMCurve, p: int, n1: int) -> ImagQuadInteger:
    """psi(P) for a prime above p, chosen among norm-p elements by 1 + p - tr(psi) = n1."""
    candidates = [z for z in split_prime(p, curve.d) if 1 + p - z.trace() == n1]
    if not candidates:
        raise NormalizationFailure(f"no element of norm {p} in Q(sqrt -{curve.d}) has trace {1 + p - n1}")
    return canonical(candidates)


def predict_count(psi: ImagQuadInteger, q: int) -> int:
    """|E(F_q)| = 1 + q - (psi + conj psi)."""
    if psi.norm() != q:
        raise NormMismatch(f"N({psi}) = {psi.norm()} != q = {q}")
    return 1 + q - psi.trace()


def predict_count_power(psi: ImagQuadInteger, r: int) -> int:
    """|E(F_{p^r})| = 1 + p^r - (psi^r + conj psi^r)."""
    return 1 + psi.norm() ** r - (psi**r).trace()


def cm_frobenius_bridge(psi: ImagQuadInteger, q: int) -> FrobeniusData:
    """FrobeniusData (1, omega, -q) with omega built from a = psi + conj psi."""
    if psi.norm() != q:
        raise NormMismatch(f"N({psi}) = {psi.norm()} != q = {q}")
    omega, _, _ = frobenius_cm(psi.trace(), q)
    return FrobeniusData.curve(omega, q)


def load_cm_table(source: str | None = None) -> list[CMCurve]:
    """Read the CM fixture table (packaged default when ``source`` is None)."""
    if source is None:
        text = resources.files("tracezeta.fixtures").joinpath("cm_curves.json").read_text()
    else:
        with open(source) as fh:
            text = fh.read()
    rows: list[dict[str, Any]] = json.loads(text)
    return [CMCurve(r["label"], r["d"], r["a4"], r["a6"], tuple(r.get("primes", ()))) for r in rows]
