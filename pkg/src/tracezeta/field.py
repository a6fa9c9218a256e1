"""Exact arithmetic in GF(p^k).

Elements are polynomials over GF(p) reduced modulo a fixed monic irreducible
polynomial, stored as coefficient tuples (low degree first).  Each element
also has an integer code ``sum(c_i * p**i)``; enumeration order and the
lookup tables used by the counting kernel are both expressed in that code.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

import numpy as np
from sympy import factorint, isprime

from .errors import CompositeModulus, EnumerationTooLarge, InvalidDegree

DEFAULT_BUDGET = 10**7


# -- polynomials over GF(p), coefficient lists low-to-high, no trailing zeros --

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _polymod(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    dm = len(m) - 1
    inv = pow(m[-1], -1, p)
    while len(a) - 1 >= dm:
        c = a[-1] * inv % p
        shift = len(a) - 1 - dm
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mc) % p
        _trim(a)
    return a


def _polymulmod(a: Sequence[int], b: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] += x * y
    return _polymod(prod, m, p)


def _polypowmod(a: Sequence[int], e: int, m: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = _polymod(a, m, p)
    while e:
        if e & 1:
            result = _polymulmod(result, base, m, p)
        base = _polymulmod(base, base, m, p)
        e >>= 1
    return result


def _polygcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a, b = _trim([c % p for c in a]), _trim([c % p for c in b])
    while b:
        a, b = b, _polymod(a, b, p)
    return a


def _polysub(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Rabin's test for a monic polynomial over GF(p)."""
    k = len(f) - 1
    if k < 1:
        return False
    if k == 1:
        return True
    x = [0, 1]
    if _polysub(_polypowmod(x, p**k, f, p), x, p):
        return False
    for ell in factorint(k):
        h = _polysub(_polypowmod(x, p ** (k // ell), f, p), x, p)
        if len(_polygcd(f, h, p)) != 1:
            return False
    return True


@functools.cache
def ff_make(p: int, k: int) -> FieldDescriptor:
    """Build GF(p^k) with the smallest monic irreducible modulus.

    Candidates ``c_0 + c_1 x + ... + x^k`` are scanned in increasing order of
    the integer code ``sum(c_i p^i)``; GF(8) gets ``x^3 + x + 1``.
    """
    if not isinstance(p, int) or p < 2 or not isprime(p):
        raise CompositeModulus(f"{p} is not prime")
    if not isinstance(k, int) or k < 1:
        raise InvalidDegree(f"extension degree must be >= 1, got {k}")
    if k == 1:
        return FieldDescriptor(p, 1, (0, 1))
    for code in range(p**k):
        low = [(code // p**i) % p for i in range(k)]
        if low[0] == 0:
            continue
        if is_irreducible(low + [1], p):
            return FieldDescriptor(p, k, tuple(low) + (1,))
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


@dataclass(frozen=True, eq=True)
class FieldDescriptor:
    p: int
    k: int
    modulus_poly: tuple[int, ...]

    @property
    def q(self) -> int:
        return self.p**self.k

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.k})" if self.k > 1 else f"GF({self.p})"

    def __call__(self, value: int | Sequence[int]) -> FieldElement:
        """Coerce an integer residue or a coefficient sequence."""
        if isinstance(value, int):
            coeffs = [value % self.p] + [0] * (self.k - 1)
        else:
            coeffs = _polymod(list(value), self.modulus_poly, self.p) if self.k > 1 else [value[0] % self.p if value else 0]
            coeffs = coeffs + [0] * (self.k - len(coeffs))
        return FieldElement(self, tuple(coeffs))

    def zero(self) -> FieldElement:
        return self(0)

    def one(self) -> FieldElement:
        return self(1)

    def gen(self) -> FieldElement:
        """The class of x (for k=1, the residue 0 by the ``x - 0`` convention)."""
        return self([0, 1]) if self.k > 1 else self(0)

    def from_code(self, code: int) -> FieldElement:
        p = self.p
        return FieldElement(self, tuple((code // p**i) % p for i in range(self.k)))

    # -- tables for the vectorized/compiled counting path --

    @cached_property
    def primitive_element(self) -> FieldElement:
        order = self.q - 1
        prime_factors = list(factorint(order)) if order > 1 else []
        for code in range(1, self.q):
            g = self.from_code(code)
            if all(g ** (order // ell) != self.one() for ell in prime_factors):
                return g
        raise AssertionError("multiplicative group is not cyclic")  # pragma: no cover

    @cached_property
    def tables(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Discrete log tables ``(exp, log, zech)`` relative to the primitive element.

        ``exp[e]`` is the code of g^e; ``log[code]`` inverts it with
        ``log[0] = q - 1`` as the zero sentinel; ``zech[e]`` is ``log(1 + g^e)``.
        """
        q, p, m = self.q, self.p, self.modulus_poly
        zero = q - 1
        exp = np.zeros(q - 1, dtype=np.int64)
        log = np.full(q, zero, dtype=np.int64)
        g = list(self.primitive_element.coeffs)
        cur = [1]
        for e in range(q - 1):
            code = sum(c * p**i for i, c in enumerate(cur))
            exp[e] = code
            log[code] = e
            cur = _polymulmod(cur, g, m, p) if self.k > 1 else [cur[0] * g[0] % p]
        zech = np.empty(q - 1, dtype=np.int64)
        for e in range(q - 1):
            # adding 1 only touches the constant coefficient of the code
            code = int(exp[e])
            c0 = code % p
            plus_one = code - c0 + (c0 + 1) % p
            zech[e] = log[plus_one]
        return exp, log, zech


@dataclass(frozen=True)
class FieldElement:
    descriptor: FieldDescriptor
    coeffs: tuple[int, ...]

    def _other(self, other: FieldElement | int) -> FieldElement:
        if isinstance(other, int):
            return self.descriptor(other)
        if isinstance(other, FieldElement):
            if other.descriptor != self.descriptor:
                raise ValueError(f"mixed fields {self.descriptor!r} and {other.descriptor!r}")
            return other
        return NotImplemented

    @property
    def code(self) -> int:
        p = self.descriptor.p
        return sum(c * p**i for i, c in enumerate(self.coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        p = self.descriptor.p
        return FieldElement(self.descriptor, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> FieldElement:
        p = self.descriptor.p
        return FieldElement(self.descriptor, tuple(-a % p for a in self.coeffs))

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        fd = self.descriptor
        if fd.k == 1:
            return FieldElement(fd, ((self.coeffs[0] * other.coeffs[0]) % fd.p,))
        prod = _polymulmod(_trim(list(self.coeffs)), _trim(list(other.coeffs)), fd.modulus_poly, fd.p)
        return FieldElement(fd, tuple(prod + [0] * (fd.k - len(prod))))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> FieldElement:
        if e < 0:
            return self.inverse() ** (-e)
        result = self.descriptor.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self) -> FieldElement:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return self ** (self.descriptor.q - 2)

    def __truediv__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __repr__(self) -> str:
        if self.descriptor.k == 1:
            return str(self.coeffs[0])
        terms = [f"{c}" if i == 0 else f"{c}*x^{i}" for i, c in enumerate(self.coeffs) if c]
        return " + ".join(terms) or "0"


def ff_frobenius(x: FieldElement) -> FieldElement:
    """x -> x^p."""
    return x ** x.descriptor.p


def ff_enumerate(descriptor: FieldDescriptor, budget: int = DEFAULT_BUDGET) -> Iterator[FieldElement]:
    """All elements of the field, ordered by integer code."""
    if descriptor.q > budget:
        raise EnumerationTooLarge(
            f"{descriptor!r} has {descriptor.q} elements, budget is {budget}",
            size=descriptor.q,
            budget=budget,
        )
    p, k = descriptor.p, descriptor.k
    return (FieldElement(descriptor, tuple(reversed(digits))) for digits in itertools.product(range(p), repeat=k))
