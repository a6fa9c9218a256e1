"""Exact truncated power series and rational functions over Q."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InsufficientTerms, NotExponentiable, NotLoggable, NotRational

Poly = tuple[Fraction, ...]


# -- dense polynomials over Q, low degree first, no trailing zeros --

def poly(coeffs: Iterable) -> Poly:
    c = [Fraction(x) for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def pdeg(a: Poly) -> int:
    return len(a) - 1


def padd(a: Poly, b: Poly) -> Poly:
    n = max(len(a), len(b))
    return poly((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n))


def pneg(a: Poly) -> Poly:
    return tuple(-x for x in a)


def psub(a: Poly, b: Poly) -> Poly:
    return padd(a, pneg(b))


def pscale(a: Poly, s) -> Poly:
    return poly(x * s for x in a)


def pmul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return poly(out)


def pprod(factors: Iterable[Poly]) -> Poly:
    out: Poly = (Fraction(1),)
    for f in factors:
        out = pmul(out, f)
    return out


def pdivmod(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    quo = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    while len(rem) >= len(b) and rem:
        c = rem[-1] / lead
        shift = len(rem) - len(b)
        quo[shift] = c
        for i, y in enumerate(b):
            rem[shift + i] -= c * y
        rem.pop()
        while rem and rem[-1] == 0:
            rem.pop()
    return poly(quo), poly(rem)


def pgcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd (the empty tuple if both are zero)."""
    while b:
        a, b = b, pdivmod(a, b)[1]
    return pscale(a, 1 / a[-1]) if a else a


def peval(a: Poly, x):
    acc = Fraction(0) if not isinstance(x, float) else 0.0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def pcompose_neg(a: Poly) -> Poly:
    """a(-t)."""
    return poly(c if i % 2 == 0 else -c for i, c in enumerate(a))


def pformat(a: Poly, var: str = "t") -> str:
    if not a:
        return "0"
    parts = []
    for i, c in enumerate(a):
        if c == 0:
            continue
        mag = abs(c)
        coef = "" if (mag == 1 and i > 0) else str(mag)
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        term = coef + ("*" if coef and mono else "") + mono
        parts.append(("-" if c < 0 else "+", term))
    head_sign, head = parts[0]
    out = ("-" if head_sign == "-" else "") + head
    for sign, term in parts[1:]:
        out += f" {sign} {term}"
    return out


@dataclass(frozen=True)
class TruncatedSeries:
    """c_0 + c_1 t + ... + c_R t^R, known exactly up to t^R."""

    coeffs: tuple[Fraction, ...]

    def __init__(self, coeffs: Iterable):
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in coeffs))
        if not self.coeffs:
            raise ValueError("a truncated series needs at least the constant term")

    @property
    def R(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, j: int) -> Fraction:
        return self.coeffs[j]

    def truncate(self, R: int) -> TruncatedSeries:
        return TruncatedSeries(self.coeffs[: R + 1])

    def __add__(self, other: TruncatedSeries) -> TruncatedSeries:
        R = min(self.R, other.R)
        return TruncatedSeries(self.coeffs[j] + other.coeffs[j] for j in range(R + 1))

    def __sub__(self, other: TruncatedSeries) -> TruncatedSeries:
        R = min(self.R, other.R)
        return TruncatedSeries(self.coeffs[j] - other.coeffs[j] for j in range(R + 1))

    def __mul__(self, other: TruncatedSeries) -> TruncatedSeries:
        R = min(self.R, other.R)
        a, b = self.coeffs, other.coeffs
        return TruncatedSeries(sum((a[i] * b[j - i] for i in range(j + 1)), Fraction(0)) for j in range(R + 1))

    @classmethod
    def from_poly(cls, p: Sequence, R: int) -> TruncatedSeries:
        return cls([p[j] if j < len(p) else 0 for j in range(R + 1)])

    def __repr__(self) -> str:
        return f"TruncatedSeries({pformat(poly(self.coeffs))} + O(t^{self.R + 1}))"


def ps_exp(f: TruncatedSeries) -> TruncatedSeries:
    """exp(f) for f(0) = 0, from g' = f' g."""
    if f[0] != 0:
        raise NotExponentiable(f"constant term is {f[0]}, expected 0")
    R = f.R
    g = [Fraction(1)] + [Fraction(0)] * R
    for n in range(1, R + 1):
        g[n] = sum((k * f[k] * g[n - k] for k in range(1, n + 1)), Fraction(0)) / n
    return TruncatedSeries(g)


def ps_log(f: TruncatedSeries) -> TruncatedSeries:
    """log(f) for f(0) = 1, from f g' = f'."""
    if f[0] != 1:
        raise NotLoggable(f"constant term is {f[0]}, expected 1")
    R = f.R
    g = [Fraction(0)] * (R + 1)
    for n in range(1, R + 1):
        g[n] = f[n] - sum((k * g[k] * f[n - k] for k in range(1, n)), Fraction(0)) / n
    return TruncatedSeries(g)


def series_divide(num: Poly, den: Poly, R: int) -> TruncatedSeries:
    """Taylor coefficients of num/den through t^R (den(0) != 0)."""
    if not den or den[0] == 0:
        raise ZeroDivisionError("denominator vanishes at t = 0")
    out = []
    inv0 = 1 / den[0]
    for j in range(R + 1):
        s = num[j] if j < len(num) else Fraction(0)
        for i in range(1, min(j, len(den) - 1) + 1):
            s -= den[i] * out[j - i]
        out.append(s * inv0)
    return TruncatedSeries(out)


@dataclass(frozen=True)
class RationalFunction:
    """numer/denom with denom(0) = 1 and gcd(numer, denom) = 1."""

    numer: Poly
    denom: Poly

    @classmethod
    def make(cls, numer: Iterable, denom: Iterable) -> RationalFunction:
        n, d = poly(numer), poly(denom)
        if not d:
            raise ZeroDivisionError("zero denominator")
        g = pgcd(n, d) if n else poly([1])
        if pdeg(g) > 0:
            n, d = pdivmod(n, g)[0], pdivmod(d, g)[0]
        if not n:
            d = poly([1])
        if d[0] == 0:
            raise ValueError("denominator vanishes at t = 0 after reduction")
        s = 1 / d[0]
        return cls(pscale(n, s), pscale(d, s))

    def expand(self, R: int) -> TruncatedSeries:
        return series_divide(self.numer, self.denom, R)

    def __mul__(self, other: RationalFunction) -> RationalFunction:
        return RationalFunction.make(pmul(self.numer, other.numer), pmul(self.denom, other.denom))

    def inverse(self) -> RationalFunction:
        return RationalFunction.make(self.denom, self.numer)

    def __str__(self) -> str:
        return f"({pformat(self.numer)})/({pformat(self.denom)})"


def _solve_exact(rows: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction] | None:
    """One solution of rows @ x = rhs (free variables set to 0), or None if inconsistent."""
    n = len(rows[0]) if rows else 0
    m = [list(r) + [b] for r, b in zip(rows, rhs)]
    pivots = []
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][col]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col] != 0:
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    for i in range(r, len(m)):
        if m[i][n] != 0:
            return None
    x = [Fraction(0)] * n
    for i, col in enumerate(pivots):
        x[col] = m[i][n]
    return x


def rational_reconstruct(f: TruncatedSeries, max_num_deg: int, max_den_deg: int) -> RationalFunction:
    """Recover N/D with deg N <= max_num_deg, deg D <= max_den_deg, D(0) = 1 from f.

    The Hankel system uses coefficients up to t^(max_num_deg + max_den_deg);
    the result is then checked against every coefficient of ``f``.
    """
    m, n = max_num_deg, max_den_deg
    needed = m + n + 1
    if f.R + 1 < needed:
        raise InsufficientTerms(
            f"degree bounds ({m}, {n}) need {needed} coefficients (through t^{m + n}), got {f.R + 1}",
            required=needed,
            available=f.R + 1,
        )
    c = f.coeffs
    # sum_{i=0..n} d_i c_{j-i} = 0 for j = m+1..m+n, with d_0 = 1
    rows, rhs = [], []
    for j in range(m + 1, m + n + 1):
        rows.append([c[j - i] if j - i >= 0 else Fraction(0) for i in range(1, n + 1)])
        rhs.append(-c[j])
    sol = _solve_exact(rows, rhs) if n else []
    if sol is None:
        raise NotRational(f"no denominator of degree <= {n} fits the coefficients")
    den = poly([1] + sol)
    num = poly(sum((den[i] * c[j - i] for i in range(min(j, len(den) - 1) + 1)), Fraction(0)) for j in range(m + 1))
    rf = RationalFunction.make(num, den)
    check = rf.expand(f.R)
    for j in range(f.R + 1):
        if check[j] != c[j]:
            raise NotRational(
                f"[{m}/{n}] approximant disagrees with the input at t^{j}: {check[j]} != {c[j]}"
            )
    return rf
