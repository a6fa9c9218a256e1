"""Zeta functions from point counts and Lefschetz zeta functions from eigenvalue data."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Sequence

from .errors import FactorizationMismatch, InsufficientTerms, IrrationalCharPoly, InvalidFrobeniusData
from .quadratic import QuadraticNumber
from .series import (
    Poly,
    RationalFunction,
    TruncatedSeries,
    pdeg,
    pdivmod,
    pformat,
    pmul,
    poly,
    pprod,
    ps_exp,
    ps_log,
    rational_reconstruct,
    series_divide,
)
from .variety import CountSeries

STANDARD = "standard"
LEFSCHETZ = "lefschetz"


@dataclass(frozen=True)
class FactoredZeta:
    """Z(t) = prod_{i odd} P_i / prod_{i even} P_i over F_q, dimension n.

    ``factors[i]`` is P_i, or None for interior factors that were not
    separated (n >= 2).  ``odd_part`` is the product of the odd factors and
    ``even_interior`` the product of P_2..P_{2n-2}; these are always set.
    """

    q: int
    n: int
    factors: tuple[Poly | None, ...]
    kind: str = STANDARD
    odd_part: Poly = ()
    even_interior: Poly = ()

    def __post_init__(self):
        if len(self.factors) != 2 * self.n + 1:
            raise ValueError(f"expected {2 * self.n + 1} factors, got {len(self.factors)}")
        if not self.odd_part:
            odd = [f for i, f in enumerate(self.factors) if i % 2 == 1]
            if any(f is None for f in odd):
                raise ValueError("odd_part is required when odd factors are unknown")
            object.__setattr__(self, "odd_part", pprod(odd))
        if not self.even_interior:
            even = [f for i, f in enumerate(self.factors) if i % 2 == 0 and 0 < i < 2 * self.n]
            if any(f is None for f in even):
                raise ValueError("even_interior is required when even factors are unknown")
            object.__setattr__(self, "even_interior", pprod(even))

    @property
    def numerator(self) -> Poly:
        return self.odd_part

    @property
    def denominator(self) -> Poly:
        return pprod([self.factors[0], self.even_interior, self.factors[-1]])

    def rational(self) -> RationalFunction:
        return RationalFunction.make(self.numerator, self.denominator)

    def to_json(self) -> dict[str, Any]:
        def enc(p):
            return None if p is None else [str(c) for c in p]

        doc = {"q": self.q, "n": self.n, "factors": [enc(f) for f in self.factors], "kind": self.kind}
        if any(f is None for f in self.factors):
            doc["odd_part"] = enc(self.odd_part)
            doc["even_interior"] = enc(self.even_interior)
        return doc

    @classmethod
    def from_json(cls, doc: dict[str, Any]) -> FactoredZeta:
        def dec(p):
            return None if p is None else poly(Fraction(c) for c in p)

        return cls(
            q=doc["q"],
            n=doc["n"],
            factors=tuple(dec(f) for f in doc["factors"]),
            kind=doc.get("kind", STANDARD),
            odd_part=dec(doc.get("odd_part")) or (),
            even_interior=dec(doc.get("even_interior")) or (),
        )

    def __str__(self) -> str:
        return f"({pformat(self.numerator)}) / ({pformat(self.denominator)})"


def count_log_series(cs: CountSeries | Sequence[int], R: int | None = None) -> TruncatedSeries:
    """sum_r N_r t^r / r through t^R."""
    counts = cs.counts if isinstance(cs, CountSeries) else tuple(cs)
    R = len(counts) if R is None else R
    return TruncatedSeries([0] + [Fraction(counts[r - 1], r) for r in range(1, R + 1)])


def outer_factors(q: int, n: int, kind: str = STANDARD) -> tuple[Poly, Poly]:
    top = -(q**n) if kind == STANDARD else q**n
    return poly([1, -1]), poly([1, top])


def zeta_from_counts(
    cs: CountSeries,
    betti: Sequence[int] | None,
    n: int,
    *,
    holdout: int = 2,
    pin_outer: bool = False,
    bounds: tuple[int, int] | None = None,
) -> FactoredZeta:
    """Reconstruct Z_V(t) from N_1..N_R.

    The Pade degree bounds are (sum of odd Betti numbers, sum of even ones).
    With ``pin_outer`` the known factors (1 - t)(1 - q^n t) are multiplied
    into the series first, which lowers the denominator bound by 2 and so
    the number of counts needed.  ``holdout`` extra counts beyond the
    minimum are required and must be reproduced exactly.  Without Betti
    numbers, ``bounds`` gives the (numerator, denominator) degrees directly.
    """
    q = cs.q
    if betti is None:
        if bounds is None:
            raise ValueError("degree bounds are required when Betti numbers are unknown")
        b_odd, b_even = bounds
    else:
        if len(betti) != 2 * n + 1:
            raise ValueError(f"betti must have length {2 * n + 1}")
        b_odd = sum(b for i, b in enumerate(betti) if i % 2 == 1)
        b_even = sum(b for i, b in enumerate(betti) if i % 2 == 0)
    num_bound, den_bound = b_odd, (b_even - 2 if pin_outer else b_even)
    required = num_bound + den_bound + holdout
    if cs.R < required:
        raise InsufficientTerms(
            f"need counts through R = {required} (degree bounds ({num_bound}, {den_bound}) plus "
            f"{holdout} held out), have R = {cs.R}",
            required=required,
            available=cs.R,
        )
    P0, Ptop = outer_factors(q, n)
    Z = ps_exp(count_log_series(cs))
    if pin_outer:
        Z = Z * TruncatedSeries.from_poly(pmul(P0, Ptop), Z.R)
    rf = rational_reconstruct(Z, num_bound, den_bound)
    if pin_outer:
        numer, interior = rf.numer, rf.denom
    else:
        numer = rf.numer
        interior, rem = pdivmod(rf.denom, pmul(P0, Ptop))
        if rem:
            raise FactorizationMismatch(
                f"denominator {pformat(rf.denom)} is not divisible by (1 - t)(1 - {q**n}t)"
            )
    factors: list[Poly | None] = [None] * (2 * n + 1)
    factors[0], factors[-1] = P0, Ptop
    # a parity group with at most one nonzero Betti number splits without factoring
    for indices, product in ((range(1, 2 * n, 2), numer), (range(2, 2 * n, 2), interior)):
        if betti is None:
            carriers = list(indices) if len(indices) <= 1 else []
            if len(indices) > 1:
                continue
        else:
            carriers = [i for i in indices if betti[i] > 0]
        if len(carriers) <= 1:
            for i in indices:
                factors[i] = poly([1])
            if carriers:
                factors[carriers[0]] = product
    return FactoredZeta(q=q, n=n, factors=tuple(factors), kind=STANDARD, odd_part=numer,
                        even_interior=interior)


def _char_factor(eigs: Sequence[QuadraticNumber]) -> Poly:
    """prod_j (1 - lambda_j t) with rational coefficients, or IrrationalCharPoly."""
    groups: dict[int, list[QuadraticNumber]] = {}
    for lam in eigs:
        lam = QuadraticNumber.coerce(lam)
        groups.setdefault(lam.d, []).append(lam)
    out: Poly = poly([1])
    for d, lams in sorted(groups.items()):
        coeffs = [QuadraticNumber(1)]
        for lam in lams:
            nxt = coeffs + [QuadraticNumber(0)]
            for k in range(len(coeffs)):
                nxt[k + 1] = nxt[k + 1] - lam * coeffs[k]
            coeffs = nxt
        if any(not c.is_rational() for c in coeffs):
            raise IrrationalCharPoly(
                f"eigenvalues {[str(x) for x in lams]} are not closed under conjugation in Q(sqrt {d})"
            )
        out = pmul(out, poly(c.a for c in coeffs))
    return out


def lefschetz_zeta(eigs: Sequence[Sequence[QuadraticNumber]], q: int, n: int) -> FactoredZeta:
    """Z^L(t) with P_i = prod_j (1 - lambda_ij t); P_0 = 1 - t and P_{2n} = 1 + q^n t."""
    if len(eigs) != 2 * n + 1:
        raise InvalidFrobeniusData(f"need eigenvalue lists for degrees 0..{2 * n}")
    if [QuadraticNumber.coerce(x) for x in eigs[0]] != [QuadraticNumber(1)]:
        raise InvalidFrobeniusData("degree-0 eigenvalues must be [1]")
    if [QuadraticNumber.coerce(x) for x in eigs[-1]] != [QuadraticNumber(-(q**n))]:
        raise InvalidFrobeniusData(f"degree-{2 * n} eigenvalues must be [-q^n] = [{-(q**n)}]")
    factors = tuple(_char_factor(e) for e in eigs)
    return FactoredZeta(q=q, n=n, factors=factors, kind=LEFSCHETZ)


def expand(fz: FactoredZeta, R: int) -> TruncatedSeries:
    """Taylor coefficients of Z through t^R."""
    return series_divide(fz.numerator, fz.denominator, R)


def counts_from_zeta(fz: FactoredZeta, R: int) -> list[int | Fraction]:
    """N_r = r [t^r] log Z for r = 1..R."""
    L = ps_log(expand(fz, R))
    out = []
    for r in range(1, R + 1):
        v = r * L[r]
        out.append(int(v) if v.denominator == 1 else v)
    return out


def betti_degrees(fz: FactoredZeta) -> dict[str, int]:
    """Degrees of every factor that is available, keyed P_i / odd_part / even_interior."""
    out = {f"P_{i}": pdeg(f) if f else 0 for i, f in enumerate(fz.factors) if f is not None}
    out["odd_part"] = pdeg(fz.odd_part) if fz.odd_part else 0
    out["even_interior"] = pdeg(fz.even_interior) if fz.even_interior else 0
    return out
