"""Trace cohomology of varieties modeled as Z-modules of real algebraic numbers.

H^i_tr(V) is represented by a finite list of real quadratic numbers that
generate a free Z-module inside R (first generator 1).  The Frobenius
endomorphism on each degree is either a quadratic number acting by
multiplication, or an integer matrix when only its trace matters.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .errors import FieldMismatch, InvalidFrobeniusData, InvalidMatrix, NotAlgebraicInteger, RankDeficient
from .quadratic import QuadraticNumber

IntMatrix = tuple[tuple[int, ...], ...]
Endomorphism = Union[QuadraticNumber, IntMatrix]


def _coordinates(x: QuadraticNumber, basis: Sequence[int]) -> list[Fraction]:
    """Coordinates of x in the Q-basis (1, sqrt d_1, sqrt d_2, ...) given by ``basis`` = [1, d_1, ...]."""
    out = [Fraction(0)] * len(basis)
    out[0] = x.a
    if x.b:
        out[basis.index(x.d)] = x.b
    return out


def _rank(rows: list[list[Fraction]]) -> int:
    m = [list(r) for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][col] != 0:
                f = m[i][col] / m[rank][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[rank])]
        rank += 1
    return rank


@dataclass(frozen=True)
class TraceModule:
    """Free Z-module Z g_0 + ... + Z g_{r-1} in R with g_0 = 1."""

    gens: tuple[QuadraticNumber, ...]
    degree_index: int

    def __post_init__(self):
        gens = tuple(QuadraticNumber.coerce(g) for g in self.gens)
        object.__setattr__(self, "gens", gens)
        if not gens or gens[0] != 1:
            raise ValueError("the first generator of a trace module must be 1")
        if _rank(self._matrix()) < len(gens):
            raise RankDeficient(f"generators {[str(g) for g in gens]} are linearly dependent over Q")

    @property
    def rank(self) -> int:
        return len(self.gens)

    @property
    def basis_radicands(self) -> list[int]:
        return [1] + sorted({g.d for g in self.gens if g.d != 1})

    def _matrix(self) -> list[list[Fraction]]:
        basis = self.basis_radicands
        return [_coordinates(g, basis) for g in self.gens]

    def integer_coordinates(self, x: QuadraticNumber) -> list[Fraction] | None:
        """Rational coordinates of x in the generators, or None if x is outside their Q-span."""
        x = QuadraticNumber.coerce(x)
        basis = self.basis_radicands
        if x.d not in basis:
            return None
        cols = self._matrix()
        target = _coordinates(x, basis)
        # solve sum_k c_k * gens_k = x; columns are generators
        n, m = len(cols), len(basis)
        aug = [[cols[k][row] for k in range(n)] + [target[row]] for row in range(m)]
        pivots, r = [], 0
        for col in range(n):
            piv = next((i for i in range(r, m) if aug[i][col] != 0), None)
            if piv is None:
                continue
            aug[r], aug[piv] = aug[piv], aug[r]
            inv = 1 / aug[r][col]
            aug[r] = [v * inv for v in aug[r]]
            for i in range(m):
                if i != r and aug[i][col] != 0:
                    f = aug[i][col]
                    aug[i] = [v - f * w for v, w in zip(aug[i], aug[r])]
            pivots.append(col)
            r += 1
        if any(aug[i][n] != 0 for i in range(r, m)):
            return None
        coords = [Fraction(0)] * n
        for i, col in enumerate(pivots):
            coords[col] = aug[i][n]
        return coords

    def contains(self, x: QuadraticNumber) -> bool:
        coords = self.integer_coordinates(x)
        return coords is not None and all(c.denominator == 1 for c in coords)

    def __str__(self) -> str:
        return " + ".join("Z" if g == 1 else f"Z({g})" for g in self.gens)


def is_endomorphism(omega: QuadraticNumber, M: TraceModule) -> bool:
    """Whether multiplication by omega maps M into itself."""
    omega = QuadraticNumber.coerce(omega)
    if omega.d != 1 and any(g.d not in (1, omega.d) for g in M.gens):
        raise FieldMismatch(f"omega lies in Q(sqrt {omega.d}) but the module has generators outside it")
    return all(M.contains(omega * g) for g in M.gens)


def is_algebraic_integer(x: QuadraticNumber) -> bool:
    """Trace and norm both integral (equivalently, x lies in the ring of integers)."""
    if x.b == 0:
        return x.a.denominator == 1
    return (2 * x.a).denominator == 1 and x.norm().denominator == 1


def endo_trace(omega: QuadraticNumber) -> int:
    """Field trace of an algebraic integer; a rational integer is its own trace."""
    omega = QuadraticNumber.coerce(omega)
    if not is_algebraic_integer(omega):
        raise NotAlgebraicInteger(f"{omega} is not an algebraic integer")
    return int(omega.trace())


def _matrix_trace(A: IntMatrix) -> int:
    return sum(A[i][i] for i in range(len(A)))


def omega_trace(omega: Endomorphism) -> int:
    if isinstance(omega, (QuadraticNumber, int, Fraction)):
        return endo_trace(QuadraticNumber.coerce(omega))
    return _matrix_trace(omega)


def frobenius_cm(a_p: int, q: int) -> tuple[QuadraticNumber, QuadraticNumber, QuadraticNumber]:
    """(omega, lambda_1, lambda_2) with omega = a/2 + sqrt(a^2 + 4q)/2 and lambda_2 its conjugate."""
    root = QuadraticNumber.sqrt(a_p * a_p + 4 * q)
    omega = Fraction(a_p, 2) + root * Fraction(1, 2)
    lam2 = Fraction(a_p, 2) - root * Fraction(1, 2)
    return omega, omega, lam2


@dataclass(frozen=True)
class FrobeniusData:
    """Frobenius endomorphisms omega_0..omega_{2n} on H^0_tr..H^{2n}_tr.

    For a curve (``curve_pair``) H^1 always carries the two eigenvalues
    omega and -q/omega, even when omega happens to be rational.
    """

    omegas: tuple[Endomorphism, ...]
    q: int
    n: int
    curve_pair: bool = False

    def __post_init__(self):
        omegas = tuple(
            QuadraticNumber.coerce(w) if isinstance(w, (int, Fraction)) else w for w in self.omegas
        )
        object.__setattr__(self, "omegas", omegas)
        if len(omegas) != 2 * self.n + 1:
            raise InvalidFrobeniusData(f"need {2 * self.n + 1} endomorphisms, got {len(omegas)}")
        if omegas[0] != QuadraticNumber(1):
            raise InvalidFrobeniusData(f"omega_0 must be 1, got {omegas[0]}")
        if omegas[-1] != QuadraticNumber(-(self.q**self.n)):
            raise InvalidFrobeniusData(f"omega_{2 * self.n} must be -q^n = {-(self.q**self.n)}, got {omegas[-1]}")
        if self.curve_pair:
            w = omegas[1] if self.n == 1 else None
            if not isinstance(w, QuadraticNumber) or w == 0:
                raise InvalidFrobeniusData("a curve pair needs n = 1 and a nonzero quadratic omega_1")
            if not w.is_rational() and w * w.conj() != -self.q:
                raise InvalidFrobeniusData(f"omega_1 = {w} has norm {w.norm()}, expected -q = {-self.q}")

    @classmethod
    def curve(cls, omega_1: Endomorphism, q: int) -> FrobeniusData:
        pair = isinstance(omega_1, QuadraticNumber)
        return cls((QuadraticNumber(1), omega_1, QuadraticNumber(-q)), q, 1, curve_pair=pair)

    def interior_traces(self) -> list[int]:
        out = []
        for i, w in enumerate(self.omegas[1:-1], start=1):
            if self.curve_pair and i == 1:
                lam1, lam2 = self.eigenvalues(1)
                out.append(endo_trace(lam1 + lam2))
            else:
                out.append(omega_trace(w))
        return out

    def eigenvalues(self, i: int) -> list[QuadraticNumber] | None:
        """Real eigenvalues for quadratic-number endomorphisms (omega and its conjugate)."""
        w = self.omegas[i]
        if not isinstance(w, QuadraticNumber):
            return None
        if self.curve_pair and i == 1:
            return [w, QuadraticNumber(-self.q) / w]
        return [w] if w.is_rational() else [w, w.conj()]


def point_count_formula(fd: FrobeniusData) -> int:
    """1 + q^n + sum_{i=1}^{2n-1} (-1)^i tr(omega_i)."""
    return 1 + fd.q**fd.n + sum((-1) ** i * t for i, t in enumerate(fd.interior_traces(), start=1))


def lefschetz_number(fd: FrobeniusData) -> int:
    """1 - q^n + sum_{i=1}^{2n-1} (-1)^i tr(omega_i)."""
    return 1 - fd.q**fd.n + sum((-1) ** i * t for i, t in enumerate(fd.interior_traces(), start=1))


def _bareiss_det(M: list[list[int]]) -> int:
    """Exact integer determinant (fraction-free elimination)."""
    a = [list(row) for row in M]
    n = len(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] if n else 1


def _check_spd(A: Sequence[Sequence[int]]) -> list[list[int]]:
    g = len(A)
    rows = [list(r) for r in A]
    if g == 0 or any(len(r) != g for r in rows):
        raise InvalidMatrix("expected a nonempty square matrix")
    if any(not isinstance(x, int) for r in rows for x in r):
        raise InvalidMatrix("entries must be integers")
    if any(rows[i][j] != rows[j][i] for i in range(g) for j in range(g)):
        raise InvalidMatrix("matrix is not symmetric")
    # Sylvester: all leading principal minors positive
    for k in range(1, g + 1):
        if _bareiss_det([r[:k] for r in rows[:k]]) <= 0:
            raise InvalidMatrix(f"matrix is not positive definite (leading minor {k} <= 0)")
    return rows


def block_sign(A: Sequence[Sequence[int]]) -> int:
    """Sign of det [[A, I], [I, 0]] for symmetric positive definite integer A."""
    rows = _check_spd(A)
    g = len(rows)
    big = [[0] * (2 * g) for _ in range(2 * g)]
    for i in range(g):
        for j in range(g):
            big[i][j] = rows[i][j]
        big[i][g + i] = 1
        big[g + i][i] = 1
    det = _bareiss_det(big)
    return 1 if det > 0 else -1


def curve_h1(g: int, thetas: Sequence[QuadraticNumber]) -> TraceModule:
    """H^1_tr of a genus-g curve: Z + Z theta_1 + ... + Z theta_{2g-1}."""
    if g < 1:
        raise ValueError("genus must be >= 1")
    if len(thetas) != 2 * g - 1:
        raise ValueError(f"genus {g} needs {2 * g - 1} generators besides 1, got {len(thetas)}")
    return TraceModule((QuadraticNumber(1), *thetas), degree_index=1)


def cm_h1_from_omega(omega: QuadraticNumber) -> TraceModule:
    """Z + Z omega, the module on which omega acts by construction."""
    return TraceModule((QuadraticNumber(1), omega), degree_index=1)


def cm_h1_from_field(d: int) -> TraceModule:
    """Z + Z sqrt(d), the shape attached to the CM field Q(sqrt -d)."""
    return TraceModule((QuadraticNumber(1), QuadraticNumber.sqrt(d)), degree_index=1)


def trivial_module(degree_index: int) -> TraceModule:
    """H^0_tr and H^{2n}_tr, both Z."""
    return TraceModule((QuadraticNumber(1),), degree_index=degree_index)
