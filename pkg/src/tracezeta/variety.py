"""Projective varieties given by homogeneous equations, and brute-force point counts."""

from __future__ import annotations

import hashlib
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Mapping

import numpy as np
from sympy import isprime

from . import _kernel
from .errors import EnumerationTooLarge, NotHomogeneous, ParseError
from .field import DEFAULT_BUDGET, ff_make

Monomial = tuple[tuple[int, ...], int]


@dataclass(frozen=True)
class Variety:
    """Zero locus in P^{num_vars-1} of homogeneous polynomials over GF(p).

    Each polynomial is a tuple of ``(exponent_vector, coefficient)`` pairs
    with coefficients reduced mod p and zero terms dropped.
    """

    p: int
    num_vars: int
    polys: tuple[tuple[Monomial, ...], ...]
    dim_hint: int
    betti_hint: tuple[int, ...] | None = None
    label: str = ""

    def __post_init__(self):
        if self.num_vars < 1:
            raise ParseError("num_vars must be >= 1")
        if self.dim_hint < 0:
            raise ParseError("dim must be >= 0")
        for k, poly in enumerate(self.polys):
            degrees = set()
            for exps, _ in poly:
                if len(exps) != self.num_vars:
                    raise ParseError(f"polynomial {k}: exponent vector {list(exps)} has length != {self.num_vars}")
                if any(e < 0 for e in exps):
                    raise ParseError(f"polynomial {k}: negative exponent in {list(exps)}")
                degrees.add(sum(exps))
            if len(degrees) > 1:
                raise NotHomogeneous(f"polynomial {k} mixes total degrees {sorted(degrees)}")
        if self.betti_hint is not None:
            b = self.betti_hint
            if len(b) != 2 * self.dim_hint + 1:
                raise ParseError(f"betti has length {len(b)}, expected {2 * self.dim_hint + 1}")
            if b[0] != 1 or b[-1] != 1:
                raise ParseError("betti must start and end with 1")
            if any(x < 0 for x in b):
                raise ParseError("betti numbers must be nonnegative")

    @property
    def euler_characteristic(self) -> int | None:
        if self.betti_hint is None:
            return None
        return sum((-1) ** i * b for i, b in enumerate(self.betti_hint))

    def to_json(self) -> dict[str, Any]:
        doc: dict[str, Any] = {"p": self.p, "num_vars": self.num_vars, "dim": self.dim_hint}
        if self.betti_hint is not None:
            doc["betti"] = list(self.betti_hint)
        doc["polys"] = [[{"exps": list(e), "coeff": c} for e, c in poly] for poly in self.polys]
        return doc

    def digest(self) -> str:
        """Stable content hash, used to tie reports to their input."""
        payload = json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(payload.encode()).hexdigest()[:16]


@dataclass(frozen=True)
class CountSeries:
    q: int
    counts: tuple[int, ...] = field(default_factory=tuple)

    @property
    def R(self) -> int:
        return len(self.counts)

    def to_tsv(self) -> str:
        lines = ["r\tN_r"] + [f"{r}\t{n}" for r, n in enumerate(self.counts, start=1)]
        return "\n".join(lines) + "\n"


def parse_variety(doc: Mapping[str, Any] | str) -> Variety:
    """Validate a variety document (a dict or a JSON string)."""
    if isinstance(doc, str):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, Mapping):
        raise ParseError("variety document must be a JSON object")
    try:
        p = doc["p"]
        num_vars = doc["num_vars"]
        dim = doc["dim"]
        raw_polys = doc["polys"]
    except KeyError as exc:
        raise ParseError(f"missing field {exc.args[0]!r}") from None
    for name, value in (("p", p), ("num_vars", num_vars), ("dim", dim)):
        if not isinstance(value, int) or isinstance(value, bool):
            raise ParseError(f"field {name!r} must be an integer")
    if p < 2 or not isprime(p):
        raise ParseError(f"p={p} is not prime")
    betti = doc.get("betti")
    if betti is not None:
        if not isinstance(betti, list) or not all(isinstance(b, int) for b in betti):
            raise ParseError("betti must be a list of integers")
        betti = tuple(betti)
    if not isinstance(raw_polys, list):
        raise ParseError("polys must be a list")
    polys = []
    for k, raw in enumerate(raw_polys):
        if not isinstance(raw, list):
            raise ParseError(f"polynomial {k} must be a list of terms")
        terms: dict[tuple[int, ...], int] = {}
        for term in raw:
            try:
                exps = tuple(term["exps"])
                coeff = term["coeff"]
            except (KeyError, TypeError):
                raise ParseError(f"polynomial {k}: terms need 'exps' and 'coeff'") from None
            if not all(isinstance(e, int) for e in exps) or not isinstance(coeff, int):
                raise ParseError(f"polynomial {k}: exponents and coefficients must be integers")
            terms[exps] = terms.get(exps, 0) + coeff
        polys.append(tuple((e, c % p) for e, c in terms.items() if c % p))
    return Variety(
        p=p,
        num_vars=num_vars,
        polys=tuple(polys),
        dim_hint=dim,
        betti_hint=betti,
        label=str(doc.get("label", "")),
    )


def projective_size(q: int, num_vars: int) -> int:
    """|P^{num_vars-1}(F_q)|."""
    return (q**num_vars - 1) // (q - 1)


def _block_offsets(q: int, num_vars: int) -> np.ndarray:
    offsets = [0]
    for i in range(num_vars):
        offsets.append(offsets[-1] + q ** (num_vars - 1 - i))
    return np.array(offsets, dtype=np.int64)


def _compile(V: Variety, q: int, logtab: np.ndarray):
    monos = [m for poly in V.polys for m in poly]
    exps = np.array([e for e, _ in monos], dtype=np.int64).reshape(len(monos), V.num_vars)
    clogs = np.array([logtab[c] for _, c in monos], dtype=np.int64)
    ptr = np.cumsum([0] + [len(poly) for poly in V.polys]).astype(np.int64)
    return exps, clogs, ptr


def chunk_bounds(total: int, chunks: int) -> list[tuple[int, int]]:
    """Static partition of range(total) into contiguous pieces."""
    chunks = max(1, min(chunks, total)) if total else 1
    edges = [total * i // chunks for i in range(chunks + 1)]
    return [(edges[i], edges[i + 1]) for i in range(chunks)]


def count_projective(
    V: Variety,
    r: int,
    *,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
    chunks: int | None = None,
) -> int:
    """|V(F_{p^r})| by testing every normalized projective representative."""
    if r < 1:
        raise ValueError("r must be >= 1")
    q = V.p**r
    total = projective_size(q, V.num_vars)
    if total > budget:
        raise EnumerationTooLarge(
            f"counting over F_{V.p}^{r} needs {total} point evaluations, budget is {budget}",
            size=total,
            budget=budget,
            r=r,
        )
    if not V.polys:
        return total
    F = ff_make(V.p, r)
    _, logtab, zech = F.tables
    exps, clogs, ptr = _compile(V, q, logtab)
    offsets = _block_offsets(q, V.num_vars)
    pieces = chunk_bounds(total, chunks if chunks is not None else workers)

    def run(bounds: tuple[int, int]) -> int:
        lo, hi = bounds
        return int(_kernel.count_range(lo, hi, V.num_vars, q, logtab, zech, exps, clogs, ptr, offsets))

    if workers > 1 and len(pieces) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            subtotals = list(pool.map(run, pieces))
    else:
        subtotals = [run(b) for b in pieces]
    return sum(subtotals)


def count_series(V: Variety, R: int, *, budget: int = DEFAULT_BUDGET, workers: int = 1) -> CountSeries:
    """Counts N_1..N_R; fails at the first r whose enumeration exceeds the budget."""
    if R < 1:
        raise ValueError("R must be >= 1")
    counts = []
    for r in range(1, R + 1):
        counts.append(count_projective(V, r, budget=budget, workers=workers))
    return CountSeries(q=V.p, counts=tuple(counts))

