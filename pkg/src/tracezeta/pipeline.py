"""End-to-end runs: count, reconstruct, build Frobenius data, and verify."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Sequence

from .cm import CMCurve, cm_frobenius_bridge, gross_char, predict_count, predict_count_power, split_prime
from .errors import ParseError, TraceZetaError
from .field import DEFAULT_BUDGET
from .quadratic import QuadraticNumber
from .series import Poly, pdeg, pformat, poly
from .trace import (
    FrobeniusData,
    block_sign,
    cm_h1_from_field,
    cm_h1_from_omega,
    frobenius_cm,
    is_endomorphism,
    lefschetz_number,
    point_count_formula,
    trivial_module,
)
from .variety import CountSeries, Variety, count_series
from .verify import (
    FAIL,
    PASS,
    REPORTED,
    CheckResult,
    VerificationReport,
    block_sign_report,
    index_minus_one,
    lefschetz_vs_formula,
    smale_probe,
    trace_consistency,
    verify_betti,
    verify_functional_eq,
    verify_rationality,
    verify_rh_modulus,
)
from .zeta import FactoredZeta, lefschetz_zeta, zeta_from_counts


def minimal_R(betti: Sequence[int], holdout: int = 2, pin_outer: bool = False) -> int:
    """Fewest counts that determine Z(t) and still leave ``holdout`` terms to check."""
    return sum(betti) - (2 if pin_outer else 0) + holdout


def companion(P: Poly) -> tuple[tuple[int, ...], ...]:
    """Integer companion matrix whose eigenvalues are the reciprocal roots of P."""
    d = pdeg(P)
    if any(c.denominator != 1 for c in P):
        raise ValueError(f"{pformat(P)} has non-integral coefficients")
    rows = [[0] * d for _ in range(d)]
    for i in range(1, d):
        rows[i][i - 1] = 1
    # characteristic polynomial x^d + P_1 x^{d-1} + ... + P_d
    for i in range(d):
        rows[i][d - 1] = -int(P[d - i])
    return tuple(tuple(r) for r in rows)


def frobenius_from_zeta(fz: FactoredZeta) -> FrobeniusData:
    """Frobenius data whose traces reproduce the interior factors of Z.

    Degree-1 factors give a rational eigenvalue; the curve factor of degree 2
    gives omega = a/2 + sqrt(a^2 + 4q)/2 with a = -[t]P_1; anything larger
    is carried as an integer companion matrix (trace only).
    """
    omegas: list[Any] = [QuadraticNumber(1)]
    for i in range(1, 2 * fz.n):
        P = fz.factors[i]
        if P is None:
            raise ValueError(f"P_{i} was not separated; Frobenius data needs every interior factor")
        d = pdeg(P)
        if d == 0:
            omegas.append(())
        elif d == 1:
            omegas.append(QuadraticNumber(-P[1]))
        elif d == 2 and fz.n == 1:
            omegas.append(frobenius_cm(int(-P[1]), fz.q)[0])
        else:
            omegas.append(companion(P))
    omegas.append(QuadraticNumber(-(fz.q**fz.n)))
    pair = fz.n == 1 and pdeg(fz.factors[1]) == 2
    return FrobeniusData(tuple(omegas), fz.q, fz.n, curve_pair=pair)


def eigenvalue_lists(fd: FrobeniusData) -> list[list[QuadraticNumber]] | None:
    """Per-degree real eigenvalues, or None when some degree is only known through a matrix."""
    out = []
    for i, w in enumerate(fd.omegas):
        if isinstance(w, QuadraticNumber):
            out.append(fd.eigenvalues(i))
        elif len(w) == 0:
            out.append([])
        else:
            return None
    return out


def stability_check(fd: FrobeniusData, name: str = "endomorphism_stability") -> CheckResult:
    results = {}
    for i, w in enumerate(fd.omegas):
        if not isinstance(w, QuadraticNumber):
            continue
        module = trivial_module(i) if w.is_rational() else cm_h1_from_omega(w)
        results[f"omega_{i}"] = {"omega": w, "module": str(module), "stable": is_endomorphism(w, module)}
    ok = all(r["stable"] for r in results.values())
    detail = "; ".join(f"{k}={v['omega']} on {v['module']}: {'stable' if v['stable'] else 'NOT stable'}" for k, v in results.items())
    return CheckResult(name, PASS if ok else FAIL, detail, results)


def cm_field_module_check(omega: QuadraticNumber, d: int, name: str = "cm_field_module") -> CheckResult:
    """Compare the Z + Z sqrt(d) module with the field that omega actually lives in."""
    values: dict[str, Any] = {"d": d, "omega": omega, "omega_field": omega.d}
    try:
        M = cm_h1_from_field(d)
    except TraceZetaError as exc:
        values["error"] = str(exc)
        return CheckResult(name, REPORTED, f"Z + Z sqrt({d}) is not a rank-2 module: {exc}", values)
    values["module"] = str(M)
    try:
        stable = is_endomorphism(omega, M)
        values["stable"] = stable
        detail = f"omega = {omega} on {M}: {'stable' if stable else 'not stable'}"
    except TraceZetaError as exc:
        values["error"] = str(exc)
        detail = f"omega = {omega} lies in Q(sqrt {omega.d}), module in Q(sqrt {d}): {type(exc).__name__}"
    return CheckResult(name, REPORTED, detail, values)


@dataclass
class VerifyOutcome:
    report: VerificationReport
    counts: CountSeries
    zeta: FactoredZeta
    frobenius: FrobeniusData | None
    lefschetz: FactoredZeta | None


def verify_variety(
    V: Variety,
    *,
    R: int | None = None,
    holdout: int = 2,
    tol: float = 1e-9,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
    pin_outer: bool = False,
    cm_d: int | None = None,
    counts: CountSeries | None = None,
) -> VerifyOutcome:
    """Full report for one variety with known Betti numbers."""
    if V.betti_hint is None:
        raise ParseError("verification needs the 'betti' field")
    betti, n = V.betti_hint, V.dim_hint
    R = R if R is not None else minimal_R(betti, holdout, pin_outer)
    cs = counts if counts is not None else count_series(V, R, budget=budget, workers=workers)
    fz = zeta_from_counts(cs, betti, n, holdout=holdout, pin_outer=pin_outer)
    q = cs.q
    report = VerificationReport(
        inputs={
            "label": V.label,
            "variety_digest": V.digest(),
            "p": V.p,
            "dim": n,
            "betti": list(betti),
            "counts": list(cs.counts),
            "holdout": holdout,
            "pin_outer": pin_outer,
            "tol": tol,
            "zeta": fz.to_json(),
        }
    )
    report.add(verify_rationality(cs, fz, holdout))
    report.add(verify_functional_eq(fz, V.euler_characteristic))
    report.add(verify_betti(fz, betti))
    for i, P in enumerate(fz.factors):
        if P is not None:
            report.add(verify_rh_modulus(P, q, i, tol, name=f"rh_modulus_P{i}"))

    fd = lz = None
    if all(P is not None for P in fz.factors):
        fd = frobenius_from_zeta(fz)
        N1 = cs.counts[0]
        formula = point_count_formula(fd)
        report.add(
            CheckResult(
                "point_count_formula",
                PASS if formula == N1 else FAIL,
                f"1 + q^n + sum (-1)^i tr(omega_i) = {formula}, counted N_1 = {N1}",
                {"formula": formula, "N1": N1, "interior_traces": fd.interior_traces()},
            )
        )
        report.add(lefschetz_vs_formula(fd, N1))
        report.add(index_minus_one(N1, lefschetz_number(fd), q, n))
        report.add(stability_check(fd))
        if n == 1:
            report.add(trace_consistency(fz.factors[1], fd, cs))
        eigs = eigenvalue_lists(fd)
        if eigs is not None:
            lz = lefschetz_zeta(eigs, q, n)
            report.add(smale_probe(fz, lz))
            for i in range(1, 2 * n):
                if pdeg(lz.factors[i]) > 0:
                    report.add(
                        verify_rh_modulus(lz.factors[i], q, i, tol, name=f"rh_modulus_lefschetz_P{i}", expected=REPORTED)
                    )
        if cm_d is not None and n == 1 and isinstance(fd.omegas[1], QuadraticNumber):
            report.add(cm_field_module_check(fd.omegas[1], cm_d))
    report.add(block_sign_report())
    return VerifyOutcome(report, cs, fz, fd, lz)


def cm_report(curves: Sequence[CMCurve], *, budget: int = DEFAULT_BUDGET, workers: int = 1) -> VerificationReport:
    """Grössencharacter pipeline per (curve, prime): selection at r=1, prediction at r=2."""
    report = VerificationReport(inputs={"curves": [c.label for c in curves]})
    for curve in curves:
        for p in curve.primes:
            tag = f"{curve.label} @ {p}"
            V = curve.variety(p)
            cs = count_series(V, 2, budget=budget, workers=workers)
            n1, n2 = cs.counts
            psi = gross_char(curve, p, n1)
            assoc = split_prime(p, curve.d)
            pred1 = predict_count(psi, p)
            pred2 = predict_count_power(psi, 2)
            fd = cm_frobenius_bridge(psi, p)
            omega = fd.omegas[1]
            lam1, lam2 = omega, omega.conj()
            base = {"psi": str(psi), "trace": psi.trace(), "N1": n1, "N2": n2, "norm_p_elements": len(assoc)}
            report.add(
                CheckResult(
                    f"gross_r1[{tag}]",
                    PASS if pred1 == n1 else FAIL,
                    f"psi = {psi}, 1 + p - tr(psi) = {pred1}, counted {n1}",
                    base | {"predicted": pred1},
                )
            )
            report.add(
                CheckResult(
                    f"gross_r2[{tag}]",
                    PASS if pred2 == n2 else FAIL,
                    f"1 + p^2 - tr(psi^2) = {pred2}, counted over F_{p}^2: {n2}",
                    base | {"predicted": pred2},
                )
            )
            vieta = (lam1 + lam2 == psi.trace()) and (lam1 * lam2 == -p)
            pcf = point_count_formula(fd)
            report.add(
                CheckResult(
                    f"frobenius_bridge[{tag}]",
                    PASS if vieta and pcf == pred1 else FAIL,
                    f"omega = {omega}, lambda1 + lambda2 = {lam1 + lam2}, lambda1 lambda2 = {lam1 * lam2}, formula {pcf}",
                    {"omega": omega, "lambda1": lam1, "lambda2": lam2, "point_count_formula": pcf},
                )
            )
            report.add(stability_check(fd, name=f"endomorphism_stability[{tag}]"))
            report.add(cm_field_module_check(omega, curve.d, name=f"cm_field_module[{tag}]"))
    return report


def trace_report(a_p: int, q: int, block_matrices: Sequence[Sequence[Sequence[int]]] = ()) -> VerificationReport:
    """Frobenius data of an elliptic curve with trace a_p, plus block-sign evaluations."""
    omega, lam1, lam2 = frobenius_cm(a_p, q)
    fd = FrobeniusData.curve(omega, q)
    module = cm_h1_from_omega(omega)
    report = VerificationReport(
        inputs={"a_p": a_p, "q": q, "omega": str(omega), "module": str(module), "rank": module.rank}
    )
    vieta = lam1 + lam2 == a_p and lam1 * lam2 == -q
    report.add(
        CheckResult(
            "eigenvalues",
            PASS if vieta else FAIL,
            f"lambda = {lam1}, {lam2}; sum {lam1 + lam2}, product {lam1 * lam2}",
            {"lambda1": lam1, "lambda2": lam2},
        )
    )
    report.add(stability_check(fd))
    pcf, L = point_count_formula(fd), lefschetz_number(fd)
    report.add(
        CheckResult(
            "point_count_formula",
            PASS if pcf - L == 2 * q else FAIL,
            f"N_1 = {pcf}, L = {L}, difference {pcf - L}",
            {"N1": pcf, "L": L},
        )
    )
    report.add(index_minus_one(pcf, L, q, 1))
    half = QuadraticNumber(Fraction(1, 2))
    report.add(
        CheckResult(
            "endomorphism_negative_control",
            PASS if not is_endomorphism(half, module) else FAIL,
            f"1/2 on {module}: {'stable' if is_endomorphism(half, module) else 'not stable'}",
            {},
        )
    )
    for k, A in enumerate(block_matrices):
        s = block_sign(A)
        report.add(
            CheckResult(
                f"block_sign[{k}]",
                REPORTED,
                f"g={len(A)}: sign {s:+d}, (-1)^g = {(-1) ** len(A):+d}",
                {"A": [list(r) for r in A], "sign": s, "expected_from_linear_algebra": (-1) ** len(A)},
            )
        )
    report.add(block_sign_report())
    return report


def standard_zeta_from_trace(a_p: int, q: int) -> FactoredZeta:
    """Zeta of an elliptic curve with N_1 = 1 + q - a_p."""
    return FactoredZeta(q=q, n=1, factors=(poly([1, -1]), poly([1, -a_p, q]), poly([1, -q])))


def lefschetz_report(z_std: FactoredZeta, fd: FrobeniusData, tol: float = 1e-9) -> tuple[FactoredZeta | None, VerificationReport]:
    report = VerificationReport(inputs={"q": z_std.q, "n": z_std.n, "zeta": z_std.to_json()})
    eigs = eigenvalue_lists(fd)
    if eigs is None:
        report.add(CheckResult("lefschetz_zeta", REPORTED, "eigenvalues only known through matrices; Z^L not formed", {}))
        return None, report
    lz = lefschetz_zeta(eigs, fd.q, fd.n)
    report.inputs["lefschetz_zeta"] = lz.to_json()
    report.add(CheckResult("lefschetz_zeta", REPORTED, f"Z^L(t) = {lz}", {"Z_L": str(lz)}))
    report.add(smale_probe(z_std, lz))
    for i in range(1, 2 * fd.n):
        if pdeg(lz.factors[i]) > 0:
            report.add(verify_rh_modulus(lz.factors[i], fd.q, i, tol, name=f"rh_modulus_lefschetz_P{i}", expected=REPORTED))
    return lz, report
