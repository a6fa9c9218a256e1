import pytest

from tracezeta.cm import (
    CMCurve,
    ImagQuadInteger,
    canonical,
    cm_frobenius_bridge,
    gross_char,
    is_ramified,
    load_cm_table,
    predict_count,
    predict_count_power,
    split_prime,
    units,
)
from tracezeta.errors import InertPrime, NormalizationFailure, NormMismatch, UnsupportedCMField
from tracezeta.pipeline import cm_report
from tracezeta.quadratic import QuadraticNumber as Q
from tracezeta.variety import count_projective, count_series
from tracezeta.verify import PASS

CURVES = load_cm_table()


def test_table_has_both_curves():
    assert [(c.d, c.a4, c.a6, c.primes) for c in CURVES] == [(1, -1, 0, (5, 13)), (3, 0, 1, (7, 13))]


@pytest.mark.parametrize("p,d,count", [(5, 1, 8), (13, 1, 8), (7, 3, 12), (13, 3, 12)])
def test_norm_p_elements_are_unit_multiples_of_two_primes(p, d, count):
    elems = split_prime(p, d)
    assert len(elems) == count
    assert all(z.norm() == p for z in elems)
    assert len(units(d)) * 2 == count


def test_inert_and_unsupported():
    with pytest.raises(InertPrime):
        split_prime(7, 1)
    with pytest.raises(InertPrime):
        split_prime(5, 3)
    with pytest.raises(UnsupportedCMField):
        split_prime(5, 5)
    with pytest.raises(UnsupportedCMField):
        CMCurve("bad", 5, 1, 1)


def test_ramification():
    assert is_ramified(2, 1) and is_ramified(3, 3)
    assert not is_ramified(5, 1)


@pytest.mark.parametrize("d", [1, 2, 3, 7, 11])
def test_imaginary_quadratic_arithmetic(d):
    a, b = ImagQuadInteger(2, 1, d), ImagQuadInteger(-1, 3, d)
    assert (a * b).norm() == a.norm() * b.norm()
    assert (a * b).conj() == a.conj() * b.conj()
    assert a * a.conj() == ImagQuadInteger(a.norm(), 0, d)
    assert abs(complex(a * b) - complex(a) * complex(b)) < 1e-9
    assert a.trace() == round(2 * complex(a).real)
    assert all(u.norm() == 1 for u in units(d))


def test_canonical_prefers_nonnegative_parts():
    assert canonical([ImagQuadInteger(-1, -2, 1), ImagQuadInteger(-1, 2, 1)]) == ImagQuadInteger(-1, 2, 1)
    assert canonical([ImagQuadInteger(-1, 2, 1), ImagQuadInteger(1, -2, 1)]) == ImagQuadInteger(1, -2, 1)


@pytest.mark.parametrize("curve", CURVES, ids=lambda c: c.label)
def test_character_predicts_counts_at_r_1_and_2(curve):
    for p in curve.primes:
        V = curve.variety(p)
        n1, n2 = count_projective(V, 1), count_projective(V, 2)
        psi = gross_char(curve, p, n1)
        assert psi.norm() == p
        assert predict_count(psi, p) == n1
        assert predict_count_power(psi, 2) == n2
        ties = [z for z in split_prime(p, curve.d) if z.trace() == psi.trace()]
        assert len(ties) >= 2 and psi == canonical(ties)
        assert psi.imag_part() >= 0


def test_e1_character_at_5():
    psi = gross_char(CURVES[0], 5, 8)
    assert psi.trace() == -2
    assert predict_count_power(psi, 2) == 32


def test_selection_failure_and_norm_mismatch():
    with pytest.raises(NormalizationFailure):
        gross_char(CURVES[0], 5, 100)
    with pytest.raises(NormMismatch):
        predict_count(ImagQuadInteger(1, 2, 1), 7)


def test_bridge_to_real_frobenius():
    psi = gross_char(CURVES[0], 5, 8)
    fd = cm_frobenius_bridge(psi, 5)
    omega = fd.omegas[1]
    assert omega == Q(-1, 1, 6)
    assert omega * omega.conj() == -5


def test_variety_model():
    V = CURVES[1].variety(7)
    assert count_series(V, 1).counts[0] == 1 + 7 - gross_char(CURVES[1], 7, count_series(V, 1).counts[0]).trace()
    assert V.betti_hint == (1, 2, 1)


def test_cm_report_passes():
    report = cm_report(CURVES)
    assert report.ok
    assert all(report.get(f"gross_r2[{c.label} @ {p}]").status == PASS for c in CURVES for p in c.primes)


def test_split_prime_13_gaussian():
    expected = {(x, y) for x in (3, -3, 2, -2) for y in (3, -3, 2, -2) if x * x + y * y == 13}
    assert {(z.x, z.y) for z in split_prime(13, 1)} == expected


def test_trace_zero_prediction_is_p_plus_one():
    # sqrt(-2) has norm 2 and trace 0
    psi = ImagQuadInteger(0, 1, 2)
    assert psi.norm() == 2 and psi.trace() == 0
    assert predict_count(psi, 2) == 3
