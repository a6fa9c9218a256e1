from fractions import Fraction

import pytest

from tracezeta.errors import FactorizationMismatch, InsufficientTerms, InvalidFrobeniusData, IrrationalCharPoly, NotRational
from tracezeta.quadratic import QuadraticNumber as Q
from tracezeta.series import poly
from tracezeta.variety import CountSeries
from tracezeta.zeta import (
    FactoredZeta,
    betti_degrees,
    counts_from_zeta,
    expand,
    lefschetz_zeta,
    zeta_from_counts,
)

E1 = FactoredZeta(q=5, n=1, factors=(poly([1, -1]), poly([1, 2, 5]), poly([1, -5])))


def test_counts_from_known_zeta():
    # 1 + 5^r - s_r with s_r = -2 s_{r-1} - 5 s_{r-2}: s = -2, -6, 22, -14, -82, 234
    assert counts_from_zeta(E1, 6) == [8, 32, 104, 640, 3208, 15392]


def test_projective_line_round_trip():
    cs = CountSeries(3, (4, 10, 28, 82, 244, 730))
    fz = zeta_from_counts(cs, (1, 0, 1), 1)
    assert fz.factors == (poly([1, -1]), poly([1]), poly([1, -3]))


def test_projective_plane_round_trip():
    cs = CountSeries(2, tuple(1 + 2**r + 4**r for r in range(1, 6)))
    fz = zeta_from_counts(cs, (1, 0, 1, 0, 1), 2)
    assert fz.factors == (poly([1, -1]), poly([1]), poly([1, -2]), poly([1]), poly([1, -4]))


def test_e1_reconstruction_from_counts():
    cs = CountSeries(5, tuple(counts_from_zeta(E1, 6)))
    fz = zeta_from_counts(cs, (1, 2, 1), 1)
    assert fz == E1


def test_pinned_outer_factors_need_two_fewer_counts():
    cs = CountSeries(5, tuple(counts_from_zeta(E1, 4)))
    with pytest.raises(InsufficientTerms):
        zeta_from_counts(cs, (1, 2, 1), 1)
    assert zeta_from_counts(cs, (1, 2, 1), 1, pin_outer=True) == E1


def test_insufficient_terms_message_names_required_r():
    cs = CountSeries(5, (8, 32, 104))
    with pytest.raises(InsufficientTerms) as info:
        zeta_from_counts(cs, (1, 2, 1), 1)
    assert info.value.required == 6
    assert "R = 6" in str(info.value)


def test_corrupted_holdout_is_rejected():
    counts = counts_from_zeta(E1, 6)
    counts[5] += 1
    with pytest.raises(NotRational):
        zeta_from_counts(CountSeries(5, tuple(counts)), (1, 2, 1), 1)


def test_wrong_outer_factor_is_rejected():
    # 1/((1 - t)(1 - 2t)) treated as a curve over F_3: the pole at 1/2 is not 1/3
    fz = FactoredZeta(q=2, n=1, factors=(poly([1, -1]), poly([1]), poly([1, -2])))
    cs = CountSeries(3, tuple(counts_from_zeta(fz, 4)))
    with pytest.raises(FactorizationMismatch):
        zeta_from_counts(cs, (1, 0, 1), 1)


def test_explicit_bounds_without_betti():
    cs = CountSeries(5, tuple(counts_from_zeta(E1, 6)))
    assert zeta_from_counts(cs, None, 1, bounds=(2, 2)) == E1
    with pytest.raises(ValueError):
        zeta_from_counts(cs, None, 1)


def test_surface_keeps_mixed_interior_as_products():
    # odd cohomology in two degrees stays as one product
    P1, P2, P3 = poly([1, 0, 2]), poly([1, -2]), poly([1, 0, 8])
    fz = FactoredZeta(q=2, n=2, factors=(poly([1, -1]), P1, P2, P3, poly([1, -4])))
    cs = CountSeries(2, tuple(counts_from_zeta(fz, 12)))
    rec = zeta_from_counts(cs, (1, 2, 1, 2, 1), 2)
    assert rec.factors[1] is None and rec.factors[3] is None
    assert rec.factors[2] == P2
    assert rec.rational() == fz.rational()


def test_json_round_trip():
    assert FactoredZeta.from_json(E1.to_json()) == E1
    partial = FactoredZeta(q=2, n=2, factors=(poly([1, -1]), None, poly([1, -2]), None, poly([1, -4])),
                           odd_part=poly([1, 0, 2]))
    assert FactoredZeta.from_json(partial.to_json()) == partial


def test_betti_degrees():
    assert betti_degrees(E1) == {"P_0": 1, "P_1": 2, "P_2": 1, "odd_part": 2, "even_interior": 0}


def test_lefschetz_zeta_for_e1():
    omega = Q(-1, 1, 6)
    lz = lefschetz_zeta([[Q(1)], [omega, omega.conj()], [Q(-5)]], 5, 1)
    assert lz.factors == (poly([1, -1]), poly([1, 2, -5]), poly([1, 5]))
    assert expand(lz, 3).coeffs == expand(lz, 5).coeffs[:4]


def test_lefschetz_zeta_for_projective_line_shape():
    lz = lefschetz_zeta([[1], [], [-3]], 3, 1)
    assert lz.rational().denom == poly([1, 2, -3])


def test_lefschetz_zeta_validation():
    with pytest.raises(IrrationalCharPoly):
        lefschetz_zeta([[1], [Q(-1, 1, 6)], [-5]], 5, 1)
    with pytest.raises(InvalidFrobeniusData):
        lefschetz_zeta([[2], [], [-5]], 5, 1)
    with pytest.raises(InvalidFrobeniusData):
        lefschetz_zeta([[1], [], [5]], 5, 1)


def test_counts_can_be_fractional_for_non_integral_data():
    fz = FactoredZeta(q=5, n=1, factors=(poly([1, -1]), poly([1, Fraction(1, 2)]), poly([1, -5])))
    assert counts_from_zeta(fz, 1) == [Fraction(13, 2)]


def test_expand_examples():
    p1 = FactoredZeta(q=3, n=1, factors=(poly([1, -1]), poly([1]), poly([1, -3])))
    assert list(expand(p1, 3).coeffs) == [1, 4, 13, 40]
    assert list(expand(E1, 0).coeffs) == [1]


@pytest.mark.parametrize("a,q", [(-2, 5), (2, 13), (0, 7)])
def test_standard_and_lefschetz_curve_factors(a, q):
    from tracezeta.trace import frobenius_cm

    omega, l1, l2 = frobenius_cm(a, q)
    std = poly([1, -a, q])
    lef = lefschetz_zeta([[1], [l1, l2], [-q]], q, 1).factors[1]
    assert lef[1] == std[1] and lef[2] == -std[2]
