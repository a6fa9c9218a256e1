import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tracezeta.errors import InsufficientTerms, NotExponentiable, NotLoggable, NotRational
from tracezeta.series import (
    RationalFunction,
    TruncatedSeries,
    pdivmod,
    peval,
    pformat,
    pgcd,
    pmul,
    poly,
    ps_exp,
    ps_log,
    rational_reconstruct,
    series_divide,
)

fractions = st.fractions(min_value=-5, max_value=5, max_denominator=7)


def test_exp_of_t_is_inverse_factorials():
    e = ps_exp(TruncatedSeries([0, 1, 0, 0, 0, 0, 0]))
    assert list(e.coeffs) == [Fraction(1, math.factorial(k)) for k in range(7)]


def test_log_of_geometric_series():
    # log 1/(1 - t) = sum t^k / k
    L = ps_log(TruncatedSeries([1] * 8))
    assert list(L.coeffs) == [0] + [Fraction(1, k) for k in range(1, 8)]


def test_exp_log_error_cases():
    with pytest.raises(NotExponentiable) as info:
        ps_exp(TruncatedSeries([1, 1]))
    assert "series_ring" in str(info.value)
    with pytest.raises(NotLoggable):
        ps_log(TruncatedSeries([2, 1]))


@settings(max_examples=150, deadline=None)
@given(st.lists(fractions, min_size=1, max_size=10))
def test_exp_log_round_trip(tail):
    f = TruncatedSeries([0] + tail)
    assert ps_log(ps_exp(f)).coeffs == f.coeffs
    g = TruncatedSeries([1] + tail)
    assert ps_exp(ps_log(g)).coeffs == g.coeffs


@settings(max_examples=100, deadline=None)
@given(st.lists(fractions, min_size=1, max_size=6), st.lists(fractions, min_size=1, max_size=6))
def test_exp_turns_sums_into_products(a, b):
    n = min(len(a), len(b))
    f, g = TruncatedSeries([0] + a[:n]), TruncatedSeries([0] + b[:n])
    assert (ps_exp(f) * ps_exp(g)).coeffs == ps_exp(f + g).coeffs


def test_series_divide_matches_multiplication():
    num, den = poly([1, 2, 5]), poly([1, -6, 5])
    s = series_divide(num, den, 10)
    back = s * TruncatedSeries.from_poly(den, 10)
    assert back.coeffs == TruncatedSeries.from_poly(num, 10).coeffs


@pytest.mark.parametrize(
    "numer,denom",
    [
        ([1, 2, 5], [1, -6, 5]),
        ([1], [1, -4, 3]),
        ([1, 0, 0, 0, 9], [1, -1]),
        ([3, -1], [1, 0, 0, 2]),
    ],
)
def test_reconstruction_recovers_exact_rational_function(numer, denom):
    rf = RationalFunction.make(numer, denom)
    m, n = len(numer) - 1, len(denom) - 1
    f = rf.expand(m + n + 2)
    assert rational_reconstruct(f, m, n) == rf


@settings(max_examples=60, deadline=None)
@given(
    st.lists(st.integers(-6, 6), min_size=1, max_size=4),
    st.lists(st.integers(-6, 6), min_size=0, max_size=3),
    st.integers(0, 3),
)
def test_reconstruction_is_stable_under_extra_terms(numer, den_tail, extra):
    rf = RationalFunction.make(numer, [1] + den_tail)
    if not rf.numer:
        return
    m, n = len(numer) - 1, len(den_tail)
    f = rf.expand(m + n + extra)
    assert rational_reconstruct(f, m, n) == rf


def test_exp_t_is_not_a_low_degree_rational_function():
    f = ps_exp(TruncatedSeries([0, 1, 0, 0, 0, 0, 0, 0]))
    with pytest.raises(NotRational) as info:
        rational_reconstruct(f, 2, 2)
    assert "t^5" in str(info.value)


def test_exp_t_pade_matches_only_through_t4():
    # the [2/2] Pade approximant of e^t
    pade = RationalFunction.make([1, Fraction(1, 2), Fraction(1, 12)], [1, Fraction(-1, 2), Fraction(1, 12)])
    assert rational_reconstruct(ps_exp(TruncatedSeries([0, 1, 0, 0, 0])), 2, 2) == pade
    assert pade.expand(5)[5] != Fraction(1, 120)


def test_insufficient_terms_reports_requirement():
    with pytest.raises(InsufficientTerms) as info:
        rational_reconstruct(TruncatedSeries([1, 2, 3]), 2, 2)
    assert info.value.required == 5 and info.value.available == 3


def test_rational_function_normalization():
    rf = RationalFunction.make([2, -2], [2, -4, 2])
    assert rf.numer == poly([1]) and rf.denom == poly([1, -1])
    assert (rf * rf.inverse()) == RationalFunction.make([1], [1])


def test_polynomial_helpers():
    a = pmul(poly([1, -1]), poly([1, 1]))
    assert a == poly([1, 0, -1])
    q, r = pdivmod(a, poly([1, 1]))
    assert q == poly([1, -1]) and r == ()
    assert pgcd(a, poly([-2, 2])) == poly([-1, 1])
    assert peval(a, Fraction(1, 2)) == Fraction(3, 4)
    assert pformat(poly([1, 2, -5])) == "1 + 2*t - 5*t^2"
