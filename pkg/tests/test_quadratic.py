import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tracezeta.errors import FieldMismatch
from tracezeta.quadratic import QuadraticNumber, squarefree_split

SQUAREFREE = [2, 3, 5, 6, 7, 10, 13]
rationals = st.fractions(min_value=-20, max_value=20, max_denominator=9)


@st.composite
def same_field(draw, count=3):
    d = draw(st.sampled_from(SQUAREFREE))
    return [QuadraticNumber(draw(rationals), draw(rationals), d) for _ in range(count)]


@settings(max_examples=300, deadline=None)
@given(same_field())
def test_field_operations(xs):
    x, y, z = xs
    assert (x + y) * z == x * z + y * z
    assert x * y == y * x
    assert abs(float(x * y) - float(x) * float(y)) < 1e-6 * (1 + abs(float(x) * float(y)))
    if x != 0:
        assert x * x.inverse() == 1
        assert (y / x) * x == y


@settings(max_examples=300, deadline=None)
@given(same_field(count=2))
def test_conjugation_is_an_involutive_ring_map(xs):
    x, y = xs
    assert x.conj().conj() == x
    assert (x * y).conj() == x.conj() * y.conj()
    assert (x + y).conj() == x.conj() + y.conj()
    assert x * x.conj() == x.norm()
    assert x.norm() * y.norm() == (x * y).norm()


@settings(max_examples=300, deadline=None)
@given(same_field(count=2))
def test_exact_order_matches_floats(xs):
    x, y = xs
    fx, fy = float(x), float(y)
    if abs(fx - fy) > 1e-9:
        assert (x < y) == (fx < fy)
    assert x.sign() == (0 if x == 0 else (1 if fx > 0 else -1))


@settings(max_examples=200, deadline=None)
@given(same_field(count=1))
def test_string_round_trip(xs):
    (x,) = xs
    assert QuadraticNumber.parse(str(x)) == x


def test_golden_ratio_trace_and_norm():
    phi = (1 + QuadraticNumber.sqrt(5)) / 2
    assert phi.trace() == 1
    assert phi.norm() == -1
    assert phi * phi == phi + 1


def test_rationals_are_canonical():
    assert QuadraticNumber(3, 0, 5) == QuadraticNumber(3)
    assert QuadraticNumber(3, 0, 5).d == 1
    assert QuadraticNumber.sqrt(9) == 3
    assert QuadraticNumber.sqrt(Fraction(1, 2)) == QuadraticNumber(0, Fraction(1, 2), 2)
    assert QuadraticNumber(2).trace() == 2


def test_sqrt_of_square_times_squarefree():
    assert QuadraticNumber.sqrt(24) == QuadraticNumber(0, 2, 6)
    assert squarefree_split(72) == (6, 2)


def test_mixed_fields_raise():
    with pytest.raises(FieldMismatch) as info:
        QuadraticNumber.sqrt(2) + QuadraticNumber.sqrt(3)
    assert "trace_cohomology" in str(info.value)


def test_rejects_non_squarefree_radicand():
    with pytest.raises(ValueError):
        QuadraticNumber(0, 1, 8)


def test_powers():
    x = QuadraticNumber(-1, 1, 6)
    assert x**2 == QuadraticNumber(7, -2, 6)
    assert x**-1 * x == 1
    assert math.isclose(float(x**3), float(x) ** 3)
