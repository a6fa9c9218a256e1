from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tracezeta.errors import (
    FieldMismatch,
    InvalidFrobeniusData,
    InvalidMatrix,
    NotAlgebraicInteger,
    RankDeficient,
)
from tracezeta.quadratic import QuadraticNumber as Q
from tracezeta.trace import (
    FrobeniusData,
    TraceModule,
    block_sign,
    cm_h1_from_field,
    cm_h1_from_omega,
    curve_h1,
    endo_trace,
    frobenius_cm,
    is_algebraic_integer,
    is_endomorphism,
    lefschetz_number,
    omega_trace,
    point_count_formula,
    trivial_module,
)

SQRT6 = Q.sqrt(6)


def test_frobenius_for_trace_minus_two_over_f5():
    omega, lam1, lam2 = frobenius_cm(-2, 5)
    assert omega == Q(-1, 1, 6) == lam1
    assert lam2 == Q(-1, -1, 6)
    assert lam1 * lam2 == -5 and lam1 + lam2 == -2


@pytest.mark.parametrize("a,q", [(-2, 5), (2, 13), (0, 7), (4, 5), (-6, 13), (1, 3)])
def test_frobenius_eigenvalues_satisfy_vieta(a, q):
    _, l1, l2 = frobenius_cm(a, q)
    assert l1 + l2 == a and l1 * l2 == -q


def test_point_count_and_lefschetz_for_e1():
    omega, _, _ = frobenius_cm(-2, 5)
    fd = FrobeniusData.curve(omega, 5)
    assert fd.interior_traces() == [-2]
    assert point_count_formula(fd) == 8
    assert lefschetz_number(fd) == -2
    assert point_count_formula(fd) - lefschetz_number(fd) == 10


def test_frobenius_data_validation():
    with pytest.raises(InvalidFrobeniusData):
        FrobeniusData((Q(2), Q(0), Q(-5)), 5, 1)
    with pytest.raises(InvalidFrobeniusData):
        FrobeniusData((Q(1), Q(0), Q(5)), 5, 1)
    with pytest.raises(InvalidFrobeniusData):
        FrobeniusData((Q(1), Q(-5)), 5, 1)


def test_matrix_endomorphisms_contribute_their_trace():
    fd = FrobeniusData((Q(1), ((0, -9), (1, 4)), Q(-9)), 9, 1)
    assert omega_trace(fd.omegas[1]) == 4
    assert point_count_formula(fd) == 1 + 9 - 4
    assert fd.eigenvalues(1) is None


@pytest.mark.parametrize(
    "x,expected",
    [
        ((1 + Q.sqrt(5)) / 2, True),
        (Q.sqrt(5) / 2, False),
        (Q(Fraction(1, 2)), False),
        (Q(-1, 1, 6), True),
        ((1 + Q.sqrt(3)) / 2, False),
        (Q(7), True),
    ],
)
def test_algebraic_integers(x, expected):
    assert is_algebraic_integer(x) is expected


def test_trace_of_golden_ratio_is_one():
    assert endo_trace((1 + Q.sqrt(5)) / 2) == 1
    with pytest.raises(NotAlgebraicInteger):
        endo_trace(Q(Fraction(1, 2)))


@pytest.mark.parametrize(
    "omega",
    [frobenius_cm(a, q)[0] for a, q in [(-2, 5), (2, 13), (0, 7), (-4, 13), (1, 3)]] + [Q(3), (1 + Q.sqrt(5)) / 2],
)
def test_omega_preserves_the_module_it_generates(omega):
    M = cm_h1_from_omega(omega) if not omega.is_rational() else trivial_module(0)
    assert is_endomorphism(omega, M)


def test_half_does_not_preserve_z_plus_z_omega():
    M = cm_h1_from_omega(Q(-1, 1, 6))
    assert not is_endomorphism(Q(Fraction(1, 2)), M)
    assert not is_endomorphism(Q(Fraction(1, 2)), trivial_module(0))


def test_field_mismatch_between_omega_and_module():
    with pytest.raises(FieldMismatch):
        is_endomorphism(Q(-1, 1, 6), cm_h1_from_field(3))


def test_z_plus_z_sqrt1_is_rank_deficient():
    with pytest.raises(RankDeficient):
        cm_h1_from_field(1)


def test_module_membership():
    M = cm_h1_from_field(6)
    assert M.contains(Q(-1, 1, 6))
    assert not M.contains(Q(0, Fraction(1, 2), 6))
    assert not M.contains(Q.sqrt(2))


def test_genus_two_module_needs_independent_generators():
    M = curve_h1(2, [Q.sqrt(2), Q.sqrt(3), Q.sqrt(6)])
    assert M.rank == 4
    with pytest.raises(RankDeficient):
        curve_h1(2, [Q.sqrt(2), 1 + Q.sqrt(2), Q(2, 3, 2)])
    with pytest.raises(ValueError):
        curve_h1(2, [Q.sqrt(2)])


def test_trace_module_requires_leading_one():
    with pytest.raises(ValueError):
        TraceModule((Q(2),), 0)


@st.composite
def spd_matrices(draw, g):
    # B^T B + I is symmetric positive definite
    B = [[draw(st.integers(-3, 3)) for _ in range(g)] for _ in range(g)]
    return [[sum(B[k][i] * B[k][j] for k in range(g)) + (i == j) for j in range(g)] for i in range(g)]


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 4).flatmap(lambda g: spd_matrices(g)))
def test_block_sign_is_minus_one_to_the_g(A):
    assert block_sign(A) == (-1) ** len(A)


def test_block_sign_identity_cases():
    assert block_sign([[1]]) == -1
    assert block_sign([[1, 0], [0, 1]]) == 1


@pytest.mark.parametrize(
    "A",
    [[[1, 2], [0, 1]], [[0]], [[1, 2], [2, 1]], [[1.5]], [], [[1, 0]]],
)
def test_block_sign_rejects_bad_matrices(A):
    with pytest.raises(InvalidMatrix):
        block_sign(A)


def test_curve_with_rational_frobenius_root_keeps_both_eigenvalues():
    # a = 4, q = 5: a^2 + 4q = 36, so omega = 5 and the partner eigenvalue is -1
    omega, lam1, lam2 = frobenius_cm(4, 5)
    assert omega == 5 and lam2 == -1
    fd = FrobeniusData.curve(omega, 5)
    assert fd.eigenvalues(1) == [Q(5), Q(-1)]
    assert fd.interior_traces() == [4]
    assert point_count_formula(fd) == 1 + 5 - 4


def test_curve_pair_requires_norm_minus_q():
    with pytest.raises(InvalidFrobeniusData):
        FrobeniusData.curve(Q(-1, 1, 7), 5)
