import json
from fractions import Fraction

import pytest
from hypothesis import given, settings as hsettings, strategies as st

from conftest import rationals
from models.errors import DimensionMismatchError, FieldMismatchError, MatrixParseError
from models.exactfield import EISENSTEIN, OMEGA, RATIONALS
from models.exactmatrix import (
    ExactMatrix,
    commutator,
    identity,
    is_zero,
    mat_add,
    mat_mul,
    mat_scale,
    matrix_format,
    matrix_from_json,
    matrix_parse,
    matrix_to_json,
    rank,
    solve_linear,
    stack_columns,
    trace,
    transpose,
    zeros,
)


entries = st.one_of(st.just(Fraction(0)), st.integers(-2, 2).map(Fraction), rationals)
rectangular = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(entries, min_size=r * c, max_size=r * c).map(lambda xs: ExactMatrix(r, c, tuple(xs)))
    )
)


def column(values, field=RATIONALS):
    return ExactMatrix(len(values), 1, tuple(values), field)


def square(size):
    return st.lists(rationals, min_size=size * size, max_size=size * size).map(
        lambda xs: ExactMatrix(size, size, tuple(xs))
    )


# ---------------------------------------------------------
# Construction
# ---------------------------------------------------------
def test_from_rows_infers_field():
    assert ExactMatrix.from_rows([[1, 0], [0, 1]]).field is RATIONALS
    assert ExactMatrix.from_rows([[OMEGA, 0], [0, 1]]).field is EISENSTEIN


def test_ragged_rows_rejected():
    with pytest.raises(DimensionMismatchError):
        ExactMatrix.from_rows([[1, 2], [3]])
    with pytest.raises(MatrixParseError):
        matrix_parse("1,2;3")


def test_rational_matrix_refuses_omega():
    with pytest.raises(FieldMismatchError):
        ExactMatrix(1, 1, (OMEGA,), RATIONALS)


def test_identity_and_zeros():
    i3 = identity(3)
    assert trace(i3) == 3
    assert is_zero(zeros(2, 3))
    assert mat_mul(i3, i3) == i3


# ---------------------------------------------------------
# Arithmetic
# ---------------------------------------------------------
@hsettings(max_examples=500, deadline=None)
@given(square(3), square(3), square(3))
def test_ring_identities_3x3(a, b, c):
    assert mat_mul(mat_mul(a, b), c) == mat_mul(a, mat_mul(b, c))
    assert mat_mul(a, mat_add(b, c)) == mat_add(mat_mul(a, b), mat_mul(a, c))


@hsettings(max_examples=100, deadline=None)
@given(square(4), square(4))
def test_commutator_is_traceless(a, b):
    assert trace(commutator(a, b)) == 0
    assert commutator(a, b) == mat_scale(-1, commutator(b, a))


def test_operators_match_functions():
    a = matrix_parse("1,2;3,4")
    b = matrix_parse("0,1;1,0")
    assert a + b == mat_add(a, b)
    assert a @ b == mat_mul(a, b)
    assert Fraction(1, 2) * a == mat_scale(Fraction(1, 2), a)
    assert -a == mat_scale(-1, a)
    assert transpose(transpose(a)) == a


def test_shape_mismatch():
    with pytest.raises(DimensionMismatchError):
        mat_mul(identity(2), identity(3))
    with pytest.raises(DimensionMismatchError):
        mat_add(identity(2), identity(3))


def test_mixed_fields_do_not_multiply():
    with pytest.raises(FieldMismatchError):
        mat_mul(identity(2), identity(2, EISENSTEIN))


def test_to_field_lifts():
    lifted = identity(2).to_field(EISENSTEIN)
    assert lifted.field is EISENSTEIN
    assert mat_mul(lifted, identity(2, EISENSTEIN)) == lifted


# ---------------------------------------------------------
# Linear algebra
# ---------------------------------------------------------
def test_rank():
    assert rank(identity(3)) == 3
    assert rank(matrix_parse("1,2;2,4")) == 1
    assert rank(zeros(2)) == 0


def test_solve_unique():
    a = matrix_parse("2,1;1,3")
    solution = solve_linear(a, [3, 5])
    assert solution.unique
    assert solution.particular == (Fraction(4, 5), Fraction(7, 5))


def test_solve_underdetermined_and_inconsistent():
    a = matrix_parse("1,1;2,2")
    assert not solve_linear(a, [1, 3]).consistent
    solution = solve_linear(a, [1, 2])
    assert solution.consistent and not solution.unique
    assert len(solution.nullspace) == 1


def test_solve_over_eisenstein():
    a = ExactMatrix.from_rows([[OMEGA, 1], [0, 1]])
    solution = solve_linear(a, [1 + OMEGA, 1])
    assert solution.particular == (1, 1)


@hsettings(max_examples=300, deadline=None)
@given(rectangular)
def test_rank_of_transpose(a):
    assert rank(a) == rank(transpose(a))
    assert rank(a) <= min(a.rows, a.cols)


@hsettings(max_examples=300, deadline=None)
@given(rectangular, st.data())
def test_solutions_substitute_back(a, data):
    x = data.draw(st.lists(entries, min_size=a.cols, max_size=a.cols))
    b = mat_mul(a, column(x))
    solution = solve_linear(a, b)
    assert solution.consistent
    assert mat_mul(a, column(solution.particular)) == b
    for v in solution.nullspace:
        assert is_zero(mat_mul(a, column(v)))
    assert len(solution.nullspace) == a.cols - rank(a)


@hsettings(max_examples=300, deadline=None)
@given(rectangular, st.data())
def test_inconsistent_systems_raise_the_rank(a, data):
    rhs = data.draw(st.lists(entries, min_size=a.rows, max_size=a.rows))
    solution = solve_linear(a, rhs)
    augmented = stack_columns([column(a.col(j)) for j in range(a.cols)] + [column(rhs)])
    assert solution.consistent == (rank(augmented) == rank(a))
    if solution.consistent:
        assert mat_mul(a, column(solution.particular)) == column(rhs)


def test_stack_columns():
    m = stack_columns([identity(2), zeros(2)])
    assert m.shape == (4, 2)
    assert m.col(0) == (1, 0, 0, 1)


# ---------------------------------------------------------
# Text and JSON
# ---------------------------------------------------------
def test_text_round_trip():
    m = matrix_parse("0, 1/2 ; -w, 1+2w")
    assert m.field is EISENSTEIN
    assert matrix_format(m) == "0,1/2;-w,1+2w"
    assert matrix_parse(matrix_format(m)) == m


def test_json_forms():
    m = matrix_parse('[["1", "-1/3"], ["w", "0"]]')
    assert matrix_to_json(m) == [["1", "-1/3"], ["w", "0"]]
    assert matrix_from_json(json.loads(json.dumps(matrix_to_json(m)))) == m


@pytest.mark.parametrize("text", ["", "1,x;0,1", "[1, 2]", "[[", "1,;0,1"])
def test_parse_errors(text):
    with pytest.raises(MatrixParseError):
        matrix_parse(text)
