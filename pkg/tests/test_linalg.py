from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from dpicard.linalg import GF, QQ, Echelon, FieldError, Matrix, kernel_basis, parse_field, rref, solve

F7 = GF(7)


def test_rref_identity_and_zero():
    I = Matrix.identity(QQ, 3)
    R, rank, piv = rref(I)
    assert R == I and rank == 3 and piv == [0, 1, 2]
    Z = Matrix.zeros(QQ, 2, 4)
    R, rank, _ = rref(Z)
    assert R == Z and rank == 0


def test_rref_rank_one():
    R, rank, piv = rref(Matrix.from_rows(QQ, [[1, 2], [2, 4]]))
    assert R.to_rows() == [[1, 2], [0, 0]]
    assert rank == 1 and piv == [0]


def test_solve_examples():
    b = [Fraction(3), Fraction(-1), Fraction(5, 2)]
    assert solve(Matrix.identity(QQ, 3), b) == b
    A = Matrix.from_rows(QQ, [[1, 1]])
    x = solve(A, [1])
    assert A.apply(x) == [1]
    assert solve(Matrix.zeros(QQ, 1, 1), [1]) is None


def test_kernel_examples():
    assert kernel_basis(Matrix.identity(QQ, 4)) == []
    assert len(kernel_basis(Matrix.zeros(QQ, 3, 3))) == 3
    (v,) = kernel_basis(Matrix.from_rows(QQ, [[1, 2]]))
    assert v[0] + 2 * v[1] == 0 and any(v)


def test_prime_field_arithmetic():
    assert F7(Fraction(1, 2)) == 4
    assert F7.inv(3) == 5
    assert F7(-1) == 6
    with pytest.raises(ZeroDivisionError):
        F7.inv(0)
    with pytest.raises(FieldError):
        GF(8)


def test_parse_field():
    assert parse_field("q") is QQ
    assert parse_field("fp:5") == GF(5)
    with pytest.raises(FieldError):
        parse_field("reals")


def test_mixed_fields_rejected():
    with pytest.raises(FieldError):
        Matrix.identity(QQ, 2) @ Matrix.identity(F7, 2)


small = st.integers(-5, 5)


@st.composite
def matrices(draw, field):
    r = draw(st.integers(1, 4))
    c = draw(st.integers(1, 4))
    rows = draw(st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r))
    return Matrix.from_rows(field, rows)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([QQ, F7]).flatmap(matrices))
def test_rank_nullity_and_kernel(A):
    _, rank, _ = rref(A)
    ker = kernel_basis(A)
    assert rank + len(ker) == A.cols
    for v in ker:
        assert all(A.field.is_zero(x) for x in A.apply(v))


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([QQ, F7]).flatmap(matrices), st.data())
def test_solve_consistent_rhs(A, data):
    x0 = data.draw(st.lists(small, min_size=A.cols, max_size=A.cols))
    b = A.apply([A.field(v) for v in x0])
    x = solve(A, b)
    assert x is not None and A.apply(x) == b


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([QQ, F7]).flatmap(matrices))
def test_rref_idempotent(A):
    R, rank, _ = rref(A)
    R2, rank2, _ = rref(R)
    assert R2 == R and rank2 == rank


def test_echelon_kernel_matches_dense():
    A = Matrix.from_rows(QQ, [[1, 2, 3], [2, 4, 6], [0, 1, 1]])
    ech = Echelon(QQ)
    for i in range(A.rows):
        ech.add({j: A[i, j] for j in range(3) if A[i, j]})
    assert len(ech.kernel(3)) == len(kernel_basis(A)) == 1
