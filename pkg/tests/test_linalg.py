from fractions import Fraction

import pytest

from qfold.errors import NotInvertible
from qfold.linalg import Mat, column_space_contains
from qfold.numberfield import Fp, NumberField, cyclotomic_poly


def test_rref_and_rank():
    m = Mat.rational([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    assert m.rank() == 2
    assert m.nullity() == 1
    red, pivots = m.rref()
    assert pivots == [0, 1]


def test_nullspace_is_kernel():
    m = Mat.rational([[1, 2], [2, 4]])
    ns = m.nullspace()
    assert ns.cols == 1
    assert (m * ns).is_zero()


def test_solve_and_inconsistent():
    m = Mat.rational([[1, 1], [0, 1]])
    sol = m.solve(Mat.rational([[3], [1]]))
    assert sol == Mat.rational([[2], [1]])
    bad = Mat.rational([[1, 1], [1, 1]]).solve(Mat.rational([[0], [1]]))
    assert bad is None


def test_inverse_round_trip():
    m = Mat.rational([[2, 1], [1, 1]])
    assert m * m.inverse() == Mat.identity(2)
    with pytest.raises(NotInvertible):
        Mat.rational([[1, 1], [1, 1]]).inverse()


def test_charpoly_and_poly_eval():
    m = Mat.rational([[2, -1], [-2, 2]])
    # det(xI - m) = x^2 - 4x + 2
    assert m.charpoly() == [Fraction(1), Fraction(-4), Fraction(2)]
    assert m.poly_eval(m.charpoly()).is_zero()


def test_det_matches_charpoly_constant():
    m = Mat.rational([[1, 2, 0], [0, 1, 3], [4, 0, 1]])
    cp = m.charpoly()
    assert m.det() == -cp[-1] if m.rows % 2 else cp[-1]


def test_empty_shapes():
    z = Mat.zeros(0, 3)
    assert z.rank() == 0
    assert z.nullspace().cols == 3
    assert Mat.zeros(3, 0).nullspace().cols == 0
    assert Mat.zeros(0, 0).inverse() == Mat.zeros(0, 0)
    assert Mat.zeros(0, 0).charpoly() == [Fraction(1)]


def test_block_operations():
    a = Mat.rational([[1]])
    b = Mat.rational([[2]])
    bd = Mat.block_diag([a, b])
    assert bd == Mat.rational([[1, 0], [0, 2]])
    assert a.hstack(b) == Mat.rational([[1, 2]])
    assert a.vstack(b) == Mat.rational([[1], [2]])


def test_power():
    m = Mat.rational([[0, -1], [1, -1]])
    assert m.power(3) == Mat.identity(2)
    assert m.power(1) == m
    assert m.power(0) == Mat.identity(2)


def test_column_space_contains():
    basis = Mat.rational([[1, 0], [0, 1], [0, 0]])
    assert column_space_contains(basis, Mat.rational([[1], [2], [0]]))
    assert not column_space_contains(basis, Mat.rational([[0], [0], [1]]))


def test_linear_algebra_over_prime_field():
    one = Fp(1, 3)
    m = Mat.from_rows([[Fp(1, 3), Fp(2, 3)], [Fp(2, 3), Fp(2, 3)]])
    assert m.rank() == 2
    assert m.inverse() * m == Mat.identity(2, one)
    # det(1 2; 2 1) = -3 = 0 in F_3
    singular = Mat.from_rows([[Fp(1, 3), Fp(2, 3)], [Fp(2, 3), Fp(1, 3)]])
    assert singular.rank() == 1
    assert singular.nullspace(one).cols == 1


def test_linear_algebra_over_number_field():
    field = NumberField(cyclotomic_poly(3))
    z = field.generator
    m = Mat.from_rows([[z, field.one], [field.one, z]])
    # determinant z^2 - 1 is nonzero in Q(zeta_3)
    assert m.rank() == 2
    inv = m.inverse()
    assert m * inv == Mat.identity(2, field.one)


from hypothesis import given, settings, strategies as st

small_matrix = st.lists(
    st.lists(st.integers(-4, 4), min_size=3, max_size=3), min_size=3, max_size=3)


@settings(max_examples=60, derandomize=True)
@given(small_matrix)
def test_inverse_and_nullspace_properties(rows):
    m = Mat.rational(rows)
    ns = m.nullspace()
    if ns.cols:
        assert (m * ns).is_zero()
    assert m.rank() + m.nullity() == 3
    if m.is_invertible():
        assert m * m.inverse() == Mat.identity(3)
        assert m.det() != 0
    else:
        assert m.det() == 0


@settings(max_examples=60, derandomize=True)
@given(small_matrix)
def test_rref_is_idempotent(rows):
    m = Mat.rational(rows)
    red, pivots = m.rref()
    again, pivots2 = red.rref()
    assert again == red and pivots == pivots2
