from fractions import Fraction

import pytest
import sympy
from hypothesis import assume, given, settings, strategies as st

from heightforge.errors import HeightForgeError
from heightforge.linalg import (
    Subspace,
    basis_product_certificate,
    column_space,
    det,
    duality_certificate,
    intersect,
    intersect_with_certificate,
    inverse,
    inverse_with_certificate,
    kernel,
    nullspace,
    plucker_coordinates,
    rank,
    reduced_column_echelon,
    subspace_height,
)

small = st.integers(-6, 6)


@st.composite
def matrices(draw, max_rows=5, max_cols=5):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    return [[draw(small) for _ in range(c)] for _ in range(r)]


@st.composite
def square(draw, max_n=4):
    n = draw(st.integers(1, max_n))
    return [[Fraction(draw(small), draw(st.integers(1, 4))) for _ in range(n)] for _ in range(n)]


def test_determinant_example():
    assert det([[1, 2], [3, 4]]) == -2
    assert det([[Fraction(1, 2), 1], [1, 4]]) == 1


def test_plucker_of_two_columns():
    A = [[1, 0], [0, 1], [1, 1]]
    assert plucker_coordinates(A) == (1, 1, -1)
    assert subspace_height(column_space(A)).squared == 3


def test_kernel_of_all_ones_has_height_two():
    V = kernel([[1, 1, 1, 1]])
    assert V.dim == 3
    assert subspace_height(V).squared == 4


def test_duality_certificate():
    cert = duality_certificate([[3, 1]])
    assert cert.satisfied
    assert cert.heights[0].squared == 10


def test_inverse_example():
    Ainv, cert = inverse_with_certificate([[1, 2], [3, 4]])
    assert Ainv == ((-2, 1), (Fraction(3, 2), Fraction(-1, 2)))
    assert cert.heights[0].value.to_fraction() == 4
    assert cert.satisfied


def test_singular_inverse():
    with pytest.raises(HeightForgeError) as err:
        inverse([[1, 2], [2, 4]])
    assert err.value.code == "SINGULAR_MATRIX"


def test_column_echelon():
    X = [[1, 1], [0, 1], [1, 0]]
    E = reduced_column_echelon(X)
    assert [tuple(E[i][j] for i in range(3)) for j in range(2)] == [(1, 0, 1), (0, 1, -1)]


def test_intersection_example():
    U1 = Subspace.span([(1, 1, 0), (0, 0, 1)])
    U2 = Subspace.span([(1, 1, 2), (1, 0, 0)])
    W, cert = intersect_with_certificate(U1, U2)
    assert W == Subspace.span([(1, 1, 2)])
    assert subspace_height(W).squared == 6
    assert cert.satisfied


def test_trivial_intersection_noted():
    W, cert = intersect_with_certificate(Subspace.span([(1, 0)]), Subspace.span([(0, 1)]))
    assert W.dim == 0 and cert.satisfied and cert.notes


def test_subspace_equality_ignores_basis():
    assert Subspace.span([(1, 0, 1), (0, 1, 1)]) == Subspace.span([(1, 1, 2), (1, -1, 0)])
    assert Subspace.coordinate(3, [0, 2]).contains((5, 0, -1))


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_and_nullspace_match_sympy(M):
    S = sympy.Matrix(M)
    assert rank(M) == S.rank()
    ns = nullspace(M, len(M[0]))
    assert len(ns) == len(S.nullspace())
    for v in ns:
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in M)


@settings(max_examples=60, deadline=None)
@given(square())
def test_det_matches_sympy(A):
    expected = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in r] for r in A]).det()
    assert det(A) == Fraction(int(expected.p), int(expected.q))


@settings(max_examples=60, deadline=None)
@given(matrices(max_rows=4, max_cols=6))
def test_brill_gordan_duality(B):
    # the kernel of B and the row space of B have the same height
    assume(0 < rank(B) < len(B[0]))
    assert duality_certificate(B).satisfied


@settings(max_examples=60, deadline=None)
@given(matrices(max_rows=4, max_cols=4), matrices(max_rows=4, max_cols=4))
def test_intersection_bound(A, B):
    n = len(A[0])
    B = [r[:n] + [0] * (n - len(r)) for r in B]
    assume(rank(A) > 0 and rank(B) > 0)
    U1, U2 = Subspace.span(A, n), Subspace.span(B, n)
    W, cert = intersect_with_certificate(U1, U2)
    assert cert.satisfied
    assert all(U1.contains(v) and U2.contains(v) for v in W.basis)
    assert W == intersect(U2, U1)


@settings(max_examples=60, deadline=None)
@given(matrices(max_rows=4, max_cols=5))
def test_basis_product_bound(M):
    assume(rank(M) == len(M))
    assert basis_product_certificate(M).satisfied


@settings(max_examples=60, deadline=None)
@given(square())
def test_inverse_bounds(A):
    assume(det(A) != 0)
    Ainv, cert = inverse_with_certificate(A)
    n = len(A)
    product = [[sum(A[i][k] * Ainv[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    assert product == [[int(i == j) for j in range(n)] for i in range(n)]
    assert cert.satisfied
