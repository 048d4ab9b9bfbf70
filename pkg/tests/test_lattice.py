from fractions import Fraction
from itertools import product

from hypothesis import assume, given, settings, strategies as st

from heightforge.lattice import (
    by_height,
    canonical,
    gram_schmidt,
    integer_kernel,
    lll_reduce,
    points_in_cube,
    saturated_basis,
)
from heightforge.linalg import Subspace, det, kernel, rank


def gram_det(vs):
    return det([[sum(Fraction(a) * b for a, b in zip(u, v)) for v in vs] for u in vs])


def test_integer_kernel_is_saturated():
    K = integer_kernel([[6, 10, 15]], 3)
    assert all(6 * a + 10 * b + 15 * c == 0 for a, b, c in K)
    # covolume of the kernel lattice equals the norm of the primitive normal
    assert gram_det(K) == 6 * 6 + 10 * 10 + 15 * 15


def test_integer_kernel_divides_out_content():
    assert integer_kernel([[2, 4]], 2) in ([[-2, 1]], [[2, -1]])


def test_saturation_finds_missing_points():
    # span{(2,0),(0,2)} is all of Q^2, so its lattice is Z^2
    assert gram_det(saturated_basis(Subspace.span([(2, 0), (0, 2)]))) == 1


def test_saturated_basis_of_kernel():
    B = saturated_basis(kernel([[3, 1]]))
    assert [canonical(v) for v in B] == [(1, -3)]


def test_lll_condition():
    b = lll_reduce([[1, 1, 1], [-1, 0, 2], [3, 5, 6]])
    mu, B = gram_schmidt(b)
    for i in range(1, len(b)):
        assert all(abs(mu[i][j]) <= Fraction(1, 2) for j in range(i))
        assert B[i] >= (Fraction(3, 4) - mu[i][i - 1] ** 2) * B[i - 1]


def test_cube_points_in_order():
    V = Subspace.span([(1, 0, 1), (0, 1, 1)])
    pts = by_height(points_in_cube(saturated_basis(V), 1))
    assert pts == [(-1, 0, -1), (-1, 1, 0), (0, -1, -1), (0, 1, 1), (1, -1, 0), (1, 0, 1)]


def test_canonical_sign():
    assert canonical((0, -2, 1)) == (0, 2, -1)
    assert canonical((0, 0)) == (0, 0)


@st.composite
def integer_bases(draw):
    n = draw(st.integers(1, 4))
    m = draw(st.integers(1, n))
    vs = [[draw(st.integers(-5, 5)) for _ in range(n)] for _ in range(m)]
    return vs if rank(vs) == m else None


@settings(max_examples=50, deadline=None)
@given(integer_bases(), st.integers(0, 3))
def test_cube_enumeration_matches_brute_force(vs, r):
    assume(vs is not None)
    V = Subspace.span(vs)
    n = len(vs[0])
    expected = {p for p in product(range(-r, r + 1), repeat=n) if V.contains(p)}
    assert set(points_in_cube(saturated_basis(V), r)) == expected


@settings(max_examples=50, deadline=None)
@given(integer_bases())
def test_lll_preserves_lattice(vs):
    assume(vs is not None)
    b = lll_reduce(vs)
    assert rank(b) == len(vs)
    assert gram_det(b) == gram_det(vs)
