from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from heightforge.errors import HeightForgeError
from heightforge.lattice import canonical, sup_norm
from heightforge.linalg import Subspace, kernel, rank
from heightforge.polynomial import MultiPoly, evaluate, parse_poly
from heightforge.siegel import (
    avoid_subspaces,
    nonvanishing_witness,
    shell,
    shells,
    small_basis,
    sparse_basis,
)


def ints(v):
    return tuple(int(x) for x in v)


def test_shell_order():
    assert list(shell(1, 1)) == [(-1,), (1,)]
    assert list(shells(2, 1))[:4] == [(0, 0), (-1, -1), (-1, 0), (-1, 1)]
    assert len(list(shell(2, 2))) == 25 - 9


def test_nonvanishing_examples():
    z, cert = nonvanishing_witness(parse_poly("x1^2 - 1", 1))
    assert ints(z) == (0,) and cert.satisfied and cert.bound.value == 2
    z, cert = nonvanishing_witness(parse_poly("x1", 1))
    assert ints(z) == (-1,)
    z, cert = nonvanishing_witness(parse_poly("x1*x2*(x1 - 1)", 2))
    assert ints(z) == (-1, -1) and cert.bound.value == Fraction(5, 2)
    with pytest.raises(HeightForgeError) as err:
        nonvanishing_witness(MultiPoly(2))
    assert err.value.code == "ZERO_POLY"


def test_small_basis_examples():
    basis, cert = small_basis(Subspace.full(2))
    assert [ints(v) for v in basis] == [(1, 0), (0, 1)] and cert.satisfied
    basis, cert = small_basis(Subspace.span([(1, 0, 1), (0, 1, 1)]))
    assert [ints(v) for v in basis] == [(1, -1, 0), (1, 0, 1)]
    assert cert.bound.expression == "3^{1/2}" and cert.satisfied
    basis, cert = small_basis(kernel([[3, 1]]))
    assert [ints(v) for v in basis] == [(1, -3)] and cert.bound.expression == "10^{1/2}"
    with pytest.raises(HeightForgeError) as err:
        small_basis(Subspace.zero(3))
    assert err.value.code == "EMPTY_SUBSPACE"


def test_avoid_examples():
    x, cert = avoid_subspaces(Subspace.full(2), [Subspace.span([(1, 0)])])
    assert ints(x) == (0, 1) and cert.satisfied
    x, cert = avoid_subspaces(Subspace.full(2), [Subspace.span([(1, 0)]), Subspace.span([(0, 1)])])
    assert ints(x) == (1, -1) and cert.bound.expression == "2^{1/2} * 2 * 2 * 1"
    V = Subspace.span([(1, 0, 1), (0, 1, 1)])
    x, cert = avoid_subspaces(V, [Subspace.span([(1, 0, 1)])])
    assert ints(x) == (0, 1, 1) and cert.satisfied


def test_avoid_hypothesis_checked():
    V = Subspace.span([(1, 0, 0)])
    with pytest.raises(HeightForgeError) as err:
        avoid_subspaces(V, [Subspace.span([(1, 0, 0), (0, 1, 0)])])
    assert err.value.code == "HYPOTHESIS_VIOLATED"


def test_sparse_examples():
    basis, cert = sparse_basis(kernel([[1, 1, 1, 1]]))
    assert [ints(v) for v in basis] == [(1, -1, 0, 0), (1, 0, -1, 0), (1, 0, 0, -1)]
    assert cert.satisfied and all(ch.bound.value == cert.bound.value for ch in cert.checks)
    basis, _ = sparse_basis(Subspace.full(3))
    assert [ints(v) for v in basis] == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    basis, _ = sparse_basis(Subspace.span([(1, 0, 1), (0, 1, 1)]))
    assert [ints(v) for v in basis] == [(1, -1, 0), (1, 0, 1)]


polys = st.builds(
    lambda terms: MultiPoly(2, terms),
    st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3)), st.integers(-4, 4).filter(bool),
                    min_size=1, max_size=4),
)


@settings(deadline=None, max_examples=60)
@given(polys)
def test_nonvanishing_witness_is_first(P):
    assume(not P.is_zero())
    z, cert = nonvanishing_witness(P)
    assert evaluate(P, z) != 0 and cert.satisfied
    s = int(sup_norm(z))
    assert 2 * s <= P.degree + 2
    earlier = list(shells(2, s))
    for p in earlier[:earlier.index(ints(z))]:
        assert evaluate(P, p) == 0


@st.composite
def subspaces(draw, n=None):
    n = n or draw(st.integers(2, 4))
    m = draw(st.integers(1, n))
    rows = [[draw(st.integers(-3, 3)) for _ in range(n)] for _ in range(m)]
    return Subspace.span(rows, n)


@settings(deadline=None, max_examples=40)
@given(subspaces())
def test_small_basis_spans(V):
    assume(V.dim > 0)
    basis, cert = small_basis(V)
    assert len(basis) == V.dim and Subspace.span(basis, V.ambient_dim) == V
    assert cert.satisfied
    assert all(v == canonical(ints(v)) for v in map(ints, basis))


@settings(deadline=None, max_examples=40)
@given(subspaces())
def test_sparse_basis_properties(V):
    assume(V.dim > 0)
    basis, cert = sparse_basis(V)
    t = V.ambient_dim - V.dim + 1
    assert all(sum(1 for x in v if x) <= t for v in basis)
    assert rank(basis) == V.dim and Subspace.span(basis, V.ambient_dim) == V
    assert cert.satisfied


@settings(deadline=None, max_examples=40)
@given(subspaces(n=3), st.lists(subspaces(n=3), min_size=1, max_size=3))
def test_avoid_properties(V, avoid):
    assume(V.dim > 0 and not any(U.contains_subspace(V) for U in avoid))
    x, cert = avoid_subspaces(V, avoid)
    assert V.contains(x) and not any(U.contains(x) for U in avoid)
    assert cert.satisfied and ints(x) == canonical(ints(x))


def test_avoid_matches_brute_force():
    V = kernel([[1, 2, 3]])
    avoid = [Subspace.span([(2, -1, 0)]), Subspace.span([(3, 0, -1)]), Subspace.span([(1, 1, -1)])]
    x, _ = avoid_subspaces(V, avoid)
    pts = [p for r in range(3) for p in shell(3, r)
           if any(p) and p == canonical(p) and V.contains(p) and not any(U.contains(p) for U in avoid)]
    assert ints(x) == pts[0]
