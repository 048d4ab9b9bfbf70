import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from heightforge import generators as gen
from heightforge.errors import HeightForgeError
from heightforge.heights import height_inhomogeneous, height_projective
from heightforge.linalg import Subspace, kernel
from heightforge.polynomial import MultiPoly, evaluate, parse_poly
from heightforge.solvers import (
    linear_form_zero_on_subspace,
    multilinear_zero,
    multilinear_zero_on_subspace,
    solve_on_line,
    solve_single_avoiding,
    solve_system,
    split_variable,
)


def P(text, n):
    return parse_poly(text, n)


def ints(v):
    return tuple(int(x) for x in v)


def code_of(fn, *args):
    with pytest.raises(HeightForgeError) as err:
        fn(*args)
    return err.value.code


def test_system_worked_example():
    cert = solve_system([P("x1*x2 - 1", 2)], [1])
    assert ints(cert.witness) == (-1, -1)
    assert cert.bound.value == 128 and cert.bound.expression == "1 * 2^{5} * 4"
    assert cert.satisfied and "P = x2" in cert.trace


def test_system_with_constant_determinant():
    cert = solve_system([P("x1 + x2*x3", 3), P("x2 + x3", 3)], [1, 2])
    assert ints(cert.witness) == (0, 0, 0) and cert.satisfied


def test_system_needs_free_variables():
    # with k = n there is nothing left to choose
    assert code_of(solve_system, [P("x1 + 1", 1)], [1]) == "NOT_I_SEPARATED"


def test_system_errors():
    assert code_of(solve_system, [P("x1^2 + x2", 2)], [1]) == "NOT_I_SEPARATED"
    assert code_of(solve_system, [P("x2^2 + 1", 2)], [1]) == "RANK_HYPOTHESIS_FAILED"
    inconsistent = [P("x1*x3 + x2", 3), P("x1*x3 + x2 + 1", 3)]
    assert code_of(solve_system, inconsistent, [1, 2]) == "RANK_HYPOTHESIS_FAILED"


def test_system_rank_deficient_block():
    # det vanishes identically, x2 is set to zero and x1 solved from a 1x1 block
    cert = solve_system([P("x1*x3 + x2*x3 - x3", 3), P("2*x1*x3 + 2*x2*x3 - 2*x3", 3)], [1, 2])
    z = cert.witness
    assert z[1] == 0 and cert.satisfied
    assert any("generic rank 1" in line for line in cert.trace)


def test_single_avoiding_examples():
    cert = solve_single_avoiding(P("x3 + x1*x2", 3), 3, P("x1", 3))
    assert ints(cert.witness) == (-1, -1, -1)
    assert cert.bound.value == Fraction(125, 4) and cert.satisfied
    cert = solve_single_avoiding(P("x1*x2 - 1", 2), 1, P("x1 - 1", 2))
    assert ints(cert.witness) == (-1, -1) and cert.satisfied
    # constant P: the first shell point already works
    cert = solve_single_avoiding(P("x1 + x2", 2), 1)
    assert ints(cert.witness) == (0, 0) and cert.bound.value == 2


def test_single_avoiding_errors():
    assert code_of(solve_single_avoiding, P("x1^2 + x2", 2), 1, None) == "NOT_LINEAR_IN_VAR"
    F = P("x1*x2 + 1", 2)
    assert code_of(solve_single_avoiding, F, 1, F) == "AVOIDANCE_IMPOSSIBLE"


def test_split_variable():
    F1, F2, others = split_variable(P("x3 + x1*x2", 3), 3)
    assert F1 == MultiPoly.constant(1, 2) and F2 == P("x1*x2", 2) and others == (1, 2)


def test_line_examples():
    cert = solve_on_line(P("x1*x2 - 2", 2), Subspace.span([(1, 2)]), P("x1 + 1", 2))
    assert ints(cert.witness) == (1, 2)
    assert cert.bound.expression == "2^{3/2} * 2 * 5" and cert.satisfied
    assert code_of(solve_on_line, P("x1 - x2", 2), Subspace.span([(1, 1)]), None) == "NOT_APPLICABLE"
    assert code_of(solve_on_line, P("x1^2 - 4*x2^2", 2), Subspace.span([(2, 1)]), None) == "NOT_APPLICABLE"
    assert code_of(solve_on_line, P("x1^2 - 4*x2^2", 2), Subspace.span([(1, 1)]), None) == "NO_RATIONAL_ZERO"


def test_line_errors():
    F = P("x1*x2 - 2", 2)
    assert code_of(solve_on_line, F, Subspace.span([(1, 2)]), P("x1^2 - 1", 2)) == "AVOIDANCE_FAILED"
    assert code_of(solve_on_line, F, Subspace.full(2), None) == "DIM_MISMATCH"


def test_multilinear_examples():
    assert ints(multilinear_zero(P("3*x1 + 5*x2", 2)).witness) == (-5, 3)
    assert ints(multilinear_zero(P("7*x1*x2", 2)).witness) == (0, 1)
    cert = multilinear_zero(P("x1*x2 + x1*x3 + x2*x3", 3))
    assert ints(cert.witness) == (0, 0, 1) and cert.satisfied


def test_multilinear_errors():
    assert code_of(multilinear_zero, P("x1^2", 1)) == "NOT_MULTILINEAR"
    assert code_of(multilinear_zero, MultiPoly(2)) == "ZERO_POLY"
    assert code_of(multilinear_zero, P("x1", 1)) == "HYPOTHESIS_FAILED"


def test_multilinear_subspace_examples():
    V = kernel([[1, 1, 1]])
    F = P("x1*x2*x3", 3)
    cert = multilinear_zero_on_subspace(F, V)
    assert [ints(v) for v in cert.witnesses] == [(1, -1, 0), (1, 0, -1)]
    assert cert.bound.expression == "2^{1/2} * 2 * 3^{1/2}" and cert.satisfied
    cert = multilinear_zero_on_subspace(F, V, P("x1", 3))
    assert [ints(v) for v in cert.witnesses] == [(1, -1, 0)]
    cert = multilinear_zero_on_subspace(P("x1*x2", 2), Subspace.full(2))
    assert [ints(v) for v in cert.witnesses] == [(1, 0), (0, 1)]


def test_multilinear_subspace_errors():
    V = kernel([[1, 1, 1]])
    assert code_of(multilinear_zero_on_subspace, P("x1*x2", 3), V, None) == "HYPOTHESIS_FAILED"
    F = P("x1*x2*x3", 3)
    assert code_of(multilinear_zero_on_subspace, F, V, F) == "AVOIDANCE_FAILED"


def test_linear_form_examples():
    cert = linear_form_zero_on_subspace(P("x1 + x2 + x3", 3), Subspace.full(3))
    assert ints(cert.witness) == (1, -1, 0) and cert.bound.expression == "3^{1/4} * 1 * 1"
    cert = linear_form_zero_on_subspace(P("x1 - x2", 2), Subspace.span([(1, 1), (1, -1)]))
    assert ints(cert.witness) == (1, 1) and cert.satisfied
    cert = linear_form_zero_on_subspace(P("x1", 3), Subspace.span([(0, 1, 0), (0, 0, 1)]))
    assert ints(cert.witness) == (0, 1, 0)
    assert cert.notes[0].startswith("DEGENERATE")


def test_linear_form_errors():
    assert code_of(linear_form_zero_on_subspace, P("x1*x2", 2), Subspace.full(2), None) == "NOT_LINEAR_FORM"
    assert code_of(linear_form_zero_on_subspace, P("x1", 2), Subspace.span([(1, 0)]), None) == "HYPOTHESIS_FAILED"
    F, Q = P("x1", 3), P("x1 + x2*x3", 3)
    assert code_of(linear_form_zero_on_subspace, F, Subspace.full(3), Q) == "AVOIDANCE_FAILED"


@settings(deadline=None, max_examples=30)
@given(st.integers(0, 10 ** 6))
def test_random_systems(seed):
    rng = random.Random(seed)
    polys, I = gen.separated_system(rng, max_n=3, max_k=2, max_deg=2, coeff=3)
    try:
        cert = solve_system(polys, I)
    except HeightForgeError as err:
        assert err.code == "RANK_HYPOTHESIS_FAILED"
        return
    assert all(evaluate(F, cert.witness) == 0 for F in polys)
    assert cert.satisfied


@settings(deadline=None, max_examples=30)
@given(st.integers(0, 10 ** 6))
def test_random_single_avoiding(seed):
    rng = random.Random(seed)
    F, j, Q = gen.single_avoiding_pair(rng)
    try:
        cert = solve_single_avoiding(F, j, Q)
    except HeightForgeError as err:
        assert err.code == "AVOIDANCE_IMPOSSIBLE"
        return
    z = cert.witness
    assert evaluate(F, z) == 0 and evaluate(Q, z) != 0 and cert.satisfied


@settings(deadline=None, max_examples=50)
@given(st.integers(0, 10 ** 6))
def test_random_multilinear(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 6)
    F = gen.multilinear_form(rng, n, rng.randint(1, n))
    cert = multilinear_zero(F)
    z = cert.witness
    assert evaluate(F, z) == 0 and any(z)
    assert height_projective(z).value <= height_projective(F.coefficients()).value
    # each recursion step above two variables inserts a zero coordinate
    if F.nvars > max(F.degree, 2):
        assert sum(1 for x in z if x) <= F.nvars - 1


def test_system_height_splits():
    cert = solve_system([P("x1*x2 + x1 - 3*x2", 2)], [1])
    z = cert.witness
    assert height_inhomogeneous(z).value <= cert.checks[2].bound.value
    assert all(ch.holds for ch in cert.checks)
