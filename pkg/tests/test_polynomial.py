from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from heightforge.errors import HeightForgeError, ProblemSyntaxError
from heightforge.linalg import det
from heightforge.polynomial import (
    MultiPoly,
    decompose_I_separated,
    evaluate,
    format_poly,
    is_multilinear_form,
    parse_poly,
    poly_image_height_certificate,
    poly_matrix_det,
    rational_roots,
    substitute_linear,
)

coeffs = st.fractions(min_value=-9, max_value=9, max_denominator=4)
values = st.fractions(min_value=-5, max_value=5, max_denominator=3)


def P(text, n):
    return parse_poly(text, n)


@st.composite
def polys(draw, nvars=None, max_deg=3):
    n = nvars if nvars is not None else draw(st.integers(1, 3))
    exps = st.tuples(*[st.integers(0, max_deg) for _ in range(n)]).filter(lambda e: sum(e) <= max_deg)
    terms = draw(st.dictionaries(exps, coeffs, max_size=5))
    return MultiPoly(n, terms)


def test_evaluate_examples():
    assert evaluate(P("x1*x2 - 1", 2), (1, 1)) == 0
    assert evaluate(P("x1*x2 + x3", 3), (2, 3, -6)) == 0
    assert evaluate(P("2*x1^2", 1), (3,)) == 18
    with pytest.raises(HeightForgeError) as err:
        evaluate(P("x1", 1), (1, 2))
    assert err.value.code == "DIM_MISMATCH"


def test_graded_lex_display_and_height():
    F = P("1 - 2/3*x3^2 + x1*x2", 3)
    assert format_poly(F) == "x1*x2 - 2/3*x3^2 + 1"
    assert F.coefficients() == (1, Fraction(-2, 3), 1)
    assert F.height().value.to_fraction() == 3
    assert F.num_terms == 3 and F.degree == 2


def test_zero_polynomial_conventions():
    Z = MultiPoly(2)
    assert Z.is_zero() and Z.degree == 0 and Z.num_terms == 0
    assert format_poly(Z) == "0"


def test_parser_grammar():
    assert P("(x1 + 1)^2", 1) == P("x1^2 + 2*x1 + 1", 1)
    assert P("-2/5*x1 - -x2", 2) == P("x2 - 2/5*x1", 2)
    with pytest.raises(ProblemSyntaxError) as err:
        P("x1 + * 2", 2)
    assert (err.value.line, err.value.column) == (1, 6)
    with pytest.raises(ProblemSyntaxError, match="unknown variable x3"):
        P("x3", 2)
    with pytest.raises(ProblemSyntaxError):
        P("x1^x2", 2)


def test_decompose_examples():
    d = decompose_I_separated(P("x1*x2 + x3 + 1", 3), [1, 3])
    assert d.free_vars == (2,)
    assert d.coefficients == (P("x1", 1), MultiPoly.constant(1, 1))
    assert d.tail == MultiPoly.constant(1, 1)
    d = decompose_I_separated(P("x2^3", 2), [1])
    assert d.coefficients[0].is_zero() and d.tail == P("x1^3", 1)
    for bad in ("x1^2", "x1*x2"):
        with pytest.raises(HeightForgeError) as err:
            decompose_I_separated(P(bad, 3), [1, 2])
        assert err.value.code == "NOT_I_SEPARATED"


def test_det_examples():
    x2 = MultiPoly.variable(2, 2)
    one = MultiPoly.constant(1, 2)
    assert poly_matrix_det([[x2, one], [one, x2]]) == P("x2^2 - 1", 2)
    assert poly_matrix_det([[one]]) == one
    x1 = MultiPoly.variable(1, 2)
    assert poly_matrix_det([[x1, x1], [one, one]]).is_zero()


def test_substitution_examples():
    G, cert = substitute_linear(P("x1*x2", 2), [[1], [1]])
    assert G == P("x1^2", 1) and cert.satisfied
    G, cert = substitute_linear(P("x1 + x2", 2), [[1, 0], [0, 1]])
    assert G == P("x1 + x2", 2)
    G, cert = substitute_linear(P("x1^2", 1), [[2]])
    assert G == P("4*x1^2", 1)
    assert cert.heights[0].value.to_fraction() == 4 and cert.bound.value == 4 and cert.satisfied


def test_image_height_examples():
    cert = poly_image_height_certificate([P("x1^2", 1)], (3,))
    assert cert.heights[0].value.to_fraction() == 9 and cert.bound.value == 9 and cert.satisfied
    cert = poly_image_height_certificate([P("2*x1 + 1", 1), P("x1 - 1", 1)], (2,))
    assert cert.witness == (5, 1)
    assert cert.bound.value == 8 and cert.satisfied


def test_multilinear_examples():
    assert is_multilinear_form(P("x1*x2 + x2*x3", 3)) == (True, 2)
    assert is_multilinear_form(P("x1^2", 1))[0] is False
    assert is_multilinear_form(P("x1 + x2*x3", 3))[0] is False


def test_rational_root_examples():
    assert rational_roots(P("2*x1^2 - x1 - 1", 1)) == [Fraction(-1, 2), 1]
    assert rational_roots(P("x1^2 + 1", 1)) == []
    assert rational_roots(P("x1^3", 1)) == [0, 0, 0]
    assert rational_roots(P("x1^2*(x1 - 1/2)^2", 1)) == [0, 0, Fraction(1, 2), Fraction(1, 2)]
    with pytest.raises(HeightForgeError) as err:
        rational_roots(MultiPoly(1))
    assert err.value.code == "ZERO_POLY"


@given(polys())
def test_text_round_trip(F):
    assert parse_poly(format_poly(F), F.nvars) == F


@settings(deadline=None)
@given(st.lists(polys(nvars=2, max_deg=2), min_size=4, max_size=4), polys(nvars=2, max_deg=2))
def test_decompose_then_reassemble(parts, tail):
    n = 4
    I = (1, 3)
    free = (2, 4)
    F = tail.embed(free, n)
    for i, Fi in zip(I, parts):
        F = F + MultiPoly.variable(i, n) * Fi.embed(free, n)
    assert decompose_I_separated(F, I).reassemble() == F


@settings(deadline=None, max_examples=50)
@given(st.lists(polys(nvars=2, max_deg=2), min_size=4, max_size=4),
       st.lists(st.tuples(values, values), min_size=1, max_size=5))
def test_det_commutes_with_evaluation(entries, points):
    M = [entries[:2], entries[2:]]
    D = poly_matrix_det(M)
    for z in points:
        assert evaluate(D, z) == det([[evaluate(p, z) for p in row] for row in M])


@settings(deadline=None, max_examples=50)
@given(polys(nvars=2), st.lists(st.lists(values, min_size=2, max_size=2), min_size=2, max_size=2),
       st.lists(st.tuples(values, values), min_size=1, max_size=5))
def test_substitution_commutes_with_evaluation(F, A, points):
    G, cert = substitute_linear(F, A)
    assert cert.satisfied
    for y in points:
        Ay = tuple(sum(a * b for a, b in zip(row, y)) for row in A)
        assert evaluate(G, y) == evaluate(F, Ay)


@settings(deadline=None)
@given(st.lists(polys(nvars=2), min_size=1, max_size=3), st.tuples(values, values))
def test_image_height_bound(Fs, z):
    cert = poly_image_height_certificate(Fs, z)
    assert cert.checks[1].holds
    if all(c.denominator == 1 for F in Fs for c in F.coefficients()):
        assert cert.satisfied


def test_individual_heights_not_enough_for_rational_coefficients():
    two = MultiPoly.constant(2, 1)
    cert = poly_image_height_certificate([two, MultiPoly.constant(Fraction(1, 2), 1)], (0,))
    assert cert.heights[0].value.to_fraction() == 4
    assert cert.bound.value == 2 and not cert.checks[0].holds
    assert cert.checks[1].bound.value == 4 and cert.checks[1].holds
    assert cert.notes


@settings(deadline=None, max_examples=50)
@given(polys(nvars=1, max_deg=4))
def test_rational_roots_complete(f):
    assume(not f.is_zero())
    roots = set(rational_roots(f))
    for r in roots:
        assert evaluate(f, (r,)) == 0
    for p in range(-20, 21):
        for q in range(1, 21):
            if evaluate(f, (Fraction(p, q),)) == 0:
                assert Fraction(p, q) in roots
