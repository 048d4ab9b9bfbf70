"""Small rational zeros of polynomials, each returned with a height certificate.

* :func:`solve_system` handles systems linear in a block of variables ``x_I``.
* :func:`solve_single_avoiding` handles one polynomial linear in one variable,
  with the zero kept off the zero set of a second polynomial.
* :func:`solve_on_line` looks for a zero on a rational line.
* :func:`multilinear_zero`, :func:`multilinear_zero_on_subspace` and
  :func:`linear_form_zero_on_subspace` find zeros of multilinear forms.

Variable indices are 1-based throughout, matching the names ``x1 .. xn``.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .certificate import (
    Bound,
    Certificate,
    Check,
    Term,
    discriminant_term,
    siegel_terms,
    sqrt_term,
)
from .errors import HeightForgeError
from .heights import (
    QQ,
    FieldContext,
    height_inhomogeneous,
    height_projective,
)
from .linalg import Subspace, intersect, inverse, kernel, mat_vec, rank, subspace_height
from .polynomial import (
    MultiPoly,
    decompose_I_separated,
    evaluate,
    format_poly,
    is_multilinear_form,
    poly_matrix_det,
    rational_roots,
    substitute_linear,
)
from .siegel import nonvanishing_witness, small_basis, sparse_basis

SEED = 0


def _fractions(z) -> tuple[Fraction, ...]:
    return tuple(Fraction(x) for x in z)


def _show(z) -> str:
    return "(" + ", ".join(str(x) for x in z) + ")"


def _h(z) -> Fraction:
    return height_inhomogeneous(z).value.to_fraction()


# systems linear in I-separated variables


def _eval_matrix(M, z):
    return [[evaluate(p, z) for p in row] for row in M]


def _generic_minor(M, rng: random.Random):
    """Generic rank ``r`` and the lexicographically first ``r x r`` minor not identically zero.

    Random evaluations only speed things up: a nonzero value proves a minor is
    not identically zero, and every other verdict is settled symbolically.
    """
    k = len(M)
    nv = M[0][0].nvars
    samples = [tuple(rng.randint(-1000, 1000) for _ in range(nv)) for _ in range(3)]
    values = [_eval_matrix(M, z) for z in samples]

    def nonzero(rows, cols) -> bool:
        for A in values:
            if rank([[A[i][j] for j in cols] for i in rows]) == len(rows):
                return True
        return not poly_matrix_det([[M[i][j] for j in cols] for i in rows]).is_zero()

    r = max(rank(A) for A in values)
    while r < k and any(nonzero(R, C) for R in combinations(range(k), r + 1)
                        for C in combinations(range(k), r + 1)):
        r += 1
    if r == 0:
        return 0, (), ()
    for R in combinations(range(k), r):
        for C in combinations(range(k), r):
            if nonzero(R, C):
                return r, R, C
    raise HeightForgeError("INTERNAL", "generic rank without a nonvanishing minor")


def system_bound(k: int, D: int, m: int, N: int, hmax: Fraction, ctx: FieldContext) -> Bound:
    return Bound(
        "system",
        (Term(k, k + 1), discriminant_term(ctx, Fraction(1, ctx.degree)),
         Term(Fraction(D + 2, 2), 2 * k * m + 1), Term(N * hmax, 2 * k)),
        (("k", k), ("D", D), ("m", m), ("N", N), ("hmax", hmax)),
    )


def solve_system(polys: Sequence[MultiPoly], index_set: Sequence[int],
                 ctx: FieldContext = QQ, max_shell: int | None = None) -> Certificate:
    """A common zero of polynomials that are jointly linear in the variables ``x_I``.

    Writing the system as ``F(x_I') x_I = f(x_I')``, the free variables are
    set to the first integer point where ``det F`` does not vanish and the
    linear system is then solved exactly.  When ``det F`` vanishes identically
    a nonsingular square block of generic rank is used instead and the other
    ``x_I`` are set to zero.
    """
    polys = list(polys)
    I = tuple(sorted(set(index_set)))
    k = len(I)
    if not polys or len(polys) != k:
        raise HeightForgeError("DIM_MISMATCH", f"need {k} polynomials for an index set of size {k}")
    n = polys[0].nvars
    if any(F.nvars != n for F in polys):
        raise HeightForgeError("DIM_MISMATCH", "polynomials in different numbers of variables")
    forms = [decompose_I_separated(F, I) for F in polys]
    free = forms[0].free_vars
    M = [list(form.coefficients) for form in forms]
    rhs = [-form.tail for form in forms]
    D = sum(F.degree for F in polys)
    m = max(F.degree for F in polys)
    N = max(F.num_terms for F in polys)
    hmax = max(F.height().value.to_fraction() for F in polys)
    trace = [f"free variables {', '.join(f'x{i}' for i in free)}"]

    P = poly_matrix_det(M)
    if not P.is_zero():
        r, rows, cols = k, tuple(range(k)), tuple(range(k))
    else:
        r, rows, cols = _generic_minor(M, random.Random(SEED))
        trace.append(f"det vanishes identically; generic rank {r}")
        P = (poly_matrix_det([[M[i][j] for j in cols] for i in rows]) if r
             else MultiPoly.constant(1, n - k))
    trace.append(f"P = {format_poly(P.embed(free, n))}")

    z_free, _ = nonvanishing_witness(P, max_shell)
    z_I = [Fraction(0)] * k
    if r:
        A = [[evaluate(M[i][j], z_free) for j in cols] for i in rows]
        b = [evaluate(rhs[i], z_free) for i in rows]
        for j, v in zip(cols, mat_vec(inverse(A), b)):
            z_I[j] = v
    z = [Fraction(0)] * n
    for i, v in zip(I, z_I):
        z[i - 1] = v
    for i, v in zip(free, z_free):
        z[i - 1] = v
    z = tuple(z)
    trace.append(f"z_I' = {_show(z_free)}, z_I = {_show(z_I)}")
    for l, F in enumerate(polys, 1):
        if evaluate(F, z) != 0:
            raise HeightForgeError(
                "RANK_HYPOTHESIS_FAILED",
                f"F{l} does not vanish at {_show(z)}: the augmented matrix has larger rank there")
        trace.append(f"F{l}(z) = 0")

    hz = height_inhomogeneous(z)
    h_I, h_free = _h(z_I), _h(z_free)
    checks = (
        Check("h(z) <= k^(k+1) ((D+2)/2)^(2km+1) (N hmax)^(2k)", hz.value,
              system_bound(k, D, m, N, hmax, ctx)),
        Check("h(z_I') <= (D+2)/2", height_inhomogeneous(z_free).value,
              Bound("free-part", (Term(Fraction(D + 2, 2)),))),
        Check("h(z) <= h(z_I) h(z_I')", hz.value,
              Bound("split", (Term(h_I), Term(h_free)))),
    )
    return Certificate("system-zero", (z,), (hz,), checks, tuple(trace))


# one polynomial, linear in one variable, avoiding the zeros of another


def split_variable(F: MultiPoly, j: int):
    """``F = x_j F1 + F2``; returns ``(F1, F2, others)`` with ``F1, F2`` in the ``others``."""
    n = F.nvars
    if not 1 <= j <= n:
        raise HeightForgeError("NOT_LINEAR_IN_VAR", f"x{j} is not a variable")
    others = tuple(i for i in range(1, n + 1) if i != j)
    parts: tuple[dict, dict] = ({}, {})
    for e, c in F.terms.items():
        if e[j - 1] > 1:
            raise HeightForgeError("NOT_LINEAR_IN_VAR", f"x{j} occurs to a power above 1")
        parts[e[j - 1]][tuple(e[i - 1] for i in others)] = c
    return MultiPoly(n - 1, parts[1]), MultiPoly(n - 1, parts[0]), others


def _cleared_substitution(P: MultiPoly, j: int, F1: MultiPoly, F2: MultiPoly) -> MultiPoly:
    """``P(x', -F2/F1) * F1^deg P`` as a polynomial in the other variables."""
    m = P.degree
    neg = -F2
    out = MultiPoly(F1.nvars)
    cache: dict[int, MultiPoly] = {}

    def pw(a: int) -> MultiPoly:
        if a not in cache:
            cache[a] = (neg ** a) * (F1 ** (m - a))
        return cache[a]

    for e, c in P.terms.items():
        rest = tuple(x for i, x in enumerate(e) if i != j - 1)
        out = out + MultiPoly(F1.nvars, {rest: c}) * pw(e[j - 1])
    return out


def single_bound(F: MultiPoly, P: MultiPoly) -> Bound:
    N, hF = F.num_terms, F.height().value.to_fraction()
    if P.is_constant():
        return Bound("single", (Term(N), Term(hF)), (("N", N), ("h(F)", hF)))
    m, g = P.degree, F.degree
    return Bound("single", (Term(N), Term(Fraction(m * (2 * g - 1) + 2, 2), g + 1), Term(hF)),
                 (("N", N), ("m", m), ("g", g), ("h(F)", hF)))


def solve_single_avoiding(F: MultiPoly, linear_var: int, P: MultiPoly | None = None,
                          max_shell: int | None = None) -> Certificate:
    """A zero of ``F`` off the zero set of ``P``, for ``F`` linear in ``x_j``.

    With ``F = x_j F1 + F2`` and ``Q = P(x', -F2/F1) F1^deg P``, the other
    coordinates are the first integer point where ``Q F1`` is nonzero and
    ``x_j = -F2/F1`` there.
    """
    n, j = F.nvars, linear_var
    if P is None:
        P = MultiPoly.constant(1, n)
    if P.nvars != n:
        raise HeightForgeError("DIM_MISMATCH", "P and F use different numbers of variables")
    if P.is_zero():
        raise HeightForgeError("AVOIDANCE_IMPOSSIBLE", "P is identically zero")
    F1, F2, others = split_variable(F, j)
    if F1.is_zero():
        raise HeightForgeError("NOT_LINEAR_IN_VAR", f"x{j} does not occur in F")
    Q = _cleared_substitution(P, j, F1, F2)
    R = Q * F1
    if R.is_zero():
        raise HeightForgeError("AVOIDANCE_IMPOSSIBLE", "Q*F1 vanishes identically: Z(F) lies in Z(P)")
    radius = (R.degree + 2) // 2 if max_shell is None else max_shell
    z_rest, _ = nonvanishing_witness(R, radius)
    zj = -evaluate(F2, z_rest) / evaluate(F1, z_rest)
    z = [Fraction(0)] * n
    z[j - 1] = zj
    for i, v in zip(others, z_rest):
        z[i - 1] = v
    z = tuple(z)
    if evaluate(F, z) != 0 or evaluate(P, z) == 0:
        raise HeightForgeError("INTERNAL", f"constructed point {_show(z)} is not a valid witness")
    hz = height_inhomogeneous(z)
    checks = [Check("h(z) <= N(F) ((m(2g-1)+2)/2)^(g+1) h(F)", hz.value, single_bound(F, P))]
    checks.append(Check(
        "h(z') <= (deg(Q F1)+2)/2", height_inhomogeneous(z_rest).value,
        Bound("search-radius", (Term(Fraction(R.degree + 2, 2)),))))
    trace = (f"F1 = {format_poly(F1)}, F2 = {format_poly(F2)}",
             f"Q = {format_poly(Q)}",
             f"z' = {_show(z_rest)}, x{j} = {zj}",
             "F(z) = 0", f"P(z) = {evaluate(P, z)}")
    return Certificate("single-avoiding", (z,), (hz,), tuple(checks), trace)


# a zero on a rational line


def solve_on_line(F: MultiPoly, V: Subspace, P: MultiPoly | None = None,
                  ctx: FieldContext = QQ) -> Certificate:
    """A nonzero rational point of the line ``V`` where ``F`` vanishes and ``P`` does not."""
    n = F.nvars
    if V.ambient_dim != n:
        raise HeightForgeError("DIM_MISMATCH", "V and F live in different spaces")
    if V.dim != 1:
        raise HeightForgeError("DIM_MISMATCH", f"V must be a line, got dimension {V.dim}")
    if P is None:
        P = MultiPoly.constant(1, n)
    (y,), _ = small_basis(V, ctx)
    FV, _ = substitute_linear(F, [[c] for c in y])
    if FV.is_zero():
        raise HeightForgeError("NOT_APPLICABLE", "F vanishes identically on V")
    roots = rational_roots(FV)
    candidates = sorted({a for a in roots if a}, key=lambda a: (_h(a), a < 0))
    if not candidates:
        raise HeightForgeError("NO_RATIONAL_ZERO", "F has no nonzero rational zero on V")
    for a in candidates:
        z = tuple(a * c for c in y)
        if evaluate(P, z) != 0:
            break
    else:
        raise HeightForgeError("AVOIDANCE_FAILED", "P vanishes at every rational zero of F on V")

    m, d = P.degree, ctx.degree
    hv2 = subspace_height(V).squared
    N, hF = F.num_terms, F.height().value.to_fraction()
    hFV = FV.height().value.to_fraction()
    bound = Bound(
        "line",
        siegel_terms(ctx, Fraction(m + 1, 2 * d))
        + (Term(N, Fraction(3, 2)), Term(hF), Term(hv2, Fraction(m + 1, 2))),
        (("m", m), ("N", N), ("h(F)", hF), ("Hcal(V)^2", hv2)))
    root_product = Fraction(1)
    for a in roots:
        root_product *= _h(a)
    hz = height_inhomogeneous(z)
    checks = (
        Check("h(z) <= N(F)^(3/2) h(F) Hcal(V)^(m+1)", hz.value, bound),
        Check("prod h(a_i) <= N(F)^(1/2) h(F_V)", height_inhomogeneous(root_product).value,
              Bound("roots", (Term(N, Fraction(1, 2)), Term(hFV)))),
        Check("h(F_V) <= N(F) h(F) h(y)^deg F", FV.height().value,
              Bound("restriction", (Term(N), Term(hF), Term(_h(y), F.degree)))),
    )
    trace = (f"y = {_show(y)}", f"F_V = {format_poly(FV)}",
             "rational roots: " + (", ".join(str(a) for a in roots) or "none"),
             f"alpha = {a}", f"P(z) = {evaluate(P, z)}")
    return Certificate("line-zero", (z,), (hz,), checks, trace)


# multilinear forms


def _require_multilinear(F: MultiPoly) -> int:
    if F.is_zero():
        raise HeightForgeError("ZERO_POLY", "the zero form vanishes everywhere")
    ok, g = is_multilinear_form(F)
    if not ok:
        raise HeightForgeError("NOT_MULTILINEAR", "F is not homogeneous and linear in each variable")
    return g


def _multilinear_point(F: MultiPoly, g: int) -> list[Fraction]:
    n = F.nvars
    if n == g:
        return [Fraction(0)] * (n - 1) + [Fraction(1)]
    if n == 2:
        a = F.terms.get((1, 0), Fraction(0))
        b = F.terms.get((0, 1), Fraction(0))
        return [-b, a]
    for i in range(1, n + 1):
        _, F2, others = split_variable(F, i)
        if not F2.is_zero():
            rest = _multilinear_point(F2, g)
            return rest[:i - 1] + [Fraction(0)] + rest[i - 1:]
    raise HeightForgeError("INTERNAL", "every variable divides a form of degree below n")


def multilinear_zero(F: MultiPoly) -> Certificate:
    """A nonzero zero of a multilinear form with ``H(z) <= H(F)``.

    Two variables: ``(-b, a)`` for ``a x1 + b x2`` and ``(0, 1)`` for ``c x1 x2``.
    Otherwise drop the first variable whose deletion leaves a nonzero form,
    solve that smaller form, and put 0 in the dropped slot.
    """
    g = _require_multilinear(F)
    n = F.nvars
    if n < 2:
        raise HeightForgeError("HYPOTHESIS_FAILED", "a form in one variable has no nonzero zero")
    z = tuple(_multilinear_point(F, g))
    if evaluate(F, z) != 0:
        raise HeightForgeError("INTERNAL", f"{_show(z)} is not a zero of F")
    Hz = height_projective(z)
    HF = height_projective(F.coefficients()).value.to_fraction()
    checks = (Check("H(z) <= H(F)", Hz.value, Bound("multilinear", (Term(HF),))),)
    trace = (f"n = {n}, g = {g}", "F(z) = 0")
    return Certificate("multilinear-zero", (z,), (Hz,), checks, trace)


def multilinear_zero_on_subspace(F: MultiPoly, V: Subspace, P: MultiPoly | None = None,
                                 ctx: FieldContext = QQ) -> Certificate:
    """Zeros of a multilinear form on ``V`` when ``dim V + deg F - 1 > n``.

    Then every vector of a sparse basis of ``V`` has fewer than ``deg F``
    nonzero coordinates, so each monomial of ``F`` vanishes on it.
    """
    g = _require_multilinear(F)
    n, m = F.nvars, V.dim
    if V.ambient_dim != n:
        raise HeightForgeError("DIM_MISMATCH", "V and F live in different spaces")
    if not (m + g - 1 > n and g > 1):
        raise HeightForgeError(
            "HYPOTHESIS_FAILED", f"need dim V + deg F - 1 > n and deg F > 1 (m={m}, g={g}, n={n})")
    basis, cert = sparse_basis(V, ctx)
    for i, x in enumerate(basis, 1):
        if evaluate(F, x) != 0:
            raise HeightForgeError("INTERNAL", f"sparse vector x_{i} is not a zero of F")
    trace = cert.trace + ("F vanishes on every basis vector",)
    if P is None:
        return Certificate("multilinear-subspace", basis, cert.heights, cert.checks, trace, cert.notes)
    if P.nvars != n:
        raise HeightForgeError("DIM_MISMATCH", "P and F use different numbers of variables")
    for x, hx, check in zip(basis, cert.heights, cert.checks):
        if evaluate(P, x) != 0:
            return Certificate("multilinear-subspace", (x,), (hx,), (check,),
                               trace + (f"P(z) = {evaluate(P, x)}",), cert.notes)
    raise HeightForgeError(
        "AVOIDANCE_FAILED",
        "P vanishes on the whole sparse basis; the zeros of P may contain too much of V")


def linear_form_zero_on_subspace(F: MultiPoly, V: Subspace, P: MultiPoly | None = None,
                                 ctx: FieldContext = QQ) -> Certificate:
    """A small zero of a linear form on ``V``, optionally off the zero set of ``P``."""
    n, m = F.nvars, V.dim
    if F.is_zero() or not F.is_homogeneous() or F.degree != 1:
        raise HeightForgeError("NOT_LINEAR_FORM", "F must be a nonzero linear form")
    if V.ambient_dim != n:
        raise HeightForgeError("DIM_MISMATCH", "V and F live in different spaces")
    if m < 2:
        raise HeightForgeError("HYPOTHESIS_FAILED", "V must have dimension at least 2")
    row = tuple(F.terms.get(tuple(int(i == j) for i in range(n)), Fraction(0)) for j in range(n))
    W = intersect(V, kernel([row]))
    notes = []
    if W == V:
        notes.append("DEGENERATE: V lies inside the zero set of F, so any vector of V works")
    basis, _ = small_basis(W, ctx)
    hv2 = subspace_height(V).squared
    HF = height_projective(row).value.to_fraction()
    d = ctx.degree
    trace = [f"dim V = {m}, dim V n U(F) = {W.dim}",
             "small basis of V n U(F): " + ", ".join(_show(x) for x in basis)]
    if P is None:
        z = min(basis, key=lambda x: height_projective(x).value.to_fraction())
        e = Fraction(1, m - 1)
        bound = Bound("linear-form",
                      siegel_terms(ctx, Fraction(1, 2 * d))
                      + (Term(n, e / 2), Term(hv2, e / 2), Term(HF, e)),
                      (("n", n), ("m", m), ("Hcal(V)^2", hv2), ("H(F)", HF)))
        label = "H(z) <= (sqrt(n) Hcal(V) H(F))^(1/(m-1))"
    else:
        if P.nvars != n:
            raise HeightForgeError("DIM_MISMATCH", "P and F use different numbers of variables")
        z = next((x for x in basis if evaluate(P, x) != 0), None)
        if z is None:
            raise HeightForgeError("AVOIDANCE_FAILED", "P vanishes on the whole small basis")
        trace.append(f"P(z) = {evaluate(P, z)}")
        bound = Bound("linear-form-avoiding",
                      (Term(n, Fraction(1, 2)), discriminant_term(ctx, Fraction(m - 1, 2 * d)),
                       sqrt_term(hv2), Term(HF)),
                      (("n", n), ("m", m), ("Hcal(V)^2", hv2), ("H(F)", HF)))
        label = "H(z) <= sqrt(n) Hcal(V) H(F)"
    Hz = height_projective(z)
    return Certificate("linear-form-zero", (_fractions(z),), (Hz,), (Check(label, Hz.value, bound),),
                       tuple(trace), tuple(notes))
