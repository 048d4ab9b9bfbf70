"""Small-height integer vectors: nonvanishing points, small and sparse bases, avoidance.

All searches share one deterministic order: integer points are visited by
increasing sup-norm, lexicographically inside each shell.  Lattice searches
report vectors in canonical form (first nonzero entry positive) and skip
the negated copies, so a search result is always primitive.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product
from typing import Iterator, Sequence

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
from .exact import ExactReal, exact_floor
from .heights import QQ, FieldContext, HeightKind, HeightValue, height_inhomogeneous
from .lattice import by_height, canonical, points_in_cube, saturated_basis, sup_norm
from .linalg import Subspace, intersect, rank, subspace_height
from .polynomial import MultiPoly, int_evaluator


def shell(n: int, s: int) -> Iterator[tuple[int, ...]]:
    """Points of ``Z^n`` with sup-norm exactly ``s``, in lexicographic order."""
    if s == 0:
        yield (0,) * n
        return
    for z in product(range(-s, s + 1), repeat=n):
        if max(abs(x) for x in z) == s:
            yield z


def shells(n: int, radius: int) -> Iterator[tuple[int, ...]]:
    """Every point of ``Z^n`` with sup-norm at most ``radius``, in search order."""
    for s in range(radius + 1):
        yield from shell(n, s)
        if n == 0:
            return


def nonvanishing_witness(P: MultiPoly, max_shell: int | None = None):
    """First integer point in search order where ``P`` does not vanish.

    A nonzero polynomial of degree ``m`` cannot vanish on the whole cube of
    sup-norm ``(m+2)//2``, so that radius always suffices.
    """
    if P.is_zero():
        raise HeightForgeError("ZERO_POLY", "the zero polynomial vanishes everywhere")
    m = P.degree
    radius = (m + 2) // 2 if max_shell is None else max_shell
    value = int_evaluator(P)
    scanned = 0
    for z in shells(P.nvars, radius):
        scanned += 1
        if value(z):
            break
    else:
        raise HeightForgeError(
            "SEARCH_EXHAUSTED", f"P vanishes on every point of sup-norm <= {radius}")
    z = tuple(Fraction(x) for x in z)
    hz = height_inhomogeneous(z)
    bound = Bound("nonvanishing", (Term(Fraction(m + 2, 2)),), (("m", m),))
    cert = Certificate(
        claim="nonvanishing",
        witnesses=(z,),
        heights=(hz,),
        checks=(Check("h(z) <= (m+2)/2", hz.value, bound),),
        trace=(f"scanned {scanned} points up to sup-norm {sup_norm(z)}",
               f"P(z) = {P(z)}"),
    )
    return z, cert


def _schmidt_square(V: Subspace) -> Fraction:
    return subspace_height(V).squared


def search_limit(bound: Bound, max_shell: int | None) -> int:
    """Sup-norm radius for a lattice search certified against ``bound``."""
    return exact_floor(bound.value) if max_shell is None else max_shell


def first_avoiding(W: Subspace, avoid: Sequence[Subspace], limit: int):
    """Smallest canonical point of ``W ∩ Z^n`` outside every subspace in ``avoid``.

    Radii double up to ``limit``; returns ``None`` when the search runs dry.
    """
    basis = saturated_basis(W)
    if not basis:
        return None
    done, r = 0, 1
    while done < limit:
        r = min(2 * r if done else 1, limit)
        for x in by_height(points_in_cube(basis, r)):
            if sup_norm(x) <= done or x != canonical(x):
                continue
            if not any(U.contains(x) for U in avoid):
                return x
        done = r
    return None


def _product_heights(vectors) -> ExactReal:
    out = ExactReal.one()
    for x in vectors:
        out = out * height_inhomogeneous(x).value
    return out


def small_basis(V: Subspace, ctx: FieldContext = QQ, max_shell: int | None = None):
    """A basis of ``V`` by integer vectors whose height product is at most the Schmidt height.

    The first attempt is an LLL-reduced basis of ``V ∩ Z^n``.  If its product
    is too large, vectors are taken greedily by increasing sup-norm; this
    picks the successive minima, which have the smallest possible product.
    """
    m = V.dim
    if m == 0:
        raise HeightForgeError("EMPTY_SUBSPACE", "the zero subspace has no basis")
    hv2 = _schmidt_square(V)
    bound = Bound("small-basis",
                  siegel_terms(ctx, Fraction(m, 2 * ctx.degree)) + (sqrt_term(hv2),),
                  (("m", m), ("Hcal(V)^2", hv2)))
    basis = [canonical(v) for v in saturated_basis(V)]
    notes = ["LLL-reduced basis of the integer lattice"]
    if not Check("", _product_heights(basis), bound).holds:
        limit = search_limit(Bound("", (sqrt_term(hv2),)), max_shell)
        basis = _greedy_basis(V, limit)
        notes = ["LLL product too large; greedy successive minima used"]
    cert = _basis_certificate("small-basis", basis, bound, notes,
                              (f"dim V = {m}", f"Hcal(V)^2 = {hv2}"))
    return cert.witnesses, cert


def _greedy_basis(V: Subspace, limit: int) -> list[tuple[int, ...]]:
    lattice = saturated_basis(V)
    chosen: list[tuple[int, ...]] = []
    done, r = 0, 1
    while len(chosen) < V.dim and done < limit:
        r = min(2 * r if done else 1, limit)
        for x in by_height(points_in_cube(lattice, r)):
            if sup_norm(x) <= done or x != canonical(x):
                continue
            if rank(chosen + [x]) > len(chosen):
                chosen.append(x)
                if len(chosen) == V.dim:
                    break
        done = r
    if len(chosen) < V.dim:
        raise HeightForgeError(
            "SEARCH_EXHAUSTED", f"fewer than {V.dim} independent vectors of sup-norm <= {limit}")
    return chosen


def _basis_certificate(claim, basis, bound, notes, trace) -> Certificate:
    vectors = tuple(tuple(Fraction(x) for x in v) for v in basis)
    heights = tuple(height_inhomogeneous(v) for v in vectors)
    product_height = HeightValue(HeightKind.h, _product_heights(vectors))
    return Certificate(
        claim=claim,
        witnesses=vectors,
        heights=heights,
        checks=(Check("prod h(x_i) <= Hcal(V)", product_height.value, bound),),
        trace=tuple(trace),
        notes=tuple(notes),
    )


def avoidance_bound(m: int, k: int, hv2: Fraction, ctx: FieldContext) -> Bound:
    d = ctx.degree
    return Bound(
        "avoidance",
        (Term(2, Fraction(1, 2)), Term(m), discriminant_term(ctx, Fraction(m + 1, 2 * d)),
         Term(k, Fraction(1, d)), sqrt_term(hv2)),
        (("m", m), ("k", k), ("Hcal(V)^2", hv2)),
    )


def avoid_subspaces(V: Subspace, avoid: Sequence[Subspace], ctx: FieldContext = QQ,
                    max_shell: int | None = None):
    """Smallest integer vector of ``V`` lying in none of the proper subspaces ``avoid``."""
    avoid = list(avoid)
    if not avoid:
        raise ValueError("need at least one subspace to avoid")
    if V.dim == 0:
        raise HeightForgeError("EMPTY_SUBSPACE", "the zero subspace has no nonzero vector")
    for i, U in enumerate(avoid, 1):
        if U.ambient_dim != V.ambient_dim:
            raise HeightForgeError("DIM_MISMATCH", f"U{i} lives in a different space")
        if U.contains_subspace(V):
            raise HeightForgeError("HYPOTHESIS_VIOLATED", f"V is contained in U{i}")
    hv2 = _schmidt_square(V)
    bound = avoidance_bound(V.dim, len(avoid), hv2, ctx)
    limit = search_limit(bound, max_shell)
    x = first_avoiding(V, avoid, limit)
    if x is None:
        raise HeightForgeError(
            "SEARCH_EXHAUSTED", f"no vector of sup-norm <= {limit} avoids every U_i")
    x = tuple(Fraction(v) for v in x)
    hx = height_inhomogeneous(x)
    cert = Certificate(
        claim="avoidance",
        witnesses=(x,),
        heights=(hx,),
        checks=(Check("h(x) <= sqrt(2) m k Hcal(V)", hx.value, bound),),
        trace=(f"dim V = {V.dim}, {len(avoid)} subspaces avoided",),
    )
    return x, cert


def sparse_basis(V: Subspace, ctx: FieldContext = QQ, max_shell: int | None = None):
    """A basis of ``V`` whose vectors each have at most ``n - m + 1`` nonzero entries.

    Coordinate sets ``I`` of size ``t = n - m + 1`` are visited in lexicographic
    order.  From each ``V ∩ span{e_i : i in I}`` the smallest lattice vectors
    outside the span of those already chosen are added until that
    intersection is exhausted.
    """
    n, m = V.ambient_dim, V.dim
    if m == 0:
        raise HeightForgeError("EMPTY_SUBSPACE", "the zero subspace has no basis")
    t = n - m + 1
    hv2 = _schmidt_square(V)
    d = ctx.degree
    bound = Bound("sparse-basis",
                  (Term(2, Fraction(1, 2)), Term(m),
                   discriminant_term(ctx, Fraction(m + 1, 2 * d)), sqrt_term(hv2)),
                  (("m", m), ("t", t), ("Hcal(V)^2", hv2)))
    limit = search_limit(bound, max_shell)
    chosen: list[tuple[int, ...]] = []
    trace = [f"n = {n}, m = {m}, t = {t}"]
    for I in combinations(range(n), t):
        if len(chosen) == m:
            break
        W = intersect(V, Subspace.coordinate(n, I))
        while W.dim and len(chosen) < m:
            S = Subspace.span(chosen, n) if chosen else Subspace.zero(n)
            if S.contains_subspace(W):
                break
            x = first_avoiding(W, [S], limit)
            if x is None:
                raise HeightForgeError(
                    "SEARCH_EXHAUSTED", f"no new vector of sup-norm <= {limit} on I = {_one_based(I)}")
            chosen.append(x)
            trace.append(f"I = {_one_based(I)}: {x}")
    if len(chosen) < m:
        raise HeightForgeError("INTERNAL", f"only {len(chosen)} of {m} sparse vectors found")
    vectors = tuple(tuple(Fraction(x) for x in v) for v in chosen)
    heights = tuple(height_inhomogeneous(v) for v in vectors)
    checks = tuple(Check(f"h(x_{i}) <= sqrt(2) m Hcal(V)", h.value, bound)
                   for i, h in enumerate(heights, 1))
    cert = Certificate(
        claim="sparse-basis",
        witnesses=vectors,
        heights=heights,
        checks=checks,
        trace=tuple(trace),
        notes=(f"every vector has at most {t} nonzero coordinates",),
    )
    return vectors, cert


def _one_based(I) -> str:
    return "{" + ",".join(str(i + 1) for i in I) + "}"
