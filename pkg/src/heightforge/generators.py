"""Seeded random instances for the property suites.

The seed comes from ``HEIGHTFORGE_SEED`` (default 0), so a failing corpus
can be replayed exactly.
"""

from __future__ import annotations

import os
import random
from fractions import Fraction
from itertools import combinations

from .linalg import rank
from .polynomial import MultiPoly, poly_matrix_det


def seeded_rng(offset: int = 0) -> random.Random:
    return random.Random(int(os.environ.get("HEIGHTFORGE_SEED", "0")) * 1000 + offset)


def rational(rng: random.Random, bound: int = 100) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def nonzero_rational(rng: random.Random, bound: int = 100) -> Fraction:
    while True:
        x = rational(rng, bound)
        if x:
            return x


def rational_vector(rng: random.Random, n: int, bound: int = 100) -> tuple[Fraction, ...]:
    """A nonzero vector with entries ``p/q``, ``|p|, q <= bound``."""
    while True:
        v = tuple(rational(rng, bound) for _ in range(n))
        if any(v):
            return v


def integer_matrix(rng: random.Random, rows: int, cols: int, bound: int) -> list[list[int]]:
    return [[rng.randint(-bound, bound) for _ in range(cols)] for _ in range(rows)]


def full_rank_vectors(rng: random.Random, n: int, m: int, bound: int = 10) -> list[list[int]]:
    """``m`` independent integer vectors in ``Z^n``."""
    while True:
        vs = integer_matrix(rng, m, n, bound)
        if rank(vs) == m:
            return vs


def rational_full_rank(rng: random.Random, n: int, m: int, bound: int = 9) -> list[list[Fraction]]:
    """An ``n x m`` rational matrix of rank ``m``."""
    while True:
        A = [[rational(rng, bound) for _ in range(m)] for _ in range(n)]
        if rank(A) == m:
            return A


def subspace_generators(rng: random.Random, max_n: int = 6, bound: int = 10):
    n = rng.randint(1, max_n)
    m = rng.randint(1, n)
    return n, full_rank_vectors(rng, n, m, bound)


def random_poly(rng: random.Random, nvars: int, degree: int, coeff: int,
                terms: int | None = None) -> MultiPoly:
    """Random polynomial of total degree at most ``degree``, coefficients in ``[-coeff, coeff]``."""
    monomials = list(_exponents(nvars, degree))
    count = terms if terms is not None else rng.randint(1, min(len(monomials), 6))
    chosen = rng.sample(monomials, min(count, len(monomials)))
    return MultiPoly(nvars, {e: rng.randint(-coeff, coeff) for e in chosen})


def nonzero_poly(rng: random.Random, nvars: int, degree: int, coeff: int) -> MultiPoly:
    while True:
        P = random_poly(rng, nvars, degree, coeff)
        if not P.is_zero():
            return P


def _exponents(nvars: int, degree: int):
    if nvars == 0:
        yield ()
        return
    for first in range(degree + 1):
        for rest in _exponents(nvars - 1, degree - first):
            yield (first,) + rest


def separated_system(rng: random.Random, max_n: int = 4, max_k: int = 2, max_deg: int = 3,
                     coeff: int = 5):
    """``(polys, I)`` with every polynomial linear in ``x_I`` and ``det`` not identically 0."""
    while True:
        n = rng.randint(2, max_n)
        k = rng.randint(1, min(max_k, n - 1))
        I = tuple(sorted(rng.sample(range(1, n + 1), k)))
        free = tuple(i for i in range(1, n + 1) if i not in I)
        nf = len(free)
        M = [[random_poly(rng, nf, max_deg - 1, coeff) for _ in range(k)] for _ in range(k)]
        if poly_matrix_det(M).is_zero():
            continue
        polys = []
        for row in M:
            F = random_poly(rng, nf, max_deg, coeff).embed(free, n)
            for i, Fj in zip(I, row):
                F = F + MultiPoly.variable(i, n) * Fj.embed(free, n)
            polys.append(F)
        if all(not F.is_zero() for F in polys):
            return polys, I


def single_avoiding_pair(rng: random.Random, max_n: int = 3, max_g: int = 3, max_p: int = 2,
                         coeff: int = 5, constant_p: bool = False):
    """``(F, j, P)`` with ``F`` linear in ``x_j``; ``Q*F1`` is checked by the caller."""
    n = rng.randint(1, max_n)
    g = rng.randint(1, max_g)
    j = rng.randint(1, n)
    others = tuple(i for i in range(1, n + 1) if i != j)
    while True:
        F1 = random_poly(rng, n - 1, g - 1, coeff)
        if not F1.is_zero():
            break
    F2 = random_poly(rng, n - 1, g, coeff)
    F = MultiPoly.variable(j, n) * F1.embed(others, n) + F2.embed(others, n)
    if constant_p:
        P = MultiPoly.constant(1, n)
    else:
        P = nonzero_poly(rng, n, rng.randint(0, max_p), coeff)
    return F, j, P


def multilinear_form(rng: random.Random, n: int, g: int, coeff: int = 9) -> MultiPoly:
    subsets = list(combinations(range(n), g))
    count = rng.randint(1, min(len(subsets), 6))
    terms = {}
    for S in rng.sample(subsets, count):
        c = 0
        while c == 0:
            c = rng.randint(-coeff, coeff)
        terms[tuple(int(i in S) for i in range(n))] = c
    return MultiPoly(n, terms)
