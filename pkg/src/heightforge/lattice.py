"""Integer lattices inside rational subspaces.

``saturated_basis(V)`` returns an LLL-reduced basis of ``V ∩ Z^n`` (never a
mere rescaling of a rational basis, which can miss lattice points).
``points_in_cube`` lists every lattice point of sup-norm at most ``r`` by
Fincke-Pohst enumeration in the circumscribed Euclidean ball.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .linalg import Subspace

DELTA = Fraction(3, 4)


def integer_kernel(rows: Sequence[Sequence[int]], n: int) -> list[list[int]]:
    """A Z-basis of ``{x in Z^n : rows . x = 0}``.

    Unimodular row operations bring ``[rows^T | I]`` to echelon form in its
    left block; the identity part of the rows that became zero spans the
    integer kernel.
    """
    s = len(rows)
    work = [[rows[i][j] for i in range(s)] + [int(j == k) for k in range(n)] for j in range(n)]
    r = 0
    for col in range(s):
        while True:
            live = [i for i in range(r, n) if work[i][col]]
            if not live:
                break
            p = min(live, key=lambda i: abs(work[i][col]))
            work[r], work[p] = work[p], work[r]
            pivot = work[r][col]
            done = True
            for i in range(r + 1, n):
                q = work[i][col] // pivot
                if q:
                    work[i] = [a - q * b for a, b in zip(work[i], work[r])]
                if work[i][col]:
                    done = False
            if done:
                r += 1
                break
        if r == n:
            break
    return [row[s:] for row in work[r:]]


def gram_schmidt(b: Sequence[Sequence[int]]):
    """Exact Gram-Schmidt: returns ``(mu, B)`` with ``B[i] = |b_i*|^2``."""
    k = len(b)
    star: list[list[Fraction]] = []
    mu = [[Fraction(0)] * k for _ in range(k)]
    B: list[Fraction] = []
    for i in range(k):
        v = [Fraction(x) for x in b[i]]
        for j in range(i):
            mu[i][j] = sum((Fraction(x) * y for x, y in zip(b[i], star[j])), Fraction(0)) / B[j]
            v = [a - mu[i][j] * c for a, c in zip(v, star[j])]
        star.append(v)
        B.append(sum((x * x for x in v), Fraction(0)))
    return mu, B


def lll_reduce(basis: Sequence[Sequence[int]], delta: Fraction = DELTA) -> list[list[int]]:
    """LLL reduction with exact rational Gram-Schmidt data."""
    b = [list(v) for v in basis]
    k = len(b)
    if k <= 1:
        return b
    mu, B = gram_schmidt(b)
    i = 1
    while i < k:
        for j in range(i - 1, -1, -1):
            q = math.floor(mu[i][j] + Fraction(1, 2))
            if q:
                b[i] = [x - q * y for x, y in zip(b[i], b[j])]
                for l in range(j):
                    mu[i][l] -= q * mu[j][l]
                mu[i][j] -= q
        if B[i] >= (delta - mu[i][i - 1] ** 2) * B[i - 1]:
            i += 1
        else:
            b[i], b[i - 1] = b[i - 1], b[i]
            mu, B = gram_schmidt(b)
            i = max(i - 1, 1)
    return b


@lru_cache(maxsize=512)
def saturated_basis(V: Subspace) -> tuple[tuple[int, ...], ...]:
    """LLL-reduced Z-basis of ``V ∩ Z^n``."""
    n = V.ambient_dim
    if V.dim == 0:
        return ()
    if V.dim == n:
        basis = [[int(i == j) for j in range(n)] for i in range(n)]
    else:
        basis = integer_kernel(V.dual, n)
    return tuple(tuple(v) for v in lll_reduce(basis))


def points_in_cube(basis: Sequence[Sequence[int]], r: int) -> list[tuple[int, ...]]:
    """Every point of the lattice spanned by ``basis`` with sup-norm at most ``r``."""
    k = len(basis)
    if k == 0:
        return []
    n = len(basis[0])
    mu, B = gram_schmidt(basis)
    radius2 = Fraction(n * r * r)
    coeffs = [0] * k
    found: list[tuple[int, ...]] = []

    def walk(i: int, used: Fraction):
        center = -sum((mu[j][i] * coeffs[j] for j in range(i + 1, k)), Fraction(0))
        room = radius2 - used
        span = math.sqrt(float(room / B[i])) if room > 0 else 0.0
        lo = math.floor(float(center) - span) - 1
        hi = math.ceil(float(center) + span) + 1
        for c in range(lo, hi + 1):
            d = c - center
            spent = used + B[i] * d * d
            if spent > radius2:
                continue
            coeffs[i] = c
            if i == 0:
                x = [sum(coeffs[t] * basis[t][j] for t in range(k)) for j in range(n)]
                if max(abs(v) for v in x) <= r:
                    found.append(tuple(x))
            else:
                walk(i - 1, spent)
        coeffs[i] = 0

    walk(k - 1, Fraction(0))
    return found


def sup_norm(x: Sequence[int]) -> int:
    return max((abs(v) for v in x), default=0)


def by_height(points) -> list[tuple[int, ...]]:
    """Nonzero points in search order: sup-norm shells, lexicographic inside a shell."""
    return sorted((p for p in points if any(p)), key=lambda p: (sup_norm(p), p))


def canonical(x: Sequence[int]) -> tuple[int, ...]:
    """Flip the sign so the first nonzero entry is positive."""
    first = next((v for v in x if v), 0)
    return tuple(-v for v in x) if first < 0 else tuple(x)
