"""Exact rational linear algebra and rational subspaces.

Matrices are tuples of row tuples of ``Fraction``.  A :class:`Subspace` keeps
a basis (as column vectors) together with its canonical Plücker vector, the
primitive integer vector of maximal minors with first nonzero entry positive.
Two subspaces are equal exactly when their Plücker vectors are.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .certificate import Bound, Certificate, Check, Term, discriminant_term, sqrt_term
from .errors import HeightForgeError
from .exact import ExactReal
from .heights import (
    QQ,
    FieldContext,
    HeightValue,
    as_vector,
    height_euclidean,
    matrix_height,
    matrix_inhomogeneous_height,
    primitive_vector,
)

#: Largest number of maximal minors we are willing to enumerate.
MAX_PLUCKER = 100_000


def as_matrix(rows: Iterable[Iterable]) -> tuple[tuple[Fraction, ...], ...]:
    out = tuple(as_vector(r) for r in rows)
    if out and len({len(r) for r in out}) != 1:
        raise ValueError("ragged matrix")
    return out


def transpose(M):
    return tuple(zip(*M))


def identity(n: int):
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def matmul(A, B):
    Bt = transpose(B)
    return tuple(tuple(sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in Bt)
                 for row in A)


def mat_vec(A, x):
    return tuple(sum((a * b for a, b in zip(row, x)), Fraction(0)) for row in A)


def integer_rows(M) -> list[list[int]]:
    """Scale each row by the lcm of its denominators."""
    out = []
    for row in M:
        den = math.lcm(*(Fraction(x).denominator for x in row)) if row else 1
        out.append([int(Fraction(x) * den) for x in row])
    return out


def bareiss(M) -> tuple[int, list[list[int]]]:
    """Fraction-free elimination on the integer-scaled rows; returns ``(rank, echelon)``."""
    A = integer_rows(M)
    rows = len(A)
    cols = len(A[0]) if A else 0
    r = 0
    prev = 1
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if A[i][c]), None)
        if pivot is None:
            continue
        A[r], A[pivot] = A[pivot], A[r]
        for i in range(r + 1, rows):
            for j in range(c + 1, cols):
                A[i][j] = (A[i][j] * A[r][c] - A[i][c] * A[r][j]) // prev
            A[i][c] = 0
        prev = A[r][c]
        r += 1
        if r == rows:
            break
    return r, A


def rank(M) -> int:
    return bareiss(M)[0] if M else 0


def det(M) -> Fraction:
    """Determinant of a square rational matrix (Bareiss on integer-scaled rows)."""
    n = len(M)
    if n == 0:
        return Fraction(1)
    if any(len(row) != n for row in M):
        raise ValueError("determinant of a non-square matrix")
    dens = [math.lcm(*(Fraction(x).denominator for x in row)) for row in M]
    A = [[int(Fraction(x) * d) for x in row] for row, d in zip(M, dens)]
    sign = 1
    prev = 1
    for c in range(n - 1):
        pivot = next((i for i in range(c, n) if A[i][c]), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            A[c], A[pivot] = A[pivot], A[c]
            sign = -sign
        for i in range(c + 1, n):
            for j in range(c + 1, n):
                A[i][j] = (A[i][j] * A[c][c] - A[i][c] * A[c][j]) // prev
        prev = A[c][c]
    return Fraction(sign * A[n - 1][n - 1], math.prod(dens))


def rref(M):
    """Reduced row echelon form over the rationals; returns ``(rows, pivot_columns)``."""
    A = [list(as_vector(r)) for r in M]
    rows = len(A)
    cols = len(A[0]) if A else 0
    pivots = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if A[i][c]), None)
        if pivot is None:
            continue
        A[r], A[pivot] = A[pivot], A[r]
        p = A[r][c]
        A[r] = [x / p for x in A[r]]
        for i in range(rows):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return tuple(tuple(row) for row in A), tuple(pivots)


def nullspace(M, n: int | None = None) -> list[tuple[int, ...]]:
    """Basis of ``{x : M x = 0}`` as primitive integer vectors, one per free column."""
    if n is None:
        n = len(M[0])
    if not M:
        return [tuple(int(i == j) for j in range(n)) for i in range(n)]
    R, pivots = rref(M)
    free = [c for c in range(n) if c not in pivots]
    out = []
    for f in free:
        x = [Fraction(0)] * n
        x[f] = Fraction(1)
        for row, pc in zip(R, pivots):
            x[pc] = -row[f]
        out.append(primitive_vector(x))
    return out


def reduced_column_echelon(X):
    """Column-reduced echelon form, same shape as ``X`` (zero columns kept at the end).

    With ``r = rank(X)`` and ``n`` rows, every column has at most ``n - r + 1``
    nonzero entries.
    """
    X = as_matrix(X)
    R, _ = rref(transpose(X))
    return transpose(R)


def plucker_coordinates(A) -> tuple[int, ...]:
    """Canonical Plücker vector of the column span of the ``n x m`` matrix ``A``.

    Minors are taken over row subsets in lexicographic order.
    """
    A = as_matrix(A)
    n = len(A)
    m = len(A[0]) if A else 0
    if m == 0:
        return (1,)
    if m > n:
        raise HeightForgeError("RANK_DEFICIENT", "more columns than rows")
    if math.comb(n, m) > MAX_PLUCKER:
        raise HeightForgeError("SIZE_GUARD", f"C({n},{m}) minors exceed {MAX_PLUCKER}")
    minors = [det([A[i] for i in rows]) for rows in combinations(range(n), m)]
    if not any(minors):
        raise HeightForgeError("RANK_DEFICIENT", "columns are linearly dependent")
    return primitive_vector(minors)


@dataclass(frozen=True, eq=False)
class Subspace:
    """A rational subspace of ``Q^n`` with basis columns and canonical Plücker vector."""

    ambient_dim: int
    basis: tuple[tuple[Fraction, ...], ...]
    plucker: tuple[int, ...]

    @classmethod
    def from_basis(cls, vectors: Sequence[Sequence], ambient_dim: int | None = None):
        vectors = as_matrix(vectors)
        if ambient_dim is None:
            if not vectors:
                raise ValueError("ambient dimension needed for the zero subspace")
            ambient_dim = len(vectors[0])
        if any(len(v) != ambient_dim for v in vectors):
            raise HeightForgeError("DIM_MISMATCH", "basis vectors of the wrong length")
        if not vectors:
            return cls(ambient_dim, (), (1,))
        return cls(ambient_dim, vectors, plucker_coordinates(transpose(vectors)))

    @classmethod
    def span(cls, vectors: Sequence[Sequence], ambient_dim: int | None = None):
        """Span of arbitrary generators; the basis is the primitive-scaled row echelon form."""
        vectors = as_matrix(vectors)
        if ambient_dim is None:
            ambient_dim = len(vectors[0])
        if any(len(v) != ambient_dim for v in vectors):
            raise HeightForgeError("DIM_MISMATCH", "generators of the wrong length")
        R, pivots = rref(vectors) if vectors else ((), ())
        basis = [as_vector(primitive_vector(R[i])) for i in range(len(pivots))]
        return cls.from_basis(basis, ambient_dim)

    @classmethod
    def full(cls, n: int):
        return cls.from_basis(identity(n), n)

    @classmethod
    def zero(cls, n: int):
        return cls(n, (), (1,))

    @classmethod
    def coordinate(cls, n: int, indices: Iterable[int]):
        """``span{e_i : i in indices}`` with 0-based indices."""
        return cls.from_basis([[Fraction(int(i == j)) for j in range(n)] for i in sorted(indices)], n)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def basis_matrix(self):
        """The ``n x m`` matrix whose columns are the basis vectors."""
        return transpose(self.basis)

    @cached_property
    def dual(self) -> tuple[tuple[int, ...], ...]:
        """Integer rows ``B`` with ``self = {y : B y = 0}`` (empty for the full space)."""
        return tuple(nullspace(self.basis, self.ambient_dim)) if self.basis else tuple(
            tuple(int(i == j) for j in range(self.ambient_dim)) for i in range(self.ambient_dim))

    def contains(self, x: Sequence) -> bool:
        x = as_vector(x)
        if len(x) != self.ambient_dim:
            raise HeightForgeError("DIM_MISMATCH", "vector of the wrong length")
        return all(sum(b * xi for b, xi in zip(row, x)) == 0 for row in self.dual)

    __contains__ = contains

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.basis)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.ambient_dim, self.dim, self.plucker) == (other.ambient_dim, other.dim, other.plucker)

    def __hash__(self):
        return hash((self.ambient_dim, self.dim, self.plucker))

    def __repr__(self):
        vecs = ", ".join("(" + ", ".join(str(x) for x in v) + ")" for v in self.basis)
        return f"Subspace(n={self.ambient_dim}, span{{{vecs}}})"


def subspace_height(V: Subspace) -> HeightValue:
    return height_euclidean(V.plucker)


def column_space(A) -> Subspace:
    A = as_matrix(A)
    return Subspace.span(transpose(A), len(A))


def row_space(B) -> Subspace:
    B = as_matrix(B)
    return Subspace.span(B, len(B[0]))


def kernel(B) -> Subspace:
    """Right kernel ``{y : B y = 0}``; a nonsingular square ``B`` gives the zero subspace."""
    B = as_matrix(B)
    if not B:
        raise ValueError("kernel of an empty matrix needs an ambient dimension")
    n = len(B[0])
    return Subspace.from_basis([as_vector(v) for v in nullspace(B, n)], n)


def duality_certificate(B) -> Certificate:
    """Check that ``Hcal(ker B)`` equals ``Hcal`` of the row space of ``B`` (both ways)."""
    V = kernel(B)
    W = row_space(B)
    hv, hw = subspace_height(V), subspace_height(W)
    checks = (
        Check("Hcal(ker B) <= Hcal(B)", hv.value, Bound("duality", (sqrt_term(hw.squared),))),
        Check("Hcal(B) <= Hcal(ker B)", hw.value, Bound("duality", (sqrt_term(hv.squared),))),
    )
    return Certificate(
        claim="duality",
        witnesses=tuple(V.basis),
        heights=(hv,),
        checks=checks,
        trace=(f"dim ker B = {V.dim}, rank B = {W.dim}",
               f"Hcal(ker B)^2 = {hv.squared}, Hcal(B)^2 = {hw.squared}"),
    )


def inverse(A):
    """Gauss-Jordan inverse of a nonsingular rational matrix."""
    A = as_matrix(A)
    n = len(A)
    if any(len(r) != n for r in A):
        raise ValueError("inverse of a non-square matrix")
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(A)]
    R, pivots = rref(aug)
    if pivots[:n] != tuple(range(n)):
        raise HeightForgeError("SINGULAR_MATRIX", "matrix is singular")
    return tuple(tuple(row[n:]) for row in R)


def inverse_with_certificate(A, ctx: FieldContext = QQ):
    """Inverse plus both height bounds for inverses (projective and Weil)."""
    A = as_matrix(A)
    Ainv = inverse(A)
    n = len(A)
    HA = matrix_height(A).value.to_fraction()
    hA = matrix_inhomogeneous_height(A).value.to_fraction()
    H_inv = matrix_height(Ainv)
    h_inv = matrix_inhomogeneous_height(Ainv)
    proj = Bound("inverse-projective",
                 (Term(n, Fraction(n - 1, 2)), Term(HA, n - 1)),
                 (("n", n), ("H(A)", HA)))
    weil = Bound("inverse-weil",
                 (Term(n, n), discriminant_term(ctx, Fraction(1, ctx.degree)), Term(hA, 2 * n - 1)),
                 (("n", n), ("h(A)", hA)))
    cert = Certificate(
        claim="inverse-height",
        witnesses=tuple(Ainv),
        heights=(H_inv, h_inv),
        checks=(Check("H(A^-1) <= (sqrt(n) H(A))^(n-1)", H_inv.value, proj),
                Check("h(A^-1) <= n^n |disc|^(1/d) h(A)^(2n-1)", h_inv.value, weil)),
        trace=(f"n = {n}, H(A) = {HA}, h(A) = {hA}",
               f"H(A^-1) = {H_inv.value}, h(A^-1) = {h_inv.value}"),
    )
    return Ainv, cert


def intersect(U1: Subspace, U2: Subspace) -> Subspace:
    """Intersection as the kernel of the stacked dual descriptions."""
    if U1.ambient_dim != U2.ambient_dim:
        raise HeightForgeError("DIM_MISMATCH", "subspaces live in different spaces")
    n = U1.ambient_dim
    stacked = [as_vector(r) for r in U1.dual + U2.dual]
    if not stacked:
        return Subspace.full(n)
    return Subspace.from_basis([as_vector(v) for v in nullspace(stacked, n)], n)


def intersect_with_certificate(U1: Subspace, U2: Subspace):
    W = intersect(U1, U2)
    h1, h2, hw = subspace_height(U1), subspace_height(U2), subspace_height(W)
    bound = Bound("intersection", (sqrt_term(h1.squared), sqrt_term(h2.squared)))
    notes = ("trivial intersection; the bound is vacuous",) if W.dim == 0 else ()
    cert = Certificate(
        claim="intersection-height",
        witnesses=tuple(W.basis),
        heights=(hw,),
        checks=(Check("Hcal(U1 n U2) <= Hcal(U1) Hcal(U2)", hw.value, bound),),
        trace=(f"dim U1 = {U1.dim}, dim U2 = {U2.dim}, dim U1 n U2 = {W.dim}",
               f"Hcal^2: {hw.squared} <= {h1.squared} * {h2.squared}"),
        notes=notes,
    )
    return W, cert


def basis_product_certificate(vectors) -> Certificate:
    """``Hcal(span) <= prod Hcal(x_i)`` for a linearly independent list."""
    V = Subspace.from_basis(vectors)
    hv = subspace_height(V)
    terms = tuple(sqrt_term(height_euclidean(x).squared) for x in V.basis)
    return Certificate(
        claim="basis-product",
        witnesses=tuple(V.basis),
        heights=(hv,),
        checks=(Check("Hcal(V) <= prod Hcal(x_i)", hv.value, Bound("basis-product", terms)),),
    )
