"""Sparse multivariate polynomials over the rationals.

Variables are named ``x1 .. xn`` and addressed with 1-based indices in every
public function (``index_set``, ``linear_var``); exponent tuples are plain
0-based Python tuples.  The canonical term order is graded lexicographic,
highest first, and fixes the coefficient vector used for polynomial heights.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from sympy import divisors

from .certificate import Bound, Certificate, Check, Term
from .errors import HeightForgeError, ProblemSyntaxError
from .heights import (
    HeightValue,
    as_vector,
    height_inhomogeneous,
    height_projective,
    matrix_inhomogeneous_height,
)


class MultiPoly:
    """Immutable sparse polynomial: a map from exponent tuples to nonzero rationals."""

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Sequence[int], object] | None = None):
        self.nvars = nvars
        clean: dict[tuple[int, ...], Fraction] = {}
        for exps, c in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent {exps} for {nvars} variables")
            c = Fraction(c)
            if c:
                clean[exps] = clean.get(exps, Fraction(0)) + c
        self._terms = {e: c for e, c in clean.items() if c}
        self._hash = None

    # constructors

    @classmethod
    def constant(cls, c, nvars: int) -> "MultiPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, i: int, nvars: int) -> "MultiPoly":
        """The polynomial ``x_i`` (1-based)."""
        if not 1 <= i <= nvars:
            raise ValueError(f"x{i} out of range for {nvars} variables")
        return cls(nvars, {tuple(int(j == i - 1) for j in range(nvars)): 1})

    @classmethod
    def parse(cls, text: str, nvars: int) -> "MultiPoly":
        return parse_poly(text, nvars)

    # basic data

    @property
    def terms(self) -> dict[tuple[int, ...], Fraction]:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def coefficients(self) -> tuple[Fraction, ...]:
        """Coefficient vector in graded-lex order (highest term first)."""
        return tuple(c for _, c in self.items())

    def is_zero(self) -> bool:
        return not self._terms

    @property
    def degree(self) -> int:
        return max((sum(e) for e in self._terms), default=0)

    @property
    def num_terms(self) -> int:
        return len(self._terms)

    def degree_in(self, i: int) -> int:
        return max((e[i - 1] for e in self._terms), default=0)

    def variables(self) -> tuple[int, ...]:
        """1-based indices of the variables that occur."""
        return tuple(i + 1 for i in range(self.nvars) if any(e[i] for e in self._terms))

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * self.nvars, Fraction(0))

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    def height(self) -> HeightValue:
        """Weil height of the coefficient vector (``h(0) = 1``)."""
        return height_inhomogeneous(self.coefficients())

    def projective_height(self) -> HeightValue:
        return height_projective(self.coefficients())

    # arithmetic

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars:
                raise HeightForgeError("DIM_MISMATCH", "polynomials in different numbers of variables")
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.constant(other, self.nvars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return MultiPoly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return MultiPoly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("polynomial powers must be natural numbers")
        out = MultiPoly.constant(1, self.nvars)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(other, self.nvars)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    # evaluation and variable bookkeeping

    def __call__(self, z: Sequence) -> Fraction:
        return evaluate(self, z)

    def restrict(self, keep: Sequence[int]) -> "MultiPoly":
        """Same polynomial in only the variables ``keep`` (1-based, in that order).

        Every dropped variable must be absent.
        """
        keep0 = [k - 1 for k in keep]
        dropped = set(range(self.nvars)) - set(keep0)
        out = {}
        for e, c in self._terms.items():
            if any(e[d] for d in dropped):
                raise ValueError("cannot drop a variable that occurs")
            out[tuple(e[k] for k in keep0)] = c
        return MultiPoly(len(keep0), out)

    def embed(self, positions: Sequence[int], nvars: int) -> "MultiPoly":
        """Rename variable ``j`` to ``x_{positions[j-1]}`` in a ring with ``nvars`` variables."""
        out = {}
        for e, c in self._terms.items():
            new = [0] * nvars
            for j, p in enumerate(positions):
                new[p - 1] += e[j]
            out[tuple(new)] = c
        return MultiPoly(nvars, out)

    def substitute(self, values: Sequence["MultiPoly"]) -> "MultiPoly":
        """Compose: replace ``x_i`` by ``values[i-1]`` (all in one common ring)."""
        if len(values) != self.nvars:
            raise HeightForgeError("DIM_MISMATCH", "need one value per variable")
        if not values:
            return self
        target = values[0].nvars
        cache: dict[tuple[int, int], MultiPoly] = {}

        def pw(i, k):
            if (i, k) not in cache:
                cache[(i, k)] = values[i] ** k
            return cache[(i, k)]

        out = MultiPoly(target)
        for e, c in self._terms.items():
            term = MultiPoly.constant(c, target)
            for i, k in enumerate(e):
                if k:
                    term = term * pw(i, k)
            out = out + term
        return out

    def integer_form(self) -> tuple[int, list[tuple[int, tuple[int, ...]]]]:
        """``(den, [(int_coeff, exps), ...])`` with ``den * self`` integral."""
        den = math.lcm(*(c.denominator for c in self._terms.values())) if self._terms else 1
        return den, [(int(c * den), e) for e, c in self._terms.items()]

    # text

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"MultiPoly({self.nvars}, {format_poly(self)!r})"


def _monomial_text(e: Sequence[int]) -> str:
    parts = []
    for i, k in enumerate(e):
        if k == 1:
            parts.append(f"x{i + 1}")
        elif k > 1:
            parts.append(f"x{i + 1}^{k}")
    return "*".join(parts)


def format_poly(F: MultiPoly) -> str:
    """Text in the problem-file grammar, e.g. ``x1*x2 - 2/3*x3^2 + 1``."""
    if F.is_zero():
        return "0"
    out = []
    for i, (e, c) in enumerate(F.items()):
        mono = _monomial_text(e)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if i == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


# parsing

_TOKEN = re.compile(r"\s*(?:(\d+)|x(\d+)|(\S))")


class _Parser:
    def __init__(self, text: str, nvars: int, line: int, col0: int):
        self.text = text
        self.nvars = nvars
        self.line = line
        self.col0 = col0
        self.tokens: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m is None:  # trailing whitespace
                break
            num, var, sym = m.groups()
            start = m.start(m.lastindex)
            if num is not None:
                self.tokens.append(("num", num, start))
            elif var is not None:
                self.tokens.append(("var", var, start))
            else:
                if sym not in "+-*^()/":
                    self.error(f"unexpected character {sym!r}", start)
                self.tokens.append(("sym", sym, start))
            pos = m.end()
        self.i = 0

    def error(self, msg: str, pos: int | None = None):
        if pos is None:
            pos = self.tokens[self.i][2] if self.i < len(self.tokens) else len(self.text)
        raise ProblemSyntaxError(msg, self.line, self.col0 + pos + 1)

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None, len(self.text))

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, sym: str):
        kind, val, pos = self.take()
        if kind != "sym" or val != sym:
            self.error(f"expected {sym!r}", pos)

    def parse(self) -> MultiPoly:
        if not self.tokens:
            self.error("empty expression")
        out = self.expr()
        if self.i < len(self.tokens):
            self.error("unexpected trailing input")
        return out

    def expr(self) -> MultiPoly:
        out = self.term()
        while self.peek()[:2] in (("sym", "+"), ("sym", "-")):
            op = self.take()[1]
            rhs = self.term()
            out = out + rhs if op == "+" else out - rhs
        return out

    def term(self) -> MultiPoly:
        out = self.unary()
        while self.peek()[:2] == ("sym", "*"):
            self.take()
            out = out * self.unary()
        return out

    def unary(self) -> MultiPoly:
        if self.peek()[:2] == ("sym", "-"):
            self.take()
            return -self.unary()
        if self.peek()[:2] == ("sym", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> MultiPoly:
        base = self.atom()
        if self.peek()[:2] == ("sym", "^"):
            self.take()
            kind, val, pos = self.take()
            if kind != "num":
                self.error("exponent must be a natural number", pos)
            base = base ** int(val)
        return base

    def atom(self) -> MultiPoly:
        kind, val, pos = self.take()
        if kind == "num":
            value = Fraction(int(val))
            if self.peek()[:2] == ("sym", "/"):
                self.take()
                k2, v2, p2 = self.take()
                if k2 != "num":
                    self.error("expected a denominator", p2)
                if int(v2) == 0:
                    self.error("division by zero", p2)
                value /= int(v2)
            return MultiPoly.constant(value, self.nvars)
        if kind == "var":
            i = int(val)
            if not 1 <= i <= self.nvars:
                self.error(f"unknown variable x{val}", pos)
            return MultiPoly.variable(i, self.nvars)
        if kind == "sym" and val == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        if kind is None:
            self.error("unexpected end of expression", pos)
        self.error(f"unexpected {val!r}", pos)


def parse_poly(text: str, nvars: int, line: int = 1, column: int = 1) -> MultiPoly:
    """Parse the polynomial grammar; errors carry ``line``/``column`` positions."""
    return _Parser(text, nvars, line, column - 1).parse()


# operations


def evaluate(F: MultiPoly, z: Sequence) -> Fraction:
    z = as_vector(z)
    if len(z) != F.nvars:
        raise HeightForgeError("DIM_MISMATCH", f"point has {len(z)} coordinates, polynomial {F.nvars}")
    total = Fraction(0)
    for e, c in F._terms.items():
        term = c
        for x, k in zip(z, e):
            if k:
                term *= x**k
        total += term
    return total


def int_evaluator(F: MultiPoly):
    """Fast evaluation of ``den * F`` at integer points (zero-ness is unchanged)."""
    _, terms = F.integer_form()

    def value(z: Sequence[int]) -> int:
        total = 0
        for c, e in terms:
            t = c
            for x, k in zip(z, e):
                if k:
                    t *= x**k
            total += t
        return total

    return value


@dataclass(frozen=True)
class ISeparatedForm:
    """``F = sum_j x_{I[j]} * coefficients[j] + tail`` with all parts in the ``free_vars``."""

    index_set: tuple[int, ...]
    free_vars: tuple[int, ...]
    coefficients: tuple[MultiPoly, ...]
    tail: MultiPoly
    nvars: int

    def reassemble(self) -> MultiPoly:
        n = self.nvars
        out = self.tail.embed(self.free_vars, n)
        for i, Fj in zip(self.index_set, self.coefficients):
            out = out + MultiPoly.variable(i, n) * Fj.embed(self.free_vars, n)
        return out


def _check_index_set(I: Iterable[int], n: int) -> tuple[int, ...]:
    I = tuple(sorted(set(I)))
    if not I or len(I) >= n:
        raise HeightForgeError("NOT_I_SEPARATED", "index set must be nonempty and proper")
    if I[0] < 1 or I[-1] > n:
        raise HeightForgeError("NOT_I_SEPARATED", f"index set {I} out of range 1..{n}")
    return I


def decompose_I_separated(F: MultiPoly, I: Iterable[int]) -> ISeparatedForm:
    """Split ``F`` into its parts linear in the variables of ``I`` (1-based).

    Every monomial may contain at most one variable of ``I``, to the first power.
    """
    n = F.nvars
    I = _check_index_set(I, n)
    free = tuple(i for i in range(1, n + 1) if i not in I)
    parts: list[dict] = [dict() for _ in range(len(I) + 1)]
    for e, c in F._terms.items():
        hits = [(j, e[i - 1]) for j, i in enumerate(I) if e[i - 1]]
        if len(hits) > 1 or (hits and hits[0][1] > 1):
            raise HeightForgeError(
                "NOT_I_SEPARATED", f"monomial {_monomial_text(e)} is not linear in x_I")
        slot = hits[0][0] if hits else len(I)
        parts[slot][tuple(e[i - 1] for i in free)] = c
    polys = [MultiPoly(len(free), p) for p in parts]
    return ISeparatedForm(I, free, tuple(polys[:-1]), polys[-1], n)


def poly_matrix_det(M: Sequence[Sequence[MultiPoly]]) -> MultiPoly:
    """Determinant by cofactor expansion along the first row."""
    k = len(M)
    if k == 0 or any(len(row) != k for row in M):
        raise ValueError("determinant needs a nonempty square matrix")
    nv = {p.nvars for row in M for p in row}
    if len(nv) != 1:
        raise HeightForgeError("DIM_MISMATCH", "entries in different numbers of variables")
    if k == 1:
        return M[0][0]
    total = MultiPoly(nv.pop())
    for j in range(k):
        if M[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        term = M[0][j] * poly_matrix_det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def substitute_linear(F: MultiPoly, A) -> tuple[MultiPoly, Certificate]:
    """``G(y) = F(A y)`` for an ``n x k`` rational matrix, with its height bound."""
    A = tuple(as_vector(r) for r in A)
    if len(A) != F.nvars:
        raise HeightForgeError("DIM_MISMATCH", "A must have one row per variable of F")
    k = len(A[0])
    forms = [MultiPoly(k, {tuple(int(t == j) for t in range(k)): a for j, a in enumerate(row)})
             for row in A]
    G = F.substitute(forms) if F.nvars else MultiPoly(k, {(0,) * k: F.constant_term()})
    m = F.degree
    hF = F.height().value.to_fraction()
    hA = matrix_inhomogeneous_height(A).value.to_fraction()
    hG = G.height()
    N = max(F.num_terms, 1)  # the zero polynomial counts as one term
    bound = Bound("substitution", (Term(k, m), Term(N, 1), Term(hF, 1), Term(hA, m)),
                  (("k", k), ("m", m), ("N", N), ("h(F)", hF), ("h(A)", hA)))
    cert = Certificate(
        claim="substitution-height",
        witnesses=(),
        heights=(hG,),
        checks=(Check("h(G) <= k^m N(F) h(F) h(A)^m", hG.value, bound),),
        trace=(f"G = {G}",),
    )
    return G, cert


def poly_image_height_certificate(polys: Sequence[MultiPoly], z: Sequence) -> Certificate:
    """``h(F_1(z), ..., F_k(z)) <= N * hmax * h(z)^m``.

    ``hmax`` is the largest individual height ``h(F_i)``.  That form can fail
    once the coefficients are not integral: for ``F_1 = 2, F_2 = 1/2`` the image
    has height 4 while ``hmax = 2``.  A second check replaces ``hmax`` by the
    height of all coefficients taken together, which always holds.
    """
    z = as_vector(z)
    if not polys:
        raise ValueError("need at least one polynomial")
    image = tuple(evaluate(F, z) for F in polys)
    N = max(max(F.num_terms for F in polys), 1)
    hmax = max((F.height().value.to_fraction() for F in polys))
    hjoint = height_inhomogeneous([c for F in polys for c in F.coefficients()]).value.to_fraction()
    m = max(F.degree for F in polys)
    hz = height_inhomogeneous(z).value.to_fraction()
    himg = height_inhomogeneous(image)
    bound = Bound("image-height", (Term(N, 1), Term(hmax, 1), Term(hz, m)),
                  (("N", N), ("hmax", hmax), ("h(z)", hz), ("m", m)))
    joint = Bound("image-height-joint", (Term(N, 1), Term(hjoint, 1), Term(hz, m)),
                  (("N", N), ("h(F_1,...,F_k)", hjoint), ("h(z)", hz), ("m", m)))
    checks = (Check("h(F(z)) <= N hmax h(z)^m", himg.value, bound),
              Check("h(F(z)) <= N h(F_1,...,F_k) h(z)^m", himg.value, joint))
    notes = () if checks[0].holds else (
        "individual-height bound fails here; the joint coefficient height is needed",)
    return Certificate(
        claim="image-height",
        witnesses=(image,),
        heights=(himg,),
        checks=checks,
        notes=notes,
    )


def is_multilinear_form(F: MultiPoly) -> tuple[bool, int | None]:
    """Homogeneous of some degree ``g`` and of degree at most 1 in each variable."""
    if F.is_zero() or not F.is_homogeneous():
        return False, None
    if any(k > 1 for e in F._terms for k in e):
        return False, None
    return True, F.degree


def _univariate_ints(f: MultiPoly) -> list[int]:
    """Primitive integer coefficients, index = power of the variable."""
    _, terms = f.integer_form()
    coeffs = [0] * (f.degree + 1)
    for c, e in terms:
        coeffs[e[0]] = c
    g = math.gcd(*coeffs)
    return [c // g for c in coeffs]


def _divide_root(coeffs: list[Fraction], root: Fraction) -> list[Fraction]:
    """Synthetic division by ``(x - root)``; coefficients low degree first."""
    d = len(coeffs) - 1
    out = [Fraction(0)] * d
    carry = Fraction(0)
    for i in range(d, 0, -1):
        carry = coeffs[i] + carry * root if i < d else coeffs[d]
        out[i - 1] = carry
    return out


def rational_roots(f: MultiPoly) -> list[Fraction]:
    """All rational roots of a univariate polynomial, with multiplicity, ascending."""
    if f.nvars != 1:
        raise HeightForgeError("DIM_MISMATCH", "rational_roots needs a univariate polynomial")
    if f.is_zero():
        raise HeightForgeError("ZERO_POLY", "the zero polynomial has every root")
    coeffs = _univariate_ints(f)
    roots: list[Fraction] = []
    low = next(i for i, c in enumerate(coeffs) if c)
    roots.extend([Fraction(0)] * low)
    coeffs = coeffs[low:]
    if len(coeffs) > 1:
        a0, ad = abs(coeffs[0]), abs(coeffs[-1])
        candidates = sorted({Fraction(s * p, q) for p in divisors(a0) for q in divisors(ad)
                             for s in (1, -1)})
        work = [Fraction(c) for c in coeffs]
        for r in candidates:
            while len(work) > 1 and _horner(work, r) == 0:
                roots.append(r)
                work = _divide_root(work, r)
    for r in roots:
        if evaluate(f, (r,)) != 0:
            raise HeightForgeError("INTERNAL", f"claimed root {r} does not vanish")
    return sorted(roots)


def _horner(coeffs: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc

