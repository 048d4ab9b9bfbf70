"""Heights of rational vectors: projective ``H``, Euclidean ``Hcal``, Weil ``h``.

Over the rationals every height is a function of the primitive integer
representative of the vector, so the fast path clears denominators and
divides out the gcd.  :func:`height_by_places` recomputes ``H`` as a product
over all places and is kept as an independent cross-check.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from sympy import factorint

from .errors import HeightForgeError
from .exact import ExactReal

INFINITE_PLACE = "inf"


@dataclass(frozen=True)
class FieldContext:
    """Degree, signature and discriminant of the ground field.

    Only the rationals ``FieldContext(1, 1, 0, 1)`` carry element arithmetic;
    the other fields exist so the bound formulas keep their general shape.
    """

    degree: int = 1
    real_embeddings: int = 1
    complex_pairs: int = 0
    abs_discriminant: int = 1

    def __post_init__(self):
        if self.degree != self.real_embeddings + 2 * self.complex_pairs:
            raise ValueError("degree must equal r1 + 2*r2")
        if self.degree < 1 or self.abs_discriminant < 1:
            raise ValueError("degree and |discriminant| must be positive")

    @property
    def is_rational(self) -> bool:
        return self.degree == 1


QQ = FieldContext()


class HeightKind(str, enum.Enum):
    H = "H"
    HCAL = "Hcal"
    h = "h"


@dataclass(frozen=True)
class HeightValue:
    kind: HeightKind
    value: ExactReal
    squared: Fraction | None = None

    def __post_init__(self):
        if self.kind is HeightKind.HCAL and self.squared is None:
            raise ValueError("Euclidean heights carry their exact square")


def as_vector(v: Iterable) -> tuple[Fraction, ...]:
    return tuple(Fraction(x) for x in v)


def primitive_vector(v: Sequence) -> tuple[int, ...]:
    """Scale ``v`` to the primitive integer vector whose first nonzero entry is positive."""
    v = as_vector(v)
    if not any(v):
        raise HeightForgeError("ZERO_VECTOR", "height of the zero vector is undefined")
    den = math.lcm(*(x.denominator for x in v))
    ints = [int(x * den) for x in v]
    g = math.gcd(*ints)
    ints = [x // g for x in ints]
    if next(x for x in ints if x) < 0:
        ints = [-x for x in ints]
    return tuple(ints)


def height_projective(v: Sequence) -> HeightValue:
    p = primitive_vector(v)
    return HeightValue(HeightKind.H, ExactReal.of(max(abs(x) for x in p)))


def height_euclidean(v: Sequence) -> HeightValue:
    p = primitive_vector(v)
    sq = Fraction(sum(x * x for x in p))
    return HeightValue(HeightKind.HCAL, ExactReal.sqrt(sq), sq)


def height_inhomogeneous(v) -> HeightValue:
    """``h(v) = H(1, v)``; accepts a scalar or a (possibly zero) vector."""
    if isinstance(v, (int, Fraction)):
        v = (v,)
    value = height_projective((Fraction(1),) + as_vector(v)).value
    return HeightValue(HeightKind.h, value)


def flatten(matrix: Sequence[Sequence]) -> tuple[Fraction, ...]:
    """Row-major flattening; matrix heights are heights of this vector."""
    return tuple(Fraction(x) for row in matrix for x in row)


def matrix_height(matrix) -> HeightValue:
    return height_projective(flatten(matrix))


def matrix_inhomogeneous_height(matrix) -> HeightValue:
    return height_inhomogeneous(flatten(matrix))


# place decompositions


def _prime_valuations(x: Fraction) -> dict[int, int]:
    vals: dict[int, int] = {}
    for p, k in factorint(abs(x.numerator)).items():
        vals[p] = vals.get(p, 0) + k
    for p, k in factorint(x.denominator).items():
        vals[p] = vals.get(p, 0) - k
    return vals


def padic_abs(x: Fraction, p: int) -> Fraction:
    """``|x|_p = p**(-v_p(x))`` with ``|0|_p = 0``."""
    x = Fraction(x)
    if x == 0:
        return Fraction(0)
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return Fraction(1, p**v) if v >= 0 else Fraction(p ** (-v))


def verify_product_formula(x) -> tuple[bool, dict]:
    """Tabulate ``|x|_v`` over every place where it differs from 1 and multiply.

    The table maps primes to ``|x|_p`` and ``"inf"`` to ``|x|``.  The returned
    flag is whether the exact product equals 1, which it always must.
    """
    x = Fraction(x)
    if x == 0:
        raise HeightForgeError("ZERO_INPUT", "the product formula needs x != 0")
    table: dict = {}
    for p in sorted(_prime_valuations(x)):
        table[p] = padic_abs(x, p)
    table[INFINITE_PLACE] = abs(x)
    return math.prod(table.values()) == 1, table


def height_by_places(v: Sequence) -> Fraction:
    """``H(v)`` as the product over all places of the local sup-norms."""
    v = as_vector(v)
    if not any(v):
        raise HeightForgeError("ZERO_VECTOR", "height of the zero vector is undefined")
    primes: set[int] = set()
    for x in v:
        if x:
            primes.update(_prime_valuations(x))
    out = max(abs(x) for x in v)
    for p in primes:
        out *= max(padic_abs(x, p) for x in v)
    return out
