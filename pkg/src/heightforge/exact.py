"""Exact positive reals of the form ``prod(base ** exponent)``.

Bases and exponents are rationals, bases are positive.  This is just enough
structure to hold every constant that shows up in the height bounds (square
roots, fractional powers of discriminants, ``((D+2)/2)**(2km+1)``) and to
compare such numbers without floating point.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from sympy import integer_nthroot

from .errors import HeightForgeError

#: Comparisons whose cleared integers would exceed this many bits abort loudly.
MAX_BITS = 1_000_000

RationalLike = Union[int, Fraction]


class Ordering(enum.Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


@dataclass(frozen=True, eq=False)
class ExactReal:
    """A product of rational powers of positive rationals.

    ``factors`` is kept canonical: bases sorted, distinct, different from 1,
    exponents nonzero.  Equality and ordering compare represented values.
    """

    factors: tuple[tuple[Fraction, Fraction], ...] = ()

    def __post_init__(self):
        merged: dict[Fraction, Fraction] = {}
        for base, exponent in self.factors:
            base, exponent = _frac(base), _frac(exponent)
            if base <= 0:
                raise ValueError(f"ExactReal base must be positive, got {base}")
            if base == 1 or exponent == 0:
                continue
            merged[base] = merged.get(base, Fraction(0)) + exponent
        canon = tuple(sorted((b, e) for b, e in merged.items() if e != 0))
        object.__setattr__(self, "factors", canon)

    # constructors

    @classmethod
    def of(cls, value: RationalLike) -> "ExactReal":
        value = _frac(value)
        if value <= 0:
            raise ValueError(f"ExactReal holds positive values only, got {value}")
        return cls(((value, Fraction(1)),))

    @classmethod
    def power(cls, base: RationalLike, exponent: RationalLike) -> "ExactReal":
        base = _frac(base)
        if base <= 0:
            raise ValueError(f"ExactReal base must be positive, got {base}")
        return cls(((base, _frac(exponent)),))

    @classmethod
    def sqrt(cls, value: RationalLike) -> "ExactReal":
        """Square root, collapsed to a rational when ``value`` is a perfect square."""
        value = _frac(value)
        root = rational_root(value, 2)
        if root is not None:
            return cls.of(root)
        return cls.power(value, Fraction(1, 2))

    @classmethod
    def one(cls) -> "ExactReal":
        return cls()

    # arithmetic

    def __mul__(self, other) -> "ExactReal":
        other = as_exact(other)
        return ExactReal(self.factors + other.factors)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "ExactReal":
        other = as_exact(other)
        return ExactReal(self.factors + tuple((b, -e) for b, e in other.factors))

    def __rtruediv__(self, other) -> "ExactReal":
        return as_exact(other) / self

    def __pow__(self, exponent: RationalLike) -> "ExactReal":
        exponent = _frac(exponent)
        return ExactReal(tuple((b, e * exponent) for b, e in self.factors))

    # inspection

    @property
    def is_rational(self) -> bool:
        return all(e.denominator == 1 for _, e in self.factors)

    def to_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{self} is not known to be rational")
        out = Fraction(1)
        for b, e in self.factors:
            out *= b ** int(e)
        return out

    def rational_value(self) -> Fraction | None:
        """The value as a rational if it is one, even with fractional exponents."""
        if self.is_rational:
            return self.to_fraction()
        L, value = _clear(self.factors)
        return rational_root(value, L)

    def __float__(self) -> float:
        if self.is_rational:
            return float(self.to_fraction())
        return math.exp(self.log())

    def log(self) -> float:
        return sum(float(e) * (math.log(b.numerator) - math.log(b.denominator))
                   for b, e in self.factors)

    # comparisons by value

    def _cmp(self, other) -> int:
        return exact_compare(self, as_exact(other)).value

    def __eq__(self, other):
        if not isinstance(other, (ExactReal, int, Fraction)):
            return NotImplemented
        if isinstance(other, (int, Fraction)) and other <= 0:
            return False
        return self._cmp(other) == 0

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    __hash__ = None  # value equality without a canonical hash

    def __str__(self) -> str:
        return render_factors(self.factors)

    def __repr__(self) -> str:
        return f"ExactReal({render_factors(self.factors)})"


def as_exact(x) -> ExactReal:
    if isinstance(x, ExactReal):
        return x
    return ExactReal.of(x)


def _clear(factors) -> tuple[int, Fraction]:
    """Return ``(L, value**L)`` with ``L`` the lcm of the exponent denominators."""
    L = 1
    for _, e in factors:
        L = math.lcm(L, e.denominator)
    bits = sum(abs(int(e * L)) * (b.numerator.bit_length() + b.denominator.bit_length())
               for b, e in factors)
    if bits > MAX_BITS:
        raise HeightForgeError(
            "SIZE_GUARD", f"exact comparison needs about {bits} bits (limit {MAX_BITS})")
    num, den = 1, 1
    for b, e in factors:
        k = int(e * L)
        if k >= 0:
            num *= b.numerator ** k
            den *= b.denominator ** k
        else:
            num *= b.denominator ** -k
            den *= b.numerator ** -k
    return L, Fraction(num, den)


def exact_compare(a, b) -> Ordering:
    """Order two positive exact reals without floating point.

    The quotient ``a/b`` is raised to the lcm ``L`` of all exponent
    denominators, which turns it into a single rational compared against 1.
    """
    a, b = as_exact(a), as_exact(b)
    quotient = a.factors + tuple((base, -e) for base, e in b.factors)
    _, value = _clear(ExactReal(quotient).factors)
    if value < 1:
        return Ordering.LESS
    if value > 1:
        return Ordering.GREATER
    return Ordering.EQUAL


def rational_root(value: Fraction, n: int) -> Fraction | None:
    """The exact positive ``n``-th root of ``value`` if it is rational."""
    if value < 0:
        return None
    p, exact_p = integer_nthroot(value.numerator, n)
    q, exact_q = integer_nthroot(value.denominator, n)
    if exact_p and exact_q:
        return Fraction(int(p), int(q))
    return None


def exact_floor(x) -> int:
    """``floor(x)`` for a positive exact real, computed with integer roots."""
    x = as_exact(x)
    L, value = _clear(x.factors)
    root, _ = integer_nthroot(value.numerator // value.denominator, L)
    return int(root)


def scaled_floor(x, places: int) -> int:
    """``floor(x * 10**places)``; ``places`` may be negative."""
    return exact_floor(as_exact(x) * ExactReal.power(10, places))


def _magnitude(x: ExactReal) -> int:
    """The integer ``E`` with ``10**E <= x < 10**(E+1)``."""
    E = math.floor(x.log() / math.log(10))
    while exact_compare(x, ExactReal.power(10, E)) is Ordering.LESS:
        E -= 1
    while exact_compare(x, ExactReal.power(10, E + 1)) is not Ordering.LESS:
        E += 1
    return E


def _place_point(digits: str, places: int) -> str:
    if places <= 0:
        return digits + "0" * (-places)
    digits = digits.rjust(places + 1, "0")
    return digits[:-places] + "." + digits[-places:]


def _terminating_decimal(r: Fraction) -> str | None:
    den = r.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        return None
    places = max(twos, fives)
    scaled = abs(r.numerator) * 10**places // r.denominator
    text = _place_point(str(scaled), places)
    if "." in text:
        text = text.rstrip("0").rstrip(".")
    return ("-" if r < 0 else "") + text


def _significant(text: str) -> int:
    digits = text.lstrip("-").replace(".", "").lstrip("0")
    if "." in text:
        return max(len(digits), 1)
    return max(len(digits.rstrip("0")), 1)


def exact_to_decimal(a, digits: int) -> str:
    """Human-readable decimal with the rounding mode spelled out.

    Exactly representable values come back as ``"0.25 (exact)"``; everything
    else is truncated toward zero to ``digits`` significant digits and marked
    with a leading ``"≈"``.  Never use the result for comparisons.
    """
    if digits < 1:
        raise ValueError("digits must be >= 1")
    sign = ""
    if isinstance(a, (int, Fraction)):
        r = Fraction(a)
        if r == 0:
            return "0 (exact)"
        exact = _terminating_decimal(r)
        if exact is not None and _significant(exact) <= digits:
            return f"{exact} (exact)"
        sign = "-" if r < 0 else ""
        a = ExactReal.of(abs(r))
    else:
        a = as_exact(a)
        r = a.rational_value()
        if r is not None:
            exact = _terminating_decimal(r)
            if exact is not None and _significant(exact) <= digits:
                return f"{exact} (exact)"
    places = digits - 1 - _magnitude(a)
    return "≈" + sign + _place_point(str(scaled_floor(a, places)), places)


def to_fixed(a, places: int = 12) -> str:
    """Fixed-point rendering truncated toward zero, e.g. ``"128.000000000000"``."""
    sign = ""
    if isinstance(a, (int, Fraction)):
        if a == 0:
            return _place_point("0", places)
        sign = "-" if a < 0 else ""
        a = abs(Fraction(a))
    return sign + _place_point(str(scaled_floor(a, places)), places)


def render_rational(r: Fraction) -> str:
    return str(Fraction(r))


def render_power(base: Fraction, exponent: Fraction) -> str:
    """``base^{exponent}`` with parentheses around non-integer bases."""
    b = str(base) if base.denominator == 1 else f"({base})"
    return f"{b}^{{{exponent}}}"


def render_factors(factors) -> str:
    if not factors:
        return "1"
    parts = []
    for base, e in factors:
        parts.append(str(base) if e == 1 else render_power(base, e))
    return " * ".join(parts)


def render_exact(x) -> str:
    """Canonical exact string: ``"p/q"`` for rationals, a factored product otherwise."""
    if isinstance(x, (int, Fraction)):
        return str(Fraction(x))
    r = x.rational_value()
    if r is not None:
        return str(r)
    return render_factors(x.factors)
