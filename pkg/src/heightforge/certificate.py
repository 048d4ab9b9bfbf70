"""Proof-carrying results: bound formulas, inequality checks, certificates."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import HeightForgeError
from .exact import ExactReal, Ordering, exact_compare, rational_root, render_power
from .heights import (
    FieldContext,
    HeightValue,
    as_vector,
    height_euclidean,
    height_inhomogeneous,
    height_projective,
    primitive_vector,
)


class Verdict(str, enum.Enum):
    SATISFIED = "SATISFIED"
    VIOLATED = "VIOLATED"


@dataclass(frozen=True)
class Term:
    """One factor ``base**exponent`` of a bound; ``field`` marks discriminant factors."""

    base: Fraction
    exponent: Fraction = Fraction(1)
    field: bool = False

    def __post_init__(self):
        object.__setattr__(self, "base", Fraction(self.base))
        object.__setattr__(self, "exponent", Fraction(self.exponent))

    @property
    def value(self) -> ExactReal:
        return ExactReal.power(self.base, self.exponent)

    def render(self) -> str:
        if self.base == 1:
            return "1"
        e = self.exponent
        if e.denominator == 1 and 0 <= e <= 2:
            return str(self.base ** int(e))
        return render_power(self.base, e)


@dataclass(frozen=True)
class Bound:
    """A closed-form bound kept as its list of factors, for display and audit."""

    tag: str
    terms: tuple[Term, ...]
    params: tuple[tuple[str, object], ...] = ()

    @property
    def value(self) -> ExactReal:
        out = ExactReal.one()
        for t in self.terms:
            out = out * t.value
        return out

    @property
    def expression(self) -> str:
        shown = [t.render() for t in self.terms if not (t.field and t.base == 1)]
        return " * ".join(shown) if shown else "1"


@dataclass(frozen=True)
class Check:
    """``lhs <= bound`` decided exactly at construction time."""

    label: str
    lhs: ExactReal
    bound: Bound
    holds: bool = field(init=False)

    def __post_init__(self):
        ok = exact_compare(self.lhs, self.bound.value) is not Ordering.GREATER
        object.__setattr__(self, "holds", ok)


@dataclass(frozen=True)
class Certificate:
    """Witness(es), their heights, and every inequality checked along the way.

    ``checks[0]`` is the headline claim; ``bound`` and ``witness`` are
    shortcuts for single-witness certificates.
    """

    claim: str
    witnesses: tuple[tuple[Fraction, ...], ...]
    heights: tuple[HeightValue, ...]
    checks: tuple[Check, ...]
    trace: tuple[str, ...] = ()
    notes: tuple[str, ...] = ()

    @property
    def witness(self) -> tuple[Fraction, ...]:
        return self.witnesses[0]

    @property
    def bound(self) -> Bound:
        return self.checks[0].bound

    @property
    def verdict(self) -> Verdict:
        return Verdict.SATISFIED if all(c.holds for c in self.checks) else Verdict.VIOLATED

    @property
    def satisfied(self) -> bool:
        return self.verdict is Verdict.SATISFIED


def sqrt_term(square: Fraction) -> Term:
    """``square**(1/2)``, written as a plain rational when the root is exact."""
    root = rational_root(Fraction(square), 2)
    return Term(square, Fraction(1, 2)) if root is None else Term(root)


def discriminant_term(ctx: FieldContext, exponent) -> Term:
    """``|disc|**exponent``; omitted from rendered expressions when it is 1."""
    return Term(ctx.abs_discriminant, Fraction(exponent), field=True)


def siegel_terms(ctx: FieldContext, exponent) -> tuple[Term, ...]:
    """``((2/pi)**(2 r2) |disc|)**exponent``; only totally real fields are representable."""
    if ctx.complex_pairs:
        raise HeightForgeError(
            "UNSUPPORTED_FIELD", "the (2/pi) factor of complex fields is not exact")
    return (discriminant_term(ctx, exponent),)


def height_certificate(v) -> Certificate:
    """``H(v) <= Hcal(v) <= sqrt(n) H(v)`` for a nonzero rational vector."""
    v = as_vector(v)
    H = height_projective(v)
    E = height_euclidean(v)
    Hq = H.value.to_fraction()
    return Certificate(
        claim="height",
        witnesses=(v,),
        heights=(H,),
        checks=(Check("H(v) <= Hcal(v)", H.value, Bound("euclidean", (sqrt_term(E.squared),))),
                Check("Hcal(v) <= sqrt(n) H(v)", E.value,
                      Bound("sup-norm", (Term(len(v), Fraction(1, 2)), Term(Hq))))),
        trace=(f"primitive form {primitive_vector(v)}", f"Hcal(v)^2 = {E.squared}",
               f"h(v) = {height_inhomogeneous(v).value.to_fraction()}"),
    )
