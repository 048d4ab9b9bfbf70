"""Acceptance suites 1-11: exact property checks on seeded random corpora.

Each ``criterion_N`` returns a :class:`Result`.  Wherever possible the
checks recompute the claimed quantities independently (plain ``Fraction``
arithmetic, sympy evaluation, brute-force enumeration) instead of trusting
the certificate that the library itself produced.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from pathlib import Path

import sympy

from . import generators as gen
from .errors import HeightForgeError
from .exact import exact_floor
from .heights import (
    height_by_places,
    height_euclidean,
    height_projective,
    primitive_vector,
    verify_product_formula,
)
from .lattice import saturated_basis
from .linalg import (
    Subspace,
    basis_product_certificate,
    column_space,
    det,
    intersect_with_certificate,
    inverse_with_certificate,
    kernel,
    rank,
    row_space,
    subspace_height,
)
from .polynomial import (
    MultiPoly,
    poly_image_height_certificate,
    substitute_linear,
)
from .siegel import nonvanishing_witness, small_basis, sparse_basis
from .solvers import (
    multilinear_zero,
    multilinear_zero_on_subspace,
    solve_single_avoiding,
    solve_system,
)


@dataclass
class Result:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0
    limit: float | None = None

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        budget = f" (limit {self.limit:g} s)" if self.limit else ""
        return f"[{status}] criterion {self.number:>2} {self.name}: {self.detail} [{self.seconds:.1f} s{budget}]"


def _timed(number: int, name: str, limit: float | None, body) -> Result:
    start = time.perf_counter()
    failures, detail = body()
    elapsed = time.perf_counter() - start
    ok = not failures and (limit is None or elapsed < limit)
    if failures:
        detail = f"{detail}; first failure: {failures[0]}"
    elif limit is not None and elapsed >= limit:
        detail = f"{detail}; over the time limit"
    return Result(number, name, ok, detail, elapsed, limit)


# independent oracles


def h_of(z) -> Fraction:
    """Weil height over Q from the definition: max(|den|, |numerators|) after clearing."""
    z = [Fraction(x) for x in z]
    den = math.lcm(*(x.denominator for x in z)) if z else 1
    nums = [abs(int(x * den)) for x in z]
    g = math.gcd(den, *nums)
    return Fraction(max([den] + nums) // g)


def H_of(z) -> Fraction:
    p = primitive_vector(z)
    return Fraction(max(abs(x) for x in p))


def sympy_value(F: MultiPoly, z) -> sympy.Rational:
    xs = sympy.symbols(f"x1:{F.nvars + 1}") if F.nvars else ()
    expr = sum((sympy.Rational(c.numerator, c.denominator)
                * sympy.Mul(*[x**k for x, k in zip(xs, e)]) for e, c in F.terms.items()),
               sympy.Integer(0))
    return sympy.sympify(expr).subs(
        {x: sympy.Rational(v.numerator, v.denominator) for x, v in zip(xs, map(Fraction, z))})


def search_order(n: int, radius: int):
    """Search order rebuilt from scratch: sort the whole cube by (sup-norm, lexicographic)."""
    pts = list(product(range(-radius, radius + 1), repeat=n))
    return sorted(pts, key=lambda p: (max((abs(x) for x in p), default=0), p))


def brute_force_witness(n: int, radius: int, valid, homogeneous: bool = False):
    """First point of height at most ``radius`` passing ``valid``, or ``None``.

    Rational points ``z`` are enumerated as integer tuples ``(q, p_1..p_n)``
    with ``z = p/q``; then ``h(z)`` is the sup-norm of the primitive tuple.
    For ``homogeneous`` problems the points are nonzero integer vectors.
    """
    dim = n if homogeneous else n + 1
    for s in range(1, radius + 1):
        for t in product(range(-s, s + 1), repeat=dim):
            if max(abs(x) for x in t) != s:
                continue
            if homogeneous:
                z = tuple(Fraction(x) for x in t)
            else:
                if t[0] <= 0 or math.gcd(*t) != 1:
                    continue
                z = tuple(Fraction(p, t[0]) for p in t[1:])
            if valid(z):
                return z
    return None


# criteria


def criterion_1(vectors: int = 1000, scalars: int = 500) -> Result:
    def body():
        rng = gen.seeded_rng(1)
        failures = []
        for _ in range(vectors):
            n = rng.randint(1, 6)
            v = gen.rational_vector(rng, n)
            H = H_of(v)
            E2 = height_euclidean(v).squared
            if not (1 <= H and H * H <= E2 <= n * H * H):
                failures.append(f"axioms fail for {v}")
            if height_projective(v).value.to_fraction() != H or height_by_places(v) != H:
                failures.append(f"height routes disagree for {v}")
        for _ in range(scalars):
            x = gen.nonzero_rational(rng)
            ok, table = verify_product_formula(x)
            if not ok or math.prod(table.values()) != 1:
                failures.append(f"product formula fails for {x}")
        return failures, f"{vectors} vectors, {scalars} scalars"
    return _timed(1, "height axioms and product formula", 10, body)


def criterion_2(count: int = 200) -> Result:
    def body():
        rng = gen.seeded_rng(2)
        failures = []
        for _ in range(count):
            n = rng.randint(2, 6)
            m = rng.randint(1, n - 1)
            A = gen.rational_full_rank(rng, n, m)
            V = column_space(A)
            B = V.dual
            hk = subspace_height(kernel(B)).squared
            hv = subspace_height(V).squared
            hb = subspace_height(row_space(B)).squared
            if not hv == hk == hb:
                failures.append(f"n={n}, m={m}: {hv}, {hk}, {hb}")
        return failures, f"{count} matrices"
    return _timed(2, "duality of subspace heights", 10, body)


def criterion_3(count: int = 200) -> Result:
    def body():
        rng = gen.seeded_rng(3)
        failures = []
        for _ in range(count):
            n = rng.randint(2, 5)
            U1 = Subspace.span(gen.full_rank_vectors(rng, n, rng.randint(1, n), 6))
            U2 = Subspace.span(gen.full_rank_vectors(rng, n, rng.randint(1, n), 6))
            W, cert = intersect_with_certificate(U1, U2)
            lhs = subspace_height(W).squared
            if not cert.satisfied or lhs > subspace_height(U1).squared * subspace_height(U2).squared:
                failures.append(f"intersection {U1} {U2}")

            vs = gen.full_rank_vectors(rng, n, rng.randint(1, n), 6)
            prod2 = math.prod(height_euclidean(v).squared for v in vs)
            if not basis_product_certificate(vs).satisfied or subspace_height(
                    Subspace.from_basis(vs)).squared > prod2:
                failures.append(f"basis product {vs}")

            k = rng.randint(1, 4)
            A = gen.rational_full_rank(rng, k, k, 6)
            Ainv, cert = inverse_with_certificate(A)
            HA, hA = H_of([x for r in A for x in r]), h_of([x for r in A for x in r])
            flat = [x for r in Ainv for x in r]
            if (not cert.satisfied or H_of(flat) ** 2 > Fraction(k) ** (k - 1) * HA ** (2 * k - 2)
                    or h_of(flat) > Fraction(k) ** k * hA ** (2 * k - 1)):
                failures.append(f"inverse {A}")

            nv = rng.randint(1, 3)
            polys = [gen.nonzero_poly(rng, nv, rng.randint(0, 3), 9) for _ in range(rng.randint(1, 3))]
            z = tuple(gen.rational(rng, 9) for _ in range(nv))
            cert = poly_image_height_certificate(polys, z)
            image = [sympy_value(F, z) for F in polys]
            N = max(F.num_terms for F in polys)
            hmax = max(h_of(F.coefficients()) for F in polys)
            m = max(F.degree for F in polys)
            if not cert.satisfied or h_of([Fraction(int(v.p), int(v.q)) for v in image]) > N * hmax * h_of(z) ** m:
                failures.append(f"image height {polys} at {z}")

            F = gen.nonzero_poly(rng, nv, rng.randint(1, 3), 9)
            kk = rng.randint(1, 3)
            Amat = [[gen.rational(rng, 5) for _ in range(kk)] for _ in range(nv)]
            G, cert = substitute_linear(F, Amat)
            y0 = tuple(gen.rational(rng, 5) for _ in range(kk))
            Ay = tuple(sum(a * b for a, b in zip(row, y0)) for row in Amat)
            bound = Fraction(kk) ** F.degree * F.num_terms * h_of(F.coefficients()) * h_of(
                [x for r in Amat for x in r]) ** F.degree
            if (not cert.satisfied or sympy_value(G, y0) != sympy_value(F, Ay)
                    or h_of(G.coefficients()) > bound):
                failures.append(f"substitution {F} by {Amat}")
        # rational coefficients: only the joint-height form of the image bound is valid
        individual = 0
        for _ in range(count):
            nv = rng.randint(1, 3)
            polys = [MultiPoly(nv, {e: gen.nonzero_rational(rng, 9) for e in gen.random_poly(
                rng, nv, rng.randint(0, 3), 9).terms}) for _ in range(rng.randint(1, 3))]
            z = tuple(gen.rational(rng, 9) for _ in range(nv))
            cert = poly_image_height_certificate(polys, z)
            image = [Fraction(int(v.p), int(v.q)) for v in (sympy_value(F, z) for F in polys)]
            joint = h_of([c for F in polys for c in F.coefficients()])
            N = max(max(F.num_terms for F in polys), 1)
            m = max(F.degree for F in polys)
            if not cert.checks[1].holds or h_of(image) > N * joint * h_of(z) ** m:
                failures.append(f"joint image height {polys} at {z}")
            individual += not cert.checks[0].holds
        return failures, (f"{count} instances of each of 5 bounds with integer polynomial coefficients; "
                          f"{count} rational-coefficient image instances hold with the joint height "
                          f"({individual} exceed the individual-height form)")
    return _timed(3, "intersection, basis product, inverse, image and substitution bounds", 60, body)


def criterion_4(count: int = 300) -> Result:
    def body():
        rng = gen.seeded_rng(4)
        failures = []
        for _ in range(count):
            n = rng.randint(1, 3)
            P = gen.nonzero_poly(rng, n, rng.randint(0, 5), 9)
            z, cert = nonvanishing_witness(P)
            if h_of(z) * 2 > P.degree + 2 or not cert.satisfied or sympy_value(P, z) == 0:
                failures.append(f"{P}: witness {z}")
                continue
            for q in search_order(n, (P.degree + 2) // 2):
                if q == tuple(int(x) for x in z):
                    break
                if sympy_value(P, q) != 0:
                    failures.append(f"{P}: earlier point {q} does not vanish")
                    break
        return failures, f"{count} polynomials"
    return _timed(4, "nonvanishing witness", 30, body)


def _gram_det(vs) -> Fraction:
    return det([[sum(Fraction(a) * b for a, b in zip(u, v)) for v in vs] for u in vs])


def criterion_5(count: int = 100) -> Result:
    def body():
        rng = gen.seeded_rng(5)
        failures, fallbacks = [], 0
        for _ in range(count):
            n, gens = gen.subspace_generators(rng)
            V = Subspace.span(gens)
            basis, cert = small_basis(V)
            if any(x.denominator != 1 for v in basis for x in v):
                failures.append(f"non-integral basis for {gens}")
            if Subspace.span(basis, n) != V or len(basis) != V.dim:
                failures.append(f"basis does not span {gens}")
            prod = math.prod(h_of(v) for v in basis)
            if prod ** 2 > subspace_height(V).squared or not cert.satisfied:
                failures.append(f"product {prod} too large for {gens}")
            if "greedy" in " ".join(cert.notes):
                fallbacks += 1
            elif _gram_det(basis) != _gram_det(saturated_basis(V)):
                failures.append(f"not a basis of the integer lattice for {gens}")
        return failures, f"{count} subspaces, {fallbacks} needed the greedy fallback"
    return _timed(5, "small basis", 60, body)


def criterion_6(count: int = 100) -> Result:
    def body():
        rng = gen.seeded_rng(5)
        failures = []
        for _ in range(count):
            n, gens = gen.subspace_generators(rng)
            V = Subspace.span(gens)
            m = V.dim
            basis, cert = sparse_basis(V)
            hv2 = subspace_height(V).squared
            if len(basis) != m or rank(basis) != m or Subspace.span(basis, n) != V:
                failures.append(f"not a basis of V for {gens}")
            for v in basis:
                if sum(1 for x in v if x) > n - m + 1:
                    failures.append(f"{v} is not sparse enough")
                if h_of(v) ** 2 > 2 * m * m * hv2:
                    failures.append(f"{v} too high for {gens}")
            if not cert.satisfied:
                failures.append(f"certificate violated for {gens}")
        return failures, f"{count} subspaces"
    return _timed(6, "sparse basis", 60, body)


def system_bound_value(polys, k) -> Fraction:
    D = sum(F.degree for F in polys)
    m = max(F.degree for F in polys)
    N = max(F.num_terms for F in polys)
    hm = max(h_of(F.coefficients()) for F in polys)
    return Fraction(k) ** (k + 1) * Fraction(D + 2, 2) ** (2 * k * m + 1) * (N * hm) ** (2 * k)


def criterion_7(count: int = 100, instances: list | None = None) -> Result:
    def body():
        rng = gen.seeded_rng(7)
        failures = []
        F = MultiPoly.parse("x1*x2 - 1", 2)
        cert = solve_system([F], [1])
        if cert.witness != (-1, -1) or cert.bound.value != 128 or cert.bound.expression != "1 * 2^{5} * 4":
            failures.append("worked example x1*x2 - 1")
        for _ in range(count):
            polys, I = gen.separated_system(rng)
            cert = solve_system(polys, I)
            z = cert.witness
            bound = system_bound_value(polys, len(I))
            if any(sympy_value(F, z) != 0 for F in polys):
                failures.append(f"{[str(F) for F in polys]}: {z} is not a zero")
            if h_of(z) > bound or not cert.satisfied:
                failures.append(f"{[str(F) for F in polys]}: h(z) = {h_of(z)} > {bound}")
            if instances is not None:
                instances.append(("system", polys, I, cert))
        return failures, f"{count} systems plus the worked example"
    return _timed(7, "systems linear in separated variables", 120, body)


def single_bound_value(F: MultiPoly, P: MultiPoly) -> Fraction:
    m, g = P.degree, F.degree
    return F.num_terms * Fraction(m * (2 * g - 1) + 2, 2) ** (g + 1) * h_of(F.coefficients())


def criterion_8(count: int = 100, instances: list | None = None) -> Result:
    def body():
        rng = gen.seeded_rng(8)
        failures, done, constant = [], 0, 0
        while done < count:
            F, j, P = gen.single_avoiding_pair(rng, constant_p=(done % 4 == 0))
            try:
                cert = solve_single_avoiding(F, j, P)
            except HeightForgeError as e:
                if e.code == "AVOIDANCE_IMPOSSIBLE":
                    continue
                raise
            done += 1
            z = cert.witness
            if sympy_value(F, z) != 0 or sympy_value(P, z) == 0:
                failures.append(f"F = {F}, P = {P}: bad witness {z}")
            if h_of(z) > single_bound_value(F, P) or not cert.satisfied:
                failures.append(f"F = {F}, P = {P}: h(z) = {h_of(z)} too large")
            if P.is_constant():
                constant += 1
                if h_of(z) > F.num_terms * h_of(F.coefficients()):
                    failures.append(f"F = {F}: h(z) = {h_of(z)} > N(F) h(F)")
            if instances is not None:
                instances.append(("single", F, j, P, cert))
        return failures, f"{count} pairs ({constant} with constant P)"
    return _timed(8, "one polynomial avoiding another", 60, body)


def criterion_9(forms: int = 100, pairs: int = 50, instances: list | None = None) -> Result:
    def body():
        rng = gen.seeded_rng(9)
        failures = []
        for _ in range(forms):
            n = rng.randint(2, 6)
            g = rng.randint(1, n)
            F = gen.multilinear_form(rng, n, g)
            cert = multilinear_zero(F)
            z = cert.witness
            if not any(z) or sympy_value(F, z) != 0 or H_of(z) > H_of(F.coefficients()):
                failures.append(f"{F}: witness {z}")
            if instances is not None:
                instances.append(("multilinear", F, cert))
        for _ in range(pairs):
            n = rng.randint(2, 6)
            g = rng.randint(2, n)
            m = rng.randint(n - g + 2, n)
            F = gen.multilinear_form(rng, n, g)
            V = Subspace.span(gen.full_rank_vectors(rng, n, m, 10))
            cert = multilinear_zero_on_subspace(F, V)
            basis = cert.witnesses
            hv2 = subspace_height(V).squared
            if len(basis) != m or Subspace.span(basis, n) != V:
                failures.append(f"{F} on {V}: not a basis")
            for v in basis:
                if sympy_value(F, v) != 0 or h_of(v) ** 2 > 2 * m * m * hv2:
                    failures.append(f"{F} on {V}: bad vector {v}")
            if not cert.satisfied:
                failures.append(f"{F} on {V}: certificate violated")
        return failures, f"{forms} forms, {pairs} subspace pairs"
    return _timed(9, "zeros of multilinear forms", 60, body)


def _independent_zero_check(polys, avoid=None, nonzero=False):
    def valid(z):
        if nonzero and not any(z):
            return False
        if any(sympy_value(F, z) != 0 for F in polys):
            return False
        return avoid is None or sympy_value(avoid, z) != 0
    return valid


def criterion_10(instances: list | None = None, limit: int = 50, small_systems: int = 40) -> Result:
    """Brute force over every solver instance whose bound is at most ``limit``.

    The pool is the instances of criteria 7-9 plus ``small_systems`` linear systems.
    """
    def body():
        pool = instances
        if pool is None:
            pool = []
            criterion_7(instances=pool)
            criterion_8(instances=pool)
            criterion_9(instances=pool)
        # low-degree systems are the only ones whose bound can drop below the limit
        rng = gen.seeded_rng(10)
        pool = list(pool)
        for _ in range(small_systems):
            polys, I = gen.separated_system(rng, max_n=3, max_k=1, max_deg=1, coeff=1)
            pool.append(("system", polys, I, solve_system(polys, I)))
        failures, checked = [], {"system": 0, "single": 0, "multilinear": 0}
        for inst in pool:
            kind, cert = inst[0], inst[-1]
            bound = cert.bound.value
            if bound > limit:
                continue
            checked[kind] += 1
            radius = exact_floor(bound)
            if kind == "system":
                polys, valid = inst[1], _independent_zero_check(inst[1])
                n, homogeneous = polys[0].nvars, False
            elif kind == "single":
                F, P = inst[1], inst[3]
                valid = _independent_zero_check([F], P)
                n, homogeneous = F.nvars, False
            else:
                F = inst[1]
                valid = _independent_zero_check([F], nonzero=True)
                n, homogeneous = F.nvars, True
            z = cert.witness
            if not valid(z):
                failures.append(f"{kind}: returned witness {z} is invalid")
            if brute_force_witness(n, radius, valid, homogeneous) is None:
                failures.append(f"{kind}: no witness within height {radius}")
        counts = ", ".join(f"{v} {k}" for k, v in checked.items())
        return failures, f"{sum(checked.values())} instances with bound <= {limit} ({counts}) confirmed by exhaustive search"
    return _timed(10, "brute-force cross-check", 600, body)


GOLDEN = Path(__file__).resolve().parents[2] / "tests" / "golden"


def criterion_11(directory: Path | None = None, minimum: int = 12) -> Result:
    """Every checked-in problem reproduces its recorded output byte for byte."""
    from .cli import TASKS, expected_exit, parse_problem, solve_text

    directory = Path(directory) if directory is not None else GOLDEN

    def body():
        files = sorted(directory.glob("*.prob"))
        if len(files) < minimum:
            return [f"only {len(files)} problem files in {directory}"], "corpus too small"
        failures, tasks, errors = [], set(), 0
        for path in files:
            text = path.read_text(encoding="utf-8")
            code, out, err = solve_text(text, path.name)
            want = expected_exit(text)
            if want is None:
                failures.append(f"{path.name} documents no exit code")
            elif want != code:
                failures.append(f"{path.name} exited {code}, expected {want}")
            ref = path.with_suffix(".err" if code == 1 else ".json")
            got = err if code == 1 else out
            if not ref.exists() or ref.read_text(encoding="utf-8") != got:
                failures.append(f"{path.name} differs from {ref.name}")
            if code == 0:
                tasks.add(parse_problem(text).task)
            else:
                errors += 1
        missing = sorted(set(TASKS) - tasks)
        if missing:
            failures.append(f"no successful problem for {', '.join(missing)}")
        if not errors:
            failures.append("no error cases")
        return failures, f"{len(files)} files, {len(tasks)} tasks, {errors} error cases, byte-identical"
    return _timed(11, "CLI golden corpus", None, body)


def run_all() -> list[Result]:
    pool: list = []
    results = [criterion_1(), criterion_2(), criterion_3(), criterion_4(), criterion_5(),
               criterion_6(), criterion_7(instances=pool), criterion_8(instances=pool),
               criterion_9(instances=pool)]
    results.append(criterion_10(pool))
    results.append(criterion_11())
    return results
