"""
Small rational zeros with certificates
======================================

"""

from heightforge.cli import emit_certificate
from heightforge.linalg import Subspace, kernel
from heightforge.polynomial import evaluate, parse_poly
from heightforge.solvers import (
    linear_form_zero_on_subspace,
    multilinear_zero,
    multilinear_zero_on_subspace,
    solve_on_line,
    solve_single_avoiding,
    solve_system,
)


def report(title, cert):
    print(f"{title}: z = {[str(x) for x in cert.witness]}  h <= {cert.bound.expression}"
          f"  ({cert.verdict.value})")


# x1*x2 - 1 is linear in x1: fix x2 where the coefficient is nonzero, then solve
cert = solve_system([parse_poly("x1*x2 - 1", 2)], [1])
report("system", cert)
print(emit_certificate(cert, "solve-system", indent=None))

# Two equations linear in x1, x2 jointly
F = [parse_poly("x1*x3 + x2 - 2", 3), parse_poly("x2*x3 - x1 + 1", 3)]
cert = solve_system(F, [1, 2])
report("2x2 system", cert)
print("  check:", [evaluate(f, cert.witness) for f in F])

# One polynomial, linear in x3, avoiding the zeros of x1
cert = solve_single_avoiding(parse_poly("x3 + x1*x2", 3), 3, parse_poly("x1", 3))
report("avoiding x1 = 0", cert)

# Restricted to a line the problem is univariate; rational roots give the zeros
cert = solve_on_line(parse_poly("x1*x2 - 2", 2), Subspace.span([(1, 2)]), parse_poly("x1 + 1", 2))
report("on a line", cert)

# Forms that are linear in each variable always have a small zero
report("multilinear", multilinear_zero(parse_poly("x1*x2 + x1*x3 + x2*x3", 3)))

# On a big enough subspace a whole sparse basis consists of zeros
cert = multilinear_zero_on_subspace(parse_poly("x1*x2*x3", 3), kernel([[1, 1, 1]]))
print("zeros spanning V:", [[str(x) for x in w] for w in cert.witnesses], cert.verdict.value)

# A linear form restricted to a subspace
report("linear form", linear_form_zero_on_subspace(parse_poly("x1 + x2 + x3", 3), Subspace.full(3)))
