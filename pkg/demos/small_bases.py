"""
Small and sparse bases of rational subspaces
============================================

"""

from heightforge.exact import render_exact
from heightforge.heights import height_inhomogeneous
from heightforge.linalg import Subspace, kernel, subspace_height
from heightforge.polynomial import parse_poly
from heightforge.siegel import avoid_subspaces, nonvanishing_witness, small_basis, sparse_basis


def show(vs):
    return ", ".join("(" + ", ".join(str(x) for x in v) + ")" for v in vs)


# A polynomial of degree m cannot vanish on the whole cube of radius (m+2)/2
P = parse_poly("x1*x2*(x1 - 1)", 2)
z, cert = nonvanishing_witness(P)
print("first nonvanishing point:", show([z]), "bound", cert.bound.expression)

# Integer points of V, reduced with LLL: the product of heights stays below Hcal(V)
V = kernel([[3, 1, 4, 1, 5]])
basis, cert = small_basis(V)
print("small basis:", show(basis))
print("  product of heights", render_exact(cert.checks[0].lhs), "<=", cert.bound.expression, cert.verdict.value)

# A vector of V outside a few proper subspaces, again with a height bound
U1 = Subspace.span(basis[:1])
U2 = Subspace.span(basis[1:3])
x, cert = avoid_subspaces(V, [U1, U2])
print("avoiding vector:", show([x]), "h =", height_inhomogeneous(x).value.to_fraction(),
      "bound", cert.bound.expression)

# Sparse basis: every vector has at most n - m + 1 nonzero coordinates
W = kernel([[1, 1, 1, 1]])
basis, cert = sparse_basis(W)
print("sparse basis:", show(basis))
print("  Hcal(W)^2 =", subspace_height(W).squared, cert.notes[0])
