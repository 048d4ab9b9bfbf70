"""
Heights of rational points and subspaces
========================================

"""

from fractions import Fraction

from heightforge.exact import ExactReal, exact_to_decimal
from heightforge.heights import (
    height_euclidean,
    height_inhomogeneous,
    height_projective,
    primitive_vector,
    verify_product_formula,
)
from heightforge.linalg import Subspace, column_space, duality_certificate, kernel, subspace_height

# A projective point only matters up to scaling, so clear denominators first
v = [Fraction(1, 2), Fraction(-2, 3), 5]
print("primitive form:", primitive_vector(v))
print("H(v) =", height_projective(v).value.to_fraction())
print("Hcal(v)^2 =", height_euclidean(v).squared)

# The affine height also counts the denominator, h(v) = H(1, v)
print("h(3/2) =", height_inhomogeneous(Fraction(3, 2)).value.to_fraction())

# Absolute values over all places multiply to one
ok, table = verify_product_formula(Fraction(-12, 35))
for place, value in table.items():
    print(f"  |x|_{place} = {value}")
print("product formula holds:", ok)

# Square roots stay exact; comparisons never go through floats
r = ExactReal.sqrt(2) * ExactReal.sqrt(3)
print("sqrt(2)*sqrt(3) == sqrt(6):", r == ExactReal.sqrt(6))
print("sqrt(6)", exact_to_decimal(r, 12))

# The height of a subspace comes from its Pluecker coordinates
V = column_space([[1, 0], [0, 1], [1, 1]])
print("Hcal(V)^2 =", subspace_height(V).squared)

# A kernel and the row space it annihilates have the same height
W = kernel([[1, 1, 1, 1]])
print("dim W =", W.dim, " Hcal(W)^2 =", subspace_height(W).squared)
print(duality_certificate([[1, 1, 1, 1]]).verdict.value)

# Coordinate subspaces always have height one
print("Hcal(span(e1, e3))^2 =", subspace_height(Subspace.coordinate(3, [0, 2])).squared)
