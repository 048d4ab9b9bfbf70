"""Exact heights, small bases and small rational zeros, with proof-carrying certificates."""

from .certificate import Bound, Certificate, Check, Term, Verdict, height_certificate
from .errors import HeightForgeError, ProblemSyntaxError
from .exact import ExactReal, Ordering, exact_compare, exact_to_decimal, render_exact, to_fixed
from .heights import (
    QQ,
    FieldContext,
    HeightKind,
    HeightValue,
    height_by_places,
    height_euclidean,
    height_inhomogeneous,
    height_projective,
    matrix_height,
    matrix_inhomogeneous_height,
    padic_abs,
    primitive_vector,
    verify_product_formula,
)
from .lattice import lll_reduce, points_in_cube, saturated_basis
from .linalg import (
    Subspace,
    basis_product_certificate,
    column_space,
    det,
    duality_certificate,
    intersect,
    intersect_with_certificate,
    inverse,
    inverse_with_certificate,
    kernel,
    nullspace,
    plucker_coordinates,
    rank,
    reduced_column_echelon,
    row_space,
    subspace_height,
)
from .polynomial import (
    ISeparatedForm,
    MultiPoly,
    decompose_I_separated,
    evaluate,
    format_poly,
    is_multilinear_form,
    parse_poly,
    poly_image_height_certificate,
    poly_matrix_det,
    rational_roots,
    substitute_linear,
)
from .siegel import avoid_subspaces, nonvanishing_witness, small_basis, sparse_basis
from .solvers import (
    linear_form_zero_on_subspace,
    multilinear_zero,
    multilinear_zero_on_subspace,
    solve_on_line,
    solve_single_avoiding,
    solve_system,
)

__version__ = "0.1.0"
