"""Exact scalars, sparse two-variable polynomials and exact linear algebra."""
from .scalars import (
    AlphaPoly, Coefficient, I_UNIT, Q, Scalar, coeff, conj, format_scalar, imag_part,
    parse_scalar, real_part,
)
from .poly import (
    ContextError, MultiPoly, bihomogeneous_monomials, exponents, inner_ux, monomial_basis,
    norm_sq, parse_poly, poly_mul, random_point, random_poly, substitute_xux, term_key, u,
    witt_form, x,
)
from .linalg import (
    EchelonBasis, ExactMatrix, SparseEliminator, content_scale, det, kernel_of_images,
    nullspace, rank, rank_of, solve,
)

__all__ = [
    "AlphaPoly", "Coefficient", "I_UNIT", "Q", "Scalar", "coeff", "conj", "format_scalar",
    "imag_part", "parse_scalar", "real_part", "ContextError", "MultiPoly",
    "bihomogeneous_monomials", "exponents", "inner_ux", "monomial_basis", "norm_sq",
    "parse_poly", "poly_mul", "random_point", "random_poly", "substitute_xux", "term_key", "u",
    "witt_form", "x", "EchelonBasis", "ExactMatrix", "SparseEliminator", "content_scale", "det",
    "kernel_of_images", "nullspace", "rank", "rank_of", "solve",
]
