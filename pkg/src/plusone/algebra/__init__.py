from .linalg import PRIME, QMatrix, kernel, matrix_rank, nullspace, rank, rank_mod_p, rref, solve, sparse_rank_mod_p
from .poly import (
    HomogSlice,
    Poly,
    dim_homogeneous,
    monomial_basis,
    monomial_index,
    multiplication_table,
    poly_matrix_det,
    poly_mul,
)

__all__ = [
    "PRIME",
    "HomogSlice",
    "Poly",
    "QMatrix",
    "dim_homogeneous",
    "kernel",
    "matrix_rank",
    "monomial_basis",
    "monomial_index",
    "multiplication_table",
    "nullspace",
    "poly_matrix_det",
    "poly_mul",
    "rank",
    "rank_mod_p",
    "rref",
    "solve",
    "sparse_rank_mod_p",
]
