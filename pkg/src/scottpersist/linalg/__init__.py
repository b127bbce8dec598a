"""Exact linear algebra over Q (default) or F_p."""
from ._backend import COMPILED
from .fields import DEFAULT_PRIME, PrimeField, RationalField, active_field, parse_field, use_field
from .matrix import (
    Matrix,
    add,
    annihilator,
    block_diag,
    compose,
    contains_columns,
    hstack,
    identity,
    image_basis,
    inverse,
    is_invertible,
    kernel_basis,
    matmul,
    quotient_map,
    rank,
    right_inverse,
    rref,
    same_column_space,
    scalar,
    scale,
    solve,
    subspace_intersection,
    vstack,
    zeros,
)
from .sparse import sparse_nullspace, sparse_rank

__all__ = [
    "COMPILED",
    "DEFAULT_PRIME",
    "Matrix",
    "PrimeField",
    "RationalField",
    "active_field",
    "add",
    "annihilator",
    "block_diag",
    "compose",
    "contains_columns",
    "hstack",
    "identity",
    "image_basis",
    "inverse",
    "is_invertible",
    "kernel_basis",
    "matmul",
    "parse_field",
    "quotient_map",
    "rank",
    "right_inverse",
    "rref",
    "same_column_space",
    "scalar",
    "scale",
    "solve",
    "sparse_nullspace",
    "sparse_rank",
    "subspace_intersection",
    "use_field",
    "vstack",
    "zeros",
]
