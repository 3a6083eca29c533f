"""Exact scalar, matrix and integer-lattice layer."""

from .lattice import (
    LatticeBasis,
    Membership,
    complete_basis,
    hnf,
    integer_kernel,
    lattice_basis,
    rational_lattice,
    saturate,
    snf,
    solve_integer,
    subgroup_member,
    torus_kernel,
)
from .matrix import ExactMatrix, solve_linear, span, subspace_ops
from .scalar import I, ExactScalar, conj, sqrt_d

__all__ = [
    "ExactScalar",
    "ExactMatrix",
    "I",
    "LatticeBasis",
    "Membership",
    "complete_basis",
    "conj",
    "hnf",
    "integer_kernel",
    "lattice_basis",
    "rational_lattice",
    "saturate",
    "snf",
    "solve_integer",
    "solve_linear",
    "span",
    "sqrt_d",
    "subgroup_member",
    "subspace_ops",
    "torus_kernel",
]
