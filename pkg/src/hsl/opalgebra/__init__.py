"""Symbolic-m operator algebra: normal ordering and identity verification."""
from .engine import K, M, R, Algebra, Expr, commutator
from .identities import (
    CATALOGUE, IdentityReport, apply_expr, identity_names, matrix_check, omega_algebra,
    realize, reduced_sides, sp4_algebra, verify_module_identity,
)

__all__ = [
    "K", "M", "R", "Algebra", "Expr", "commutator", "CATALOGUE", "IdentityReport", "apply_expr",
    "identity_names", "matrix_check", "omega_algebra", "realize", "reduced_sides", "sp4_algebra",
    "verify_module_identity",
]
