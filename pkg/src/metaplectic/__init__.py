"""Compactification of Sp(n, R), oscillator matrix coefficients and weight-lattice tools."""

from .compactification import compactify, det12, gc_decompose, tau_action
from .errors import ConsistencyError, DecompositionError, QuadratureError, ValidationError
from .fock import FockPolynomial, bargmann_inner, gaussian_pairing, matrix_coefficient, pair_embed
from .symplectic import CartanFactorization, MetaplecticElement, embed_unitary, kak_decompose, lambda_squared

__all__ = [
    "CartanFactorization", "ConsistencyError", "DecompositionError", "FockPolynomial", "MetaplecticElement",
    "QuadratureError", "ValidationError", "bargmann_inner", "compactify", "det12", "embed_unitary",
    "gaussian_pairing", "gc_decompose", "kak_decompose", "lambda_squared", "matrix_coefficient",
    "pair_embed", "tau_action",
]
