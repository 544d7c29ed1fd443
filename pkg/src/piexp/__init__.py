"""Exact PI-exponents, codimensions and identities of finite-dimensional algebras.

Algebras are given by rational structure constants, optionally with a group
grading or an involution.  The pipeline computes the radical, a
structure-compatible semisimple complement, its simple components and the
exponent as the heaviest admissible chain of components.
"""

__version__ = "0.1.0"

from .algebra import Algebra, Subspace, multiply, validate
from .constructions import (StructuredAlgebra, build, direct_sum, exchange, field, full_matrix,
                            grassmann_envelope, grassmann_truncated, group_algebra, incidence,
                            matrix_algebra, opposite, tensor_product, ut, zero)
from .exponent import (ExponentReport, admissible_max, envelope_exponent, matrix_theorem_check,
                       pi_exponent, tensor_theorem_check)
from .identities import (MultilinearPolynomial, codimension, containment_at_degree, evaluate,
                         is_identity, parse_polynomial, regev_bound_check)
from .structure import analyze, is_action_simple, radical, wedderburn_malcev

__all__ = [
    "Algebra", "Subspace", "multiply", "validate", "StructuredAlgebra", "build", "direct_sum",
    "exchange", "field", "full_matrix", "grassmann_envelope", "grassmann_truncated", "group_algebra",
    "incidence", "matrix_algebra", "opposite", "tensor_product", "ut", "zero", "ExponentReport",
    "admissible_max", "envelope_exponent", "matrix_theorem_check", "pi_exponent",
    "tensor_theorem_check", "MultilinearPolynomial", "codimension", "containment_at_degree",
    "evaluate", "is_identity", "parse_polynomial", "regev_bound_check", "analyze",
    "is_action_simple", "radical", "wedderburn_malcev",
]
