"""Exact-arithmetic grading switches for nonassociative algebras in prime
characteristic, built on generalized Laguerre polynomials of derivations.

The pieces, bottom up: finite fields (`fields`), polynomials and the
bivariate quotient rings behind the coefficient tables (`polyring`), the
Laguerre values with their identity suite (`laguerre`), structure-constant
algebras and exact linear algebra (`galg`), the switching operator and its
verification (`switch`), and tori of restricted Lie algebras (`toral`).
"""

from .fields import GF, FqElement, artin_schreier_root, embed, embedding, \
    roots_in_splitting_field
from .galg import Decomposition, GradedAlgebra, LinearMap, Subspace, \
    derivation_degree, direct_sum, generalized_eigenspaces, is_derivation, \
    is_graded_derivation, is_grading, truncated_poly, \
    truncated_poly_derivation, witt
from .laguerre import CoefficientTable, c_coefficients, \
    c_coefficients_symbolic, check_all_identities, check_identity, \
    check_lemma_forms, check_lemma_product_identity, laguerre_at, \
    laguerre_symbolic, scalar_product_form, strade_operator_form_check, \
    truncated_exp, zero_pair_closed_form
from .polyring import MultiPoly, NonInvertibleError, Polynomial, \
    QuotientRing, TruncSeries
from .switch import HypothesisError, PPolynomial, Relation, SwitchResult, \
    VerificationError, build_LD, build_g, p_power_relation, \
    semisimple_exponent, special_LD, switch_grading, verify_product_rule
from .toral import RestrictedLie, RootSpaces, Torus, compare_switch_to_toral, \
    refine_grading, root_decomposition, strade_map, switch_torus

__version__ = "1.0.0"

__all__ = [
    "GF", "FqElement", "artin_schreier_root", "embed", "embedding",
    "roots_in_splitting_field",
    "Decomposition", "GradedAlgebra", "LinearMap", "Subspace",
    "derivation_degree", "direct_sum", "generalized_eigenspaces",
    "is_derivation", "is_graded_derivation", "is_grading", "truncated_poly",
    "truncated_poly_derivation", "witt",
    "CoefficientTable", "c_coefficients", "c_coefficients_symbolic",
    "check_all_identities", "check_identity", "check_lemma_forms",
    "check_lemma_product_identity", "laguerre_at", "laguerre_symbolic",
    "scalar_product_form", "strade_operator_form_check", "truncated_exp",
    "zero_pair_closed_form",
    "MultiPoly", "NonInvertibleError", "Polynomial", "QuotientRing",
    "TruncSeries",
    "HypothesisError", "PPolynomial", "Relation", "SwitchResult",
    "VerificationError", "build_LD", "build_g", "p_power_relation",
    "semisimple_exponent", "special_LD", "switch_grading",
    "verify_product_rule",
    "RestrictedLie", "RootSpaces", "Torus", "compare_switch_to_toral",
    "refine_grading", "root_decomposition", "strade_map", "switch_torus",
    "__version__",
]
