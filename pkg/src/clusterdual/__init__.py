"""Denominator and highest-power vectors of coefficient-free cluster algebras.

Exact Laurent expansion of cluster variables, tropical recursions for D- and
M-matrices, and checkers for the duality, initial-seed recursion and
highest-power identities relating them.
"""

from ._kernels import BACKEND
from .laurent import InexactDivisionError, LaurentPolynomial
from .matrices import ExchangeMatrix, is_skew_symmetrizable, mutate, mutate_word
from .presets import PRESET_NAMES, preset
from .properties import (
    PropertyReport,
    check_drm_equivalence,
    check_md_init,
    check_property_D,
    check_property_M,
    check_property_R,
    check_sigma,
    check_source_sink,
    run_check,
    search_counterexample,
)
from .seeds import Seed, canonical_key, explore, initial_seed, mutate_seed, seed_at
from .vectors import (
    d_after_initial_mutation,
    d_matrix_direct,
    d_matrix_recursive,
    m_matrix_direct,
    m_matrix_recursive,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "ExchangeMatrix",
    "InexactDivisionError",
    "LaurentPolynomial",
    "PRESET_NAMES",
    "PropertyReport",
    "Seed",
    "canonical_key",
    "check_drm_equivalence",
    "check_md_init",
    "check_property_D",
    "check_property_M",
    "check_property_R",
    "check_sigma",
    "check_source_sink",
    "d_after_initial_mutation",
    "d_matrix_direct",
    "d_matrix_recursive",
    "explore",
    "initial_seed",
    "is_skew_symmetrizable",
    "m_matrix_direct",
    "m_matrix_recursive",
    "mutate",
    "mutate_seed",
    "mutate_word",
    "preset",
    "run_check",
    "search_counterexample",
    "seed_at",
]
