"""
Linear algebra module for fn3.

- matrix: 3x3 complex helpers (adjugate, characteristic polynomial)
- eigen: Cardano eigen-solver and EigenTriple
- classify: element classification and the trace test
"""

from .classify import (
    ElementClass,
    TraceTest,
    classify,
    strongly_loxodromic_by_eigenvalues,
    strongly_loxodromic_by_trace,
    trace_polynomial,
    trace_test,
)
from .eigen import EigenTriple, cubic_roots, eigen3, normalize_vector, sort_eigenvalues
from .matrix import (
    DEFAULT_UNIMODULAR_TOL,
    J,
    Mat3,
    adjugate,
    as_mat3,
    char_poly,
    check_unimodular,
    commutator,
    det3,
    diag3,
    inverse,
    normalize_det,
    random_conjugator,
    random_unimodular,
    tr,
    tr_inv,
)

__all__ = [
    "DEFAULT_UNIMODULAR_TOL",
    "EigenTriple",
    "ElementClass",
    "J",
    "Mat3",
    "TraceTest",
    "adjugate",
    "as_mat3",
    "char_poly",
    "check_unimodular",
    "classify",
    "commutator",
    "cubic_roots",
    "det3",
    "diag3",
    "eigen3",
    "inverse",
    "normalize_det",
    "normalize_vector",
    "random_conjugator",
    "random_unimodular",
    "sort_eigenvalues",
    "strongly_loxodromic_by_eigenvalues",
    "strongly_loxodromic_by_trace",
    "tr",
    "tr_inv",
    "trace_polynomial",
    "trace_test",
]
