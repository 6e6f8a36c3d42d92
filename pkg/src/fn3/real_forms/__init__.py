"""
Real forms module for fn3.

- goldman: Goldman boundary invariants, Zhang's interior parameters, closed-form shapes
- su21: the Hermitian form J, cross-ratios and the trace linear system
- detection: coordinate-level verdicts and word scans
"""

from .goldman import (
    GoldmanParams,
    GoldmanRho,
    goldman_boundary_to_traces,
    goldman_internal_t,
    goldman_jacobian,
    goldman_matrices,
    rho_values,
    traces_to_goldman_boundary,
    zhang_sigma,
)
from .su21 import (
    CrossRatios,
    PPTraces,
    cross_ratios,
    hermitian,
    pp_linear_system,
    su_check,
    su_loxodromic_sample,
)
from .detection import SubgroupTag, SubgroupVerdict, acosta_scan, detect_pants, random_words

__all__ = [
    "CrossRatios",
    "GoldmanParams",
    "GoldmanRho",
    "PPTraces",
    "SubgroupTag",
    "SubgroupVerdict",
    "acosta_scan",
    "cross_ratios",
    "detect_pants",
    "goldman_boundary_to_traces",
    "goldman_internal_t",
    "goldman_jacobian",
    "goldman_matrices",
    "hermitian",
    "pp_linear_system",
    "random_words",
    "rho_values",
    "su_check",
    "su_loxodromic_sample",
    "traces_to_goldman_boundary",
    "zhang_sigma",
]
