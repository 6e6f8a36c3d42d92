"""
SL(2) bridge module for fn3.

- embedding: phi_star and the matching map on vectors
- fuchsian: SL(2) normal forms, Fuchsian pants and shape formulas
"""

from .embedding import Mat2, as_mat2, det2, inv2, j_orthogonality_defect, phi_star, phi_vector
from .fuchsian import (
    FuchsianShape,
    SL2Pair,
    continue_shape,
    fuchsian_coords,
    fuchsian_pants,
    fuchsian_shape,
    gilman_maskit_sign,
    shape_quadratic_roots,
    sl2_pants_from_traces,
)

__all__ = [
    "FuchsianShape",
    "Mat2",
    "SL2Pair",
    "as_mat2",
    "continue_shape",
    "det2",
    "fuchsian_coords",
    "fuchsian_pants",
    "fuchsian_shape",
    "gilman_maskit_sign",
    "inv2",
    "j_orthogonality_defect",
    "phi_star",
    "phi_vector",
    "shape_quadratic_roots",
    "sl2_pants_from_traces",
]
