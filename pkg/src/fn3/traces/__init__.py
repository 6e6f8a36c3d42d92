"""
Trace algebra module for fn3.

- coords: raw (x) and pants (y) trace coordinates
- lawton: commutator trace polynomials and the commutator quadratic
- shape: shape invariants, branch factorization, reducibility, Fricke traces
"""

from .coords import (
    RootChoice,
    TraceCoordsX,
    TraceCoordsY,
    cyclic_shift,
    x_from_matrices,
    x_from_y,
    y_from_x,
)
from .lawton import CommutatorQuadratic, lawton_raw, lawton_sym, quadratic_roots
from .shape import (
    BranchFactorization,
    FrickeTraces,
    Reducibility,
    ShapePair,
    branch_factorization,
    commutator_branch,
    fricke_sl2,
    pants_coords,
    reducibility_test,
    self_paired_tuple,
    self_pairing_residual,
    shape_invariants,
    t2,
)

__all__ = [
    "BranchFactorization",
    "CommutatorQuadratic",
    "FrickeTraces",
    "Reducibility",
    "RootChoice",
    "ShapePair",
    "TraceCoordsX",
    "TraceCoordsY",
    "branch_factorization",
    "commutator_branch",
    "cyclic_shift",
    "fricke_sl2",
    "lawton_raw",
    "lawton_sym",
    "pants_coords",
    "quadratic_roots",
    "reducibility_test",
    "self_paired_tuple",
    "self_pairing_residual",
    "shape_invariants",
    "t2",
    "x_from_matrices",
    "x_from_y",
    "y_from_x",
]
