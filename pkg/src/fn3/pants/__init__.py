"""
Pants construction module for fn3.

- newton: damped least-squares Newton iteration
- builder: PantsRep, SolverReport and build_pants
- families: reducible block triples and Goldman's real pants
"""

from .newton import NewtonResult, damped_newton
from .builder import (
    Gauge,
    PantsRep,
    SolverReport,
    boundary_eigenvalues,
    build_pants,
    elimination_seeds,
    irreducibility_margin,
    pants_from_matrices,
)
from .families import build_reducible_pants, goldman_pants, goldman_rho

__all__ = [
    "Gauge",
    "NewtonResult",
    "PantsRep",
    "SolverReport",
    "boundary_eigenvalues",
    "build_pants",
    "build_reducible_pants",
    "damped_newton",
    "elimination_seeds",
    "goldman_pants",
    "goldman_rho",
    "irreducibility_margin",
    "pants_from_matrices",
]
