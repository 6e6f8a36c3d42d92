"""
Utilities module for fn3.

This module contains the error hierarchy shared by every other module.
"""

from .errors import (
    BoundaryNotLoxodromic,
    ConjugacyInconsistent,
    ConstraintViolated,
    ConvergenceError,
    DecompositionInvalid,
    DegenerateDelta,
    DegenerateJacobian,
    DomainError,
    EigenvalueMismatch,
    Fn3Error,
    GaugeDegenerate,
    IllConditioned,
    InputError,
    MalformedInput,
    NoConvergence,
    NonUnimodular,
    NotInCentralizer,
    NotLoxodromic,
    NotNullFixedPoints,
    NotPositiveRealSpectrum,
    NotStronglyLoxodromic,
    PreconditionError,
    RelationResidual,
    RepeatedEigenvalues,
    RootChoiceUnrealizable,
    SpectraMismatch,
    UnknownGenerator,
    UnknownSuite,
    with_context,
)

__all__ = [
    "BoundaryNotLoxodromic",
    "ConjugacyInconsistent",
    "ConstraintViolated",
    "ConvergenceError",
    "DecompositionInvalid",
    "DegenerateDelta",
    "DegenerateJacobian",
    "DomainError",
    "EigenvalueMismatch",
    "Fn3Error",
    "GaugeDegenerate",
    "IllConditioned",
    "InputError",
    "MalformedInput",
    "NoConvergence",
    "NonUnimodular",
    "NotInCentralizer",
    "NotLoxodromic",
    "NotNullFixedPoints",
    "NotPositiveRealSpectrum",
    "NotStronglyLoxodromic",
    "PreconditionError",
    "RelationResidual",
    "RepeatedEigenvalues",
    "RootChoiceUnrealizable",
    "SpectraMismatch",
    "UnknownGenerator",
    "UnknownSuite",
    "with_context",
]
