from __future__ import annotations


class Fn3Error(ValueError):
    """Base class for every error raised by fn3.

    ``exit_code`` is what the command line returns when the error escapes a
    command: 2 for bad input, 3 for a violated mathematical precondition and
    4 for numerical non-convergence.
    """

    exit_code: int = 1


class InputError(Fn3Error):
    exit_code = 2


class PreconditionError(Fn3Error):
    exit_code = 3


class ConvergenceError(Fn3Error):
    exit_code = 4


# Input errors


class MalformedInput(InputError):
    """A file or argument could not be turned into the expected record."""


class UnknownSuite(InputError):
    pass


class UnknownGenerator(InputError):
    pass


class DecompositionInvalid(InputError):
    """The pants graph violates slot usage, counts or connectedness."""


# Linear algebra


class NonUnimodular(PreconditionError):
    pass


class RepeatedEigenvalues(PreconditionError):
    pass


class IllConditioned(PreconditionError):
    pass


class EigenvalueMismatch(PreconditionError):
    pass


# Pants construction


class BoundaryNotLoxodromic(PreconditionError):
    pass


class RootChoiceUnrealizable(PreconditionError):
    pass


class GaugeDegenerate(PreconditionError):
    pass


class NoConvergence(ConvergenceError):
    pass


class ConstraintViolated(PreconditionError):
    pass


class RelationResidual(PreconditionError):
    pass


class DomainError(PreconditionError):
    pass


# Gluing


class NotInCentralizer(PreconditionError):
    pass


class NotStronglyLoxodromic(PreconditionError):
    pass


class SpectraMismatch(PreconditionError):
    pass


# Real forms


class NotPositiveRealSpectrum(PreconditionError):
    pass


class DegenerateJacobian(PreconditionError):
    pass


class NotLoxodromic(PreconditionError):
    pass


class NotNullFixedPoints(PreconditionError):
    pass


class DegenerateDelta(PreconditionError):
    pass


class ConjugacyInconsistent(PreconditionError):
    pass


def with_context(err: Fn3Error, context: str) -> Fn3Error:
    """Return a copy of ``err`` (same class) whose message is prefixed by ``context``."""
    return type(err)(f"{context}: {err}")
