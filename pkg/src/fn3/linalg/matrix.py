"""Exact-shape 3x3 complex matrix helpers.

Group elements are plain ``numpy`` arrays of shape (3, 3) and dtype
complex128. Inverses of unimodular matrices are always taken through the
adjugate so that no division noise enters trace computations.
"""

from __future__ import annotations

from typing import Sequence, Tuple

import numpy as np

from ..utils.errors import MalformedInput, NonUnimodular

Mat3 = np.ndarray

DEFAULT_UNIMODULAR_TOL = 1e-9

# Antidiagonal form of signature (2, 1); shared by the SO(J) and SU(J) code.
J = np.array([[0, 0, 1], [0, 1, 0], [1, 0, 0]], dtype=complex)


def as_mat3(entries: object) -> Mat3:
    """Coerce ``entries`` into a finite complex 3x3 array."""
    try:
        m = np.asarray(entries, dtype=complex)
    except (TypeError, ValueError) as e:
        raise MalformedInput(f"cannot read a 3x3 matrix: {e}") from e
    if m.shape != (3, 3):
        raise MalformedInput(f"expected a 3x3 matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise MalformedInput("matrix has non-finite entries")
    return m


def det3(m: Mat3) -> complex:
    r0, r1, r2 = m
    return complex(np.dot(r0, np.cross(r1, r2)))


def adjugate(m: Mat3) -> Mat3:
    """Classical adjugate: ``m @ adjugate(m) == det(m) * I``."""
    r0, r1, r2 = m
    return np.column_stack([np.cross(r1, r2), np.cross(r2, r0), np.cross(r0, r1)])


def inverse(m: Mat3) -> Mat3:
    """Inverse of a group element (the adjugate, since det = 1)."""
    return adjugate(m)


def unimodular_defect(m: Mat3) -> float:
    return abs(det3(m) - 1.0)


def check_unimodular(m: Mat3, tol: float = DEFAULT_UNIMODULAR_TOL) -> Mat3:
    """Raise NonUnimodular unless |det m - 1| is within ``tol``.

    The tolerance is relative to ||m||^3 once the matrix is large, which is
    the size of the rounding error in the determinant itself.
    """
    m = as_mat3(m)
    scale = max(1.0, float(np.linalg.norm(m)) ** 3)
    defect = unimodular_defect(m)
    if defect > tol * scale:
        raise NonUnimodular(f"|det - 1| = {defect:.3e} exceeds {tol:.1e}")
    return m


def char_poly(m: Mat3, tol: float = DEFAULT_UNIMODULAR_TOL) -> Tuple[complex, complex]:
    """Coefficients (c2, c1) of x^3 - c2 x^2 + c1 x - 1.

    c2 is tr(m) and c1 is tr(adj m), which equals tr(m^-1) for det m = 1.
    """
    m = check_unimodular(m, tol)
    return complex(np.trace(m)), complex(np.trace(adjugate(m)))


def tr(m: Mat3) -> complex:
    return complex(np.trace(m))


def tr_inv(m: Mat3) -> complex:
    return complex(np.trace(adjugate(m)))


def commutator(a: Mat3, b: Mat3) -> Mat3:
    """[a, b] = a b a^-1 b^-1."""
    return a @ b @ adjugate(a) @ adjugate(b)


def mat_norm(m: np.ndarray) -> float:
    return float(np.linalg.norm(m))


def normalize_det(m: np.ndarray) -> Mat3:
    """Scale an invertible matrix by the principal cube root of 1/det."""
    d = complex(np.linalg.det(m))
    if d == 0:
        raise NonUnimodular("cannot normalize a singular matrix")
    return np.asarray(m, dtype=complex) / d ** (1.0 / 3.0)


def random_unimodular(rng: np.random.Generator, scale: float = 1.0) -> Mat3:
    """Random element of SL(3, C) with entries drawn from the complex disk of radius ``scale``."""
    while True:
        radius = scale * np.sqrt(rng.uniform(0.0, 1.0, size=(3, 3)))
        angle = rng.uniform(-np.pi, np.pi, size=(3, 3))
        m = radius * np.exp(1j * angle)
        if abs(np.linalg.det(m)) > 1e-3 * scale**3:
            return normalize_det(m)


def random_conjugator(rng: np.random.Generator, max_cond: float = 1e3) -> Mat3:
    """Random unimodular matrix with condition number at most ``max_cond``."""
    while True:
        g = np.eye(3, dtype=complex) + 0.5 * (
            rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        )
        if np.linalg.cond(g) <= max_cond:
            return normalize_det(g)


def diag3(values: Sequence[complex]) -> Mat3:
    return np.diag(np.asarray(values, dtype=complex))
