"""The irreducible representation SL(2) -> SO(J) inside SL(3, C).

``phi_star`` acts on quadratic forms in two variables; the basis is chosen
so that the image preserves the antidiagonal form J, i.e.
``phi_star(M).T @ J @ phi_star(M) == J`` (transpose, not adjoint).
"""

from __future__ import annotations

import numpy as np

from ..linalg.matrix import J, Mat3
from ..utils.errors import MalformedInput, NonUnimodular

Mat2 = np.ndarray

SQRT2 = np.sqrt(2.0)


def as_mat2(entries: object, tol: float = 1e-10, group: bool = True) -> Mat2:
    m = np.asarray(entries, dtype=complex)
    if m.shape != (2, 2):
        raise MalformedInput(f"expected a 2x2 matrix, got shape {m.shape}")
    if group and abs(det2(m) - 1.0) > tol * max(1.0, float(np.linalg.norm(m)) ** 2):
        raise NonUnimodular(f"|det - 1| = {abs(det2(m) - 1.0):.3e} for a 2x2 element")
    return m


def det2(m: Mat2) -> complex:
    return complex(m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0])


def inv2(m: Mat2) -> Mat2:
    """Inverse of an SL(2) element."""
    return np.array([[m[1, 1], -m[0, 1]], [-m[1, 0], m[0, 0]]], dtype=complex)


def phi_star(m: Mat2) -> Mat3:
    m = as_mat2(m)
    a, b = m[0]
    c, d = m[1]
    return np.array(
        [
            [a * a, -SQRT2 * a * b, -b * b],
            [-SQRT2 * a * c, a * d + b * c, SQRT2 * b * d],
            [-c * c, SQRT2 * c * d, d * d],
        ],
        dtype=complex,
    )


def phi_vector(w: np.ndarray) -> np.ndarray:
    """Image of a vector of C^2; eigenvectors go to eigenvectors with squared eigenvalue."""
    w1, w2 = np.asarray(w, dtype=complex)
    return np.array([-w1 * w1, SQRT2 * w1 * w2, w2 * w2], dtype=complex)


def j_orthogonality_defect(m: Mat3) -> float:
    return float(np.linalg.norm(m.T @ J @ m - J))
