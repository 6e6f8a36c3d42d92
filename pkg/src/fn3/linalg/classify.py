from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import List

import numpy as np

from .eigen import cubic_roots
from .matrix import Mat3, char_poly

log = logging.getLogger(__name__)

# Band around F = 0 inside which the trace test gives no verdict.
TRACE_TEST_BAND = 1e-12


class ElementClass(Enum):
    IDENTITY = "identity"
    REGULAR_ELLIPTIC = "regular_elliptic"
    COMPLEX_REFLECTION = "complex_reflection"
    UNIPOTENT = "unipotent"
    ELLIPTIC_PARABOLIC = "elliptic_parabolic"
    LOXO_PARABOLIC = "loxo_parabolic"
    COMPLEX_HOMOTHETY = "complex_homothety"
    SCREW = "screw"
    STRONGLY_LOXODROMIC = "strongly_loxodromic"

    @property
    def family(self) -> str:
        """elliptic, parabolic or loxodromic (identity is its own family)."""
        if self in (ElementClass.REGULAR_ELLIPTIC, ElementClass.COMPLEX_REFLECTION):
            return "elliptic"
        if self in (
            ElementClass.UNIPOTENT,
            ElementClass.ELLIPTIC_PARABOLIC,
            ElementClass.LOXO_PARABOLIC,
        ):
            return "parabolic"
        if self is ElementClass.IDENTITY:
            return "identity"
        return "loxodromic"


def _clusters(values: List[complex], radius: float) -> List[List[complex]]:
    groups: List[List[complex]] = []
    for value in values:
        for group in groups:
            if any(abs(value - other) <= radius for other in group):
                group.append(value)
                break
        else:
            groups.append([value])
    return groups


def classify(m: Mat3, tol: float = 1e-9) -> ElementClass:
    """Place ``m`` in exactly one class of the elliptic/parabolic/loxodromic trichotomy.

    Eigenvalues closer than sqrt(tol) are treated as one repeated eigenvalue;
    diagonalizability compares the algebraic multiplicity of each cluster
    with the number of near-zero singular values of m - lambda I.
    """
    m = np.asarray(m, dtype=complex)
    scale = max(1.0, float(np.linalg.norm(m)))
    eye = np.eye(3, dtype=complex)
    if np.linalg.norm(m - eye) <= tol * scale:
        return ElementClass.IDENTITY

    c2, c1 = char_poly(m)
    roots = cubic_roots(c2, c1)
    radius = np.sqrt(tol) * max(1.0, max(abs(r) for r in roots))
    groups = _clusters(roots, radius)
    centers = [complex(np.mean(g)) for g in groups]

    diagonalizable = True
    for group, center in zip(groups, centers):
        sv = np.linalg.svd(m - center * eye, compute_uv=False)
        geometric = int(np.sum(sv <= np.sqrt(tol) * scale))
        if geometric < len(group):
            diagonalizable = False

    unit = [abs(abs(c) - 1.0) <= tol for c in centers]

    if diagonalizable:
        if all(unit):
            if len(groups) == 3:
                return ElementClass.REGULAR_ELLIPTIC
            return ElementClass.COMPLEX_REFLECTION
        if len(groups) < 3:
            return ElementClass.COMPLEX_HOMOTHETY
        mods = sorted(abs(c) for c in centers)
        if all(mods[i + 1] - mods[i] > tol * max(1.0, mods[i + 1]) for i in range(2)):
            return ElementClass.STRONGLY_LOXODROMIC
        return ElementClass.SCREW

    if all(unit):
        if len(groups) == 1:
            return ElementClass.UNIPOTENT
        return ElementClass.ELLIPTIC_PARABOLIC
    return ElementClass.LOXO_PARABOLIC


def trace_polynomial(x: complex, y: complex) -> complex:
    """F(x, y) = x^2 y^2 - 4(x^3 + y^3) + 18 x y - 27, the discriminant of the characteristic polynomial."""
    return x * x * y * y - 4.0 * (x**3 + y**3) + 18.0 * x * y - 27.0


@dataclass(frozen=True)
class TraceTest:
    strongly_loxodromic: bool
    F: complex
    conjugate_pair: bool
    indeterminate: bool


def trace_test(t: complex, tinv: complex) -> TraceTest:
    """Strong loxodromy decided from (tr M, tr M^-1) alone.

    When tr M^-1 is the conjugate of tr M, F is real and the element is
    strongly loxodromic exactly when F > 0; otherwise any F != 0 counts.
    Values with |F| inside TRACE_TEST_BAND are reported as indeterminate.
    """
    t, tinv = complex(t), complex(tinv)
    f = trace_polynomial(t, tinv)
    conjugate_pair = abs(tinv - t.conjugate()) <= 1e-12 * max(1.0, abs(t))
    indeterminate = abs(f) <= TRACE_TEST_BAND
    if conjugate_pair:
        result = f.real > TRACE_TEST_BAND
    else:
        result = not indeterminate
    if indeterminate:
        log.warning("trace test indeterminate at (%s, %s): F = %s", t, tinv, f)
    return TraceTest(
        strongly_loxodromic=result,
        F=f,
        conjugate_pair=conjugate_pair,
        indeterminate=indeterminate,
    )


def strongly_loxodromic_by_trace(t: complex, tinv: complex) -> bool:
    return trace_test(t, tinv).strongly_loxodromic


def strongly_loxodromic_by_eigenvalues(m: Mat3, gap: float = 1e-6) -> bool:
    """Oracle: pairwise eigenvalue-modulus gaps exceed ``gap``."""
    c2, c1 = char_poly(m)
    mods = sorted(abs(r) for r in cubic_roots(c2, c1))
    return mods[1] - mods[0] > gap and mods[2] - mods[1] > gap
