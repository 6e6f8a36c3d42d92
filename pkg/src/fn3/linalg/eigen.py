"""Cubic eigen-solver for SL(3, C)."""

from __future__ import annotations

import cmath
import logging
from dataclasses import dataclass
from functools import cmp_to_key
from typing import List, Tuple

import numpy as np

from ..utils.errors import RepeatedEigenvalues
from .matrix import DEFAULT_UNIMODULAR_TOL, Mat3, char_poly

log = logging.getLogger(__name__)

ZETA = np.exp(2j * np.pi / 3)

# Ties in modulus closer than this are ordered by argument.
MODULUS_TIE = 1e-12


def cubic_roots(c2: complex, c1: complex) -> List[complex]:
    """Roots of x^3 - c2 x^2 + c1 x - 1 by Cardano, each polished by one Newton step."""
    shift = c2 / 3.0
    p = c1 - c2 * c2 / 3.0
    q = -2.0 * c2**3 / 27.0 + c2 * c1 / 3.0 - 1.0

    disc = cmath.sqrt(q * q / 4.0 + p**3 / 27.0)
    # Pick the sign that avoids cancellation inside the cube root.
    w = -q / 2.0 + disc
    w_alt = -q / 2.0 - disc
    if abs(w_alt) > abs(w):
        w = w_alt

    if w == 0:
        ts = [0j, 0j, 0j]
    else:
        c = w ** (1.0 / 3.0)
        ts = []
        for k in range(3):
            ck = c * ZETA**k
            ts.append(ck - p / (3.0 * ck))

    roots = []
    for t in ts:
        x = t + shift
        f = ((x - c2) * x + c1) * x - 1.0
        df = (3.0 * x - 2.0 * c2) * x + c1
        if df != 0:
            x = x - f / df
        roots.append(complex(x))
    return roots


def _order(a: complex, b: complex) -> int:
    ma, mb = abs(a), abs(b)
    if abs(ma - mb) > MODULUS_TIE * max(1.0, ma, mb):
        return -1 if ma > mb else 1
    pa, pb = cmath.phase(a), cmath.phase(b)
    if pa == pb:
        return 0
    return -1 if pa > pb else 1


def sort_eigenvalues(values: List[complex]) -> List[complex]:
    """Descending modulus; equal moduli by descending argument in (-pi, pi]."""
    return sorted(values, key=cmp_to_key(_order))


def null_vector(m: np.ndarray) -> np.ndarray:
    """Unit vector spanning the (numerical) kernel of ``m``."""
    _, _, vh = np.linalg.svd(m)
    return normalize_vector(vh[-1].conj())


def normalize_vector(v: np.ndarray) -> np.ndarray:
    """Unit Euclidean norm with the first non-negligible component real positive."""
    v = np.asarray(v, dtype=complex)
    v = v / np.linalg.norm(v)
    for comp in v:
        if abs(comp) > 1e-8:
            return v * (abs(comp) / comp)
    return v


def min_separation(values: List[complex]) -> float:
    return min(abs(values[i] - values[j]) for i in range(3) for j in range(i + 1, 3))


@dataclass(frozen=True)
class EigenTriple:
    """Eigen-data of a matrix with three distinct eigenvalues.

    Attributes:
        values: eigenvalues, strictly descending in modulus.
        vectors: columns are the matching unit eigenvectors v+, v0, v-.
    """

    values: Tuple[complex, complex, complex]
    vectors: np.ndarray

    @property
    def attracting(self) -> np.ndarray:
        return self.vectors[:, 0]

    @property
    def neutral(self) -> np.ndarray:
        return self.vectors[:, 1]

    @property
    def repelling(self) -> np.ndarray:
        return self.vectors[:, 2]

    def moduli_distinct(self, tol: float = 1e-9) -> bool:
        mods = [abs(v) for v in self.values]
        return all(mods[i] - mods[i + 1] > tol * max(1.0, mods[i]) for i in range(2))

    def residual(self, m: Mat3) -> float:
        """max_i ||m v_i - value_i v_i|| relative to ||m||."""
        worst = 0.0
        for i, value in enumerate(self.values):
            v = self.vectors[:, i]
            worst = max(worst, float(np.linalg.norm(m @ v - value * v)))
        return worst / max(1.0, float(np.linalg.norm(m)))


def eigen3(m: Mat3, tol: float = 1e-9) -> EigenTriple:
    """Eigenvalues and eigenvectors of a unimodular 3x3 matrix.

    Raises:
        RepeatedEigenvalues: two roots of the characteristic polynomial are
            closer than sqrt(tol) relative to the spectral scale.
    """
    c2, c1 = char_poly(m, DEFAULT_UNIMODULAR_TOL)
    values = sort_eigenvalues(cubic_roots(c2, c1))
    scale = max(1.0, max(abs(v) for v in values))
    sep = min_separation(values)
    if sep <= np.sqrt(tol) * scale:
        raise RepeatedEigenvalues(
            f"eigenvalues {values} are not separated (gap {sep:.2e})"
        )

    eye = np.eye(3, dtype=complex)
    vectors = np.column_stack([null_vector(m - value * eye) for value in values])
    log.debug("eigen3: values=%s separation=%.3e", values, sep)
    return EigenTriple(values=(values[0], values[1], values[2]), vectors=vectors)
