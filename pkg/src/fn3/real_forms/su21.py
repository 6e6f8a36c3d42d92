"""SU(2,1) pairs: the Hermitian form J, cross-ratios of fixed points and the
linear system that recovers them from traces.

The pairing is <z, w> = w* J z (second argument conjugated). For a
loxodromic A the attracting and repelling eigenvectors a_A, r_A are J-null.
"""

from __future__ import annotations

import cmath
import logging
import math
from dataclasses import dataclass
from typing import Dict, Tuple

import numpy as np
from scipy import linalg

from ..linalg.eigen import EigenTriple, eigen3
from ..linalg.matrix import J, Mat3, adjugate, mat_norm, tr
from ..utils.errors import (
    ConjugacyInconsistent,
    DegenerateDelta,
    NotLoxodromic,
    NotNullFixedPoints,
    RepeatedEigenvalues,
)

log = logging.getLogger(__name__)

NULL_TOL = 1e-8
DELTA_TOL = 1e-12
CONJUGACY_TOL = 1e-7


def su_check(m: Mat3, tol: float = 1e-8) -> bool:
    """True when M* J M = J within ``tol``."""
    m = np.asarray(m, dtype=complex)
    return mat_norm(m.conj().T @ J @ m - J) <= tol


def hermitian(z: np.ndarray, w: np.ndarray) -> complex:
    return complex(np.vdot(w, J @ z))


def su_loxodromic_sample(
    rng: np.random.Generator,
    modulus: Tuple[float, float] = (1.5, 3.0),
    spread: float = 0.4,
) -> Tuple[Mat3, Mat3, complex]:
    """Random loxodromic element of SU(J).

    Returns (M, G, lambda) with M = G diag(lambda, conj(lambda)/lambda,
    1/conj(lambda)) G^-1; G = exp(spread * X) for a random traceless X in
    the Lie algebra of U(J), so the columns of G are the attracting,
    middle and repelling eigenvectors.
    """
    h = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    h = h - h.conj().T
    x = J @ h
    x = x - (np.trace(x) / 3.0) * np.eye(3)
    g = linalg.expm(spread * x)

    r = rng.uniform(*modulus)
    lam = cmath.rect(r, rng.uniform(-math.pi, math.pi))
    d = np.diag([lam, lam.conjugate() / lam, 1.0 / lam.conjugate()])
    m = g @ d @ adjugate(g)
    return m, g, lam


@dataclass(frozen=True)
class CrossRatios:
    X1: complex
    X2: complex
    X3: complex
    degenerate: bool = False

    def falbel_residuals(self) -> Tuple[float, float]:
        """Residuals of |X2| = |X1||X3| and of the real-part identity."""
        x1, x2, x3 = self.X1, self.X2, self.X3
        first = abs(x2) - abs(x1) * abs(x3)
        second = 2.0 * abs(x1) ** 2 * x3.real - (
            abs(x1) ** 2 + abs(x2) ** 2 + 1.0 - 2.0 * (x1 + x2).real
        )
        return first, second


def _fixed_points(m: Mat3, name: str) -> Tuple[np.ndarray, np.ndarray]:
    try:
        eig = eigen3(m)
    except RepeatedEigenvalues as err:
        raise NotLoxodromic(f"{name}: {err}") from err
    if not eig.moduli_distinct():
        raise NotLoxodromic(f"{name}: eigenvalues {eig.values} have repeated moduli")
    a, r = eig.attracting, eig.repelling
    for label, v in (("attracting", a), ("repelling", r)):
        if abs(hermitian(v, v)) > NULL_TOL:
            raise NotNullFixedPoints(
                f"{name}: {label} eigenvector has <v, v> = {hermitian(v, v):.3e}; not an SU(2,1) element"
            )
    return a, r


def _quotients(a_a: np.ndarray, r_a: np.ndarray, a_b: np.ndarray, r_b: np.ndarray) -> Tuple[complex, complex, complex]:
    ip = hermitian
    x1 = ip(r_a, a_b) * ip(r_b, a_a) / (ip(r_b, a_b) * ip(r_a, a_a))
    x2 = ip(a_a, a_b) * ip(r_b, r_a) / (ip(r_b, a_b) * ip(a_a, r_a))
    x3 = ip(a_b, a_a) * ip(r_b, r_a) / (ip(r_b, a_a) * ip(a_b, r_a))
    return x1, x2, x3


def cross_ratios(a: Mat3, b: Mat3) -> CrossRatios:
    """The three cross-ratios of the fixed points of a loxodromic SU(2,1) pair.

    When A and B share a fixed point the ratios are still returned (X1 = 1
    for B = A) with ``degenerate`` set.
    """
    a_a, r_a = _fixed_points(a, "A")
    a_b, r_b = _fixed_points(b, "B")
    x1, x2, x3 = _quotients(a_a, r_a, a_b, r_b)

    # Each vector sits once in a numerator and once in a denominator slot.
    scales = (1.7 - 0.4j, 0.6 + 1.1j, -2.0 + 0.3j, 0.9j)
    check = _quotients(*(s * v for s, v in zip(scales, (a_a, r_a, a_b, r_b))))
    drift = max(abs(p - q) / (1.0 + abs(p)) for p, q in zip((x1, x2, x3), check))
    if drift > 1e-8:
        log.warning("cross-ratios moved by %.3e under eigenvector rescaling", drift)

    # Distinct null lines are never J-orthogonal.
    shared = min(abs(hermitian(p, q)) for p in (a_a, r_a) for q in (a_b, r_b))
    return CrossRatios(X1=x1, X2=x2, X3=x3, degenerate=shared <= NULL_TOL)


@dataclass(frozen=True)
class PPTraces:
    """tr(BA), tr(A^-1 B^-1), tr(A^-1 B) and tr(B^-1 A)."""

    ba: complex
    ainv_binv: complex
    ainv_b: complex
    binv_a: complex

    @classmethod
    def from_matrices(cls, a: Mat3, b: Mat3) -> "PPTraces":
        a_inv, b_inv = adjugate(a), adjugate(b)
        return cls(
            ba=tr(b @ a),
            ainv_binv=tr(a_inv @ b_inv),
            ainv_b=tr(a_inv @ b),
            binv_a=tr(b_inv @ a),
        )

    def as_dict(self) -> Dict[Tuple[int, int], complex]:
        return {(1, 1): self.ba, (-1, -1): self.ainv_binv, (-1, 1): self.ainv_b, (1, -1): self.binv_a}


def _delta(ea: EigenTriple, eb: EigenTriple) -> complex:
    out = 1.0 + 0j
    for values in (ea.values, eb.values):
        for i in range(3):
            for j in range(i + 1, 3):
                out *= (values[i] - values[j]) ** 2
    return out


def pp_linear_system(ea: EigenTriple, eb: EigenTriple, traces: PPTraces) -> Tuple[complex, complex]:
    """Solve for (X1, X2) from four traces, treating conj X1 and conj X2 as unknowns.

    Raises:
        DegenerateDelta: an eigenvalue of A or of B is repeated.
        ConjugacyInconsistent: the solved conjugate slots do not pair up, so
            the traces do not come from an SU(2,1) pair.
    """
    delta = _delta(ea, eb)
    scale = max(1.0, max(abs(v) for v in ea.values + eb.values)) ** 12
    if abs(delta) <= DELTA_TOL * scale:
        raise DegenerateDelta(f"eigenvalue discriminant {abs(delta):.3e} vanishes")

    rows, rhs = [], []
    for (d, e), value in traces.as_dict().items():
        la, ma, na = (ea.values[k] ** d for k in range(3))
        lb, mb, nb = (eb.values[k] ** e for k in range(3))
        rows.append(
            [
                (na - ma) * (nb - mb),
                (la - ma) * (lb - mb),
                (la - ma) * (nb - mb),
                (na - ma) * (lb - mb),
            ]
        )
        rhs.append(value - (la + na) * mb - ma * (lb + nb) + ma * mb)
    system = np.array(rows, dtype=complex)
    if np.linalg.cond(system) > 1.0 / DELTA_TOL:
        raise DegenerateDelta(f"linear system condition {np.linalg.cond(system):.3e}")
    x1, x1_bar, x2, x2_bar = np.linalg.solve(system, np.array(rhs, dtype=complex))

    gap = max(abs(x1_bar - x1.conjugate()) / (1.0 + abs(x1)), abs(x2_bar - x2.conjugate()) / (1.0 + abs(x2)))
    if gap > CONJUGACY_TOL:
        raise ConjugacyInconsistent(f"conjugate slots differ by {gap:.3e}")
    return complex(x1), complex(x2)
