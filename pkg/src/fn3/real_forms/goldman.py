"""Goldman's coordinates for convex real projective pants.

Each boundary carries (lambda, tau): lambda is the smallest eigenvalue and
tau the sum of the other two, so tr = lambda + tau and
tr^-1 = 1/lambda + lambda tau. The interior is described by Zhang's pair
(s, r); Goldman's own internal parameter is t = r / rho_B(s).
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from ..linalg.eigen import cubic_roots
from ..traces.shape import ShapePair
from ..utils.errors import ConstraintViolated, DegenerateJacobian, NotPositiveRealSpectrum

log = logging.getLogger(__name__)

REAL_TOL = 1e-6


@dataclass(frozen=True)
class GoldmanParams:
    lam: Tuple[float, float, float]
    tau: Tuple[float, float, float]
    s: float
    r: float
    strict: bool = True

    def __post_init__(self) -> None:
        for name, (lam, tau) in zip("ABC", zip(self.lam, self.tau)):
            if lam <= 0:
                raise ConstraintViolated(f"lambda_{name} = {lam} must be positive")
            if self.strict and not lam < 1:
                raise ConstraintViolated(f"lambda_{name} = {lam} must lie in (0, 1)")
            if self.strict and not 2.0 / math.sqrt(lam) < tau < lam + lam**-2:
                raise ConstraintViolated(
                    f"tau_{name} = {tau} outside ({2.0 / math.sqrt(lam):.6g}, "
                    f"{lam + lam**-2:.6g})"
                )
        if self.strict and not (self.s > 0 and self.r > 0):
            raise ConstraintViolated(f"s = {self.s} and r = {self.r} must be positive")
        if self.s == 0 or self.r == 0:
            raise ConstraintViolated("s and r must be nonzero")

    @property
    def product(self) -> float:
        return self.lam[0] * self.lam[1] * self.lam[2]


def goldman_boundary_to_traces(lam: float, tau: float) -> Tuple[float, float]:
    return lam + tau, 1.0 / lam + lam * tau


def goldman_jacobian(lam: float, tau: float) -> float:
    """Vanishes exactly when the two smallest eigenvalues coincide."""
    return lam + lam**-2 - tau


def traces_to_goldman_boundary(t: float, tinv: float) -> Tuple[float, float]:
    """Inverse of goldman_boundary_to_traces through the spectrum 0 < lambda < mu < nu."""
    roots = sorted(cubic_roots(complex(t), complex(tinv)), key=lambda z: z.real)
    scale = max(1.0, max(abs(z) for z in roots))
    if abs(roots[1] - roots[0]) <= REAL_TOL * scale:
        raise DegenerateJacobian(
            f"traces ({t}, {tinv}) sit on the degenerate locus tau = lambda + lambda^-2"
        )
    if any(abs(z.imag) > REAL_TOL * scale or z.real <= 0 for z in roots):
        raise NotPositiveRealSpectrum(f"spectrum {roots} is not positive real")
    lam = roots[0].real
    return lam, roots[1].real + roots[2].real


@dataclass(frozen=True)
class GoldmanRho:
    """rho_A, rho_B and both candidates for rho_C.

    ``rho_c_reference`` is the closed form as usually quoted, which repeats
    tau_A and lambda_C / lambda_B from rho_A. ``rho_c_relation`` is the value
    forced by tr C = lambda_C + tau_C. ``used`` names the one the matrices
    were built with.
    """

    rho_a: float
    rho_b: float
    rho_c_reference: float
    rho_c_relation: float
    used: str = "relation"

    @property
    def rho_c(self) -> float:
        return self.rho_c_relation if self.used == "relation" else self.rho_c_reference

    @property
    def discrepancy(self) -> float:
        return abs(self.rho_c_reference - self.rho_c_relation)


def rho_values(p: GoldmanParams) -> GoldmanRho:
    la, lb, lc = p.lam
    ta, tb, tc = p.tau
    s = p.s
    return GoldmanRho(
        rho_a=1.0 + math.sqrt(lc * la / lb) * ta * s + (lc / lb) * s * s,
        rho_b=1.0 + math.sqrt(la * lb / lc) * tb * s + (la / lc) * s * s,
        rho_c_reference=1.0 + math.sqrt(lb * lc / la) * ta * s + (lc / lb) * s * s,
        rho_c_relation=1.0 + math.sqrt(lb * lc / la) * tc * s + (lb / la) * s * s,
    )


def goldman_internal_t(p: GoldmanParams) -> float:
    return p.r / rho_values(p).rho_b


def zhang_sigma(p: GoldmanParams, rho: GoldmanRho | None = None) -> ShapePair:
    """Closed forms for sigma_+ and sigma_- of the Goldman pants."""
    rho = rho or rho_values(p)
    la, lb, lc = p.lam
    ta, tb, tc = p.tau
    s, r = p.s, p.r
    root_l = math.sqrt(p.product)
    prod = rho.rho_a * rho.rho_b * rho.rho_c

    plus = (
        (root_l + 1.0 / root_l) * s
        + (r + prod / r) / s**2
        + (
            math.sqrt(lc / lb) * math.sqrt(la) * ta
            + math.sqrt(la / lc) * math.sqrt(lb) * tb
            + math.sqrt(lb / la) * math.sqrt(lc) * tc
        )
        / s
        + 2.0 / s**2
    )
    minus = (
        (root_l + 1.0 / root_l) / s
        + (root_l * r + prod / (root_l * r)) / s
        + (
            math.sqrt(lb / lc) * math.sqrt(la) * ta
            + math.sqrt(lc / la) * math.sqrt(lb) * tb
            + math.sqrt(la / lb) * math.sqrt(lc) * tc
        )
        * s
        + 2.0 * s**2
    )
    return ShapePair(sigma_plus=complex(plus), sigma_minus=complex(minus))


def goldman_matrices(p: GoldmanParams, rho_c: float) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Goldman's triple (A, B, C) with C B A = I for a given rho_C."""
    la, lb, lc = p.lam
    s, r = p.s, p.r
    rho = rho_values(p)

    al1 = la
    al2 = math.sqrt(lc / (la * lb)) / s
    al3 = math.sqrt(lb / (la * lc)) * s
    be1 = math.sqrt(lc / (la * lb)) * s
    be2 = lb
    be3 = math.sqrt(la / (lb * lc)) / s
    ga1 = math.sqrt(lb / (la * lc)) / s
    ga2 = math.sqrt(la / (lb * lc)) * s
    ga3 = lc

    a2 = r / rho.rho_b
    a3 = b3 = 2.0
    b1 = rho.rho_b * rho_c / r
    c1 = rho.rho_b / 2.0
    c2 = rho.rho_a / 2.0

    a = np.array(
        [
            [al1, al1 * a2 + ga1 * a3 * c2, ga1 * a3],
            [0.0, -be1 + ga1 * b3 * c2, ga1 * b3],
            [0.0, -ga1 * c2, -ga1],
        ],
        dtype=complex,
    )
    b = np.array(
        [
            [-al2, 0.0, -al2 * a3],
            [al2 * b1, be2, be2 * b3 + al2 * a3 * b1],
            [al2 * c1, 0.0, -ga2 + al2 * a3 * c1],
        ],
        dtype=complex,
    )
    c = np.array(
        [
            [-al3 + be3 * a2 * b1, be3 * a2, 0.0],
            [-be3 * b1, -be3, 0.0],
            [ga3 * c1 + be3 * b1 * c2, be3 * c2, ga3],
        ],
        dtype=complex,
    )
    return a, b, c
