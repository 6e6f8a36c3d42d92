"""The centralizer torus of a strongly loxodromic boundary curve.

In the eigenbasis (v+, v0, v-) of the glued curve the centralizer is the
diagonal torus

    K(u, v) = diag(exp(u - v), exp(2v), exp(-u - v))

with u = twist + i bend and v = bulge + i turn. K(u, v) is unchanged by
u -> u + 2 pi i and by (u, v) -> (u + pi i, v + pi i), so parameters are
kept in the box Im u in (-pi, pi], Im v in (-pi/2, pi/2].
"""

from __future__ import annotations

import cmath
import logging
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from ..linalg.eigen import EigenTriple, eigen3, sort_eigenvalues
from ..linalg.matrix import Mat3, mat_norm
from ..utils.errors import EigenvalueMismatch, IllConditioned, NotInCentralizer, NotStronglyLoxodromic

log = logging.getLogger(__name__)

MAX_COND = 1e8
CENTRALIZER_TOL = 1e-8


def _fold(x: float, period: float) -> int:
    """Number of periods to subtract so that x lands in (-period/2, period/2]."""
    return math.ceil((x - period / 2.0) / period)


@dataclass(frozen=True)
class CentralizerParam:
    u: complex = 0j
    v: complex = 0j

    @property
    def twist(self) -> float:
        return self.u.real

    @property
    def bend(self) -> float:
        return self.u.imag

    @property
    def bulge(self) -> float:
        return self.v.real

    @property
    def turn(self) -> float:
        return self.v.imag

    def canonical(self) -> "CentralizerParam":
        u, v = complex(self.u), complex(self.v)
        k = _fold(v.imag, math.pi)
        v -= 1j * math.pi * k
        u -= 1j * math.pi * k
        u -= 2j * math.pi * _fold(u.imag, 2.0 * math.pi)
        return CentralizerParam(u, v)

    @property
    def lattice_wrapped(self) -> bool:
        c = self.canonical()
        return abs(c.u - self.u) > 1e-12 or abs(c.v - self.v) > 1e-12

    def reversed(self) -> "CentralizerParam":
        """The same gluing read from the other side of the edge."""
        return CentralizerParam(self.u, -self.v).canonical()

    def distance(self, other: "CentralizerParam") -> float:
        """Distance between canonical forms, allowing for the box edges."""
        a, b = self.canonical(), other.canonical()
        best = np.inf
        for du, dv in ((0, 0), (2j * math.pi, 0), (-2j * math.pi, 0), (1j * math.pi, 1j * math.pi), (-1j * math.pi, -1j * math.pi)):
            best = min(best, max(abs(a.u - b.u + du), abs(a.v - b.v + dv)))
        return float(best)


class GlueRegime(Enum):
    """Which real form a gluing by K(u, v) keeps."""

    TRIVIAL = "trivial"
    TWIST = "twist"
    TWIST_TURN = "twist_turn"
    TWIST_BULGE = "twist_bulge"
    TWIST_BEND = "twist_bend"
    GENERAL = "general"


def glue_regime(p: CentralizerParam, tol: float = 1e-12) -> GlueRegime:
    """Twist and turn keep SU(2,1); twist and bulge keep SL(3,R); twist and bend keep SO(3,C)."""
    c = p.canonical()
    has = {
        "twist": abs(c.twist) > tol,
        "bend": abs(c.bend) > tol,
        "bulge": abs(c.bulge) > tol,
        "turn": abs(c.turn) > tol,
    }
    extra = [name for name in ("bend", "bulge", "turn") if has[name]]
    if not extra:
        return GlueRegime.TWIST if has["twist"] else GlueRegime.TRIVIAL
    if len(extra) > 1:
        return GlueRegime.GENERAL
    return {
        "turn": GlueRegime.TWIST_TURN,
        "bulge": GlueRegime.TWIST_BULGE,
        "bend": GlueRegime.TWIST_BEND,
    }[extra[0]]


def centralizer_element(p: CentralizerParam) -> Mat3:
    """K(u, v) as a diagonal matrix; the entries multiply to 1 exactly."""
    u, v = complex(p.u), complex(p.v)
    return np.diag([cmath.exp(u - v), cmath.exp(2.0 * v), cmath.exp(-u - v)]).astype(complex)


def in_basis(diag: Mat3, basis: EigenTriple) -> Mat3:
    """E diag E^-1 for the eigenvector matrix E of ``basis``."""
    e = basis.vectors
    return e @ diag @ np.linalg.inv(e)


def extract_twist(k: Mat3, basis: EigenTriple) -> CentralizerParam:
    """Parameter of the centralizer element ``k`` of the curve with eigen-data ``basis``.

    Raises:
        NotStronglyLoxodromic: the curve's eigenvalue moduli are not distinct.
        NotInCentralizer: ``k`` is not diagonal in the curve's eigenbasis.
    """
    if not basis.moduli_distinct():
        raise NotStronglyLoxodromic(f"eigenvalues {basis.values} have repeated moduli")
    e = basis.vectors
    d = np.linalg.solve(e, k @ e)
    off = d - np.diag(np.diag(d))
    if mat_norm(off) > CENTRALIZER_TOL * max(1.0, mat_norm(k)) * np.linalg.cond(e):
        raise NotInCentralizer(f"off-diagonal part {mat_norm(off):.3e} in the curve's eigenbasis")
    kappa = np.diag(d)
    v = cmath.log(kappa[1]) / 2.0
    u = cmath.log(kappa[0]) + v
    raw = CentralizerParam(u, v)
    if raw.lattice_wrapped:
        log.debug("extract_twist: folded (u=%s, v=%s) into the canonical box", u, v)
    return raw.canonical()


def _real_aware_cube_root(w: complex) -> complex:
    if w.real < 0 and abs(w.imag) <= 1e-12 * abs(w):
        return -(abs(w) ** (1.0 / 3.0))
    return w ** (1.0 / 3.0)


def matching_conjugator(target: EigenTriple, source: Mat3, tol: float = 1e-6) -> Mat3:
    """Unimodular G sending the sorted eigenbasis of ``source`` onto that of ``target``.

    G source G^-1 is then diagonal against ``target``'s eigenvectors with the
    same eigenvalues. The determinant is fixed by a cube root: principal,
    except that a negative real ratio takes the real root.

    Raises:
        EigenvalueMismatch: the spectra differ by more than ``tol``.
        IllConditioned: an eigenvector matrix has condition above 1e8.
    """
    src = eigen3(source)
    scale = max(1.0, max(abs(x) for x in target.values))
    gap = max(abs(a - b) for a, b in zip(sort_eigenvalues(list(src.values)), target.values))
    if gap > tol * scale:
        raise EigenvalueMismatch(
            f"source spectrum {src.values} does not match target {target.values} (gap {gap:.3e})"
        )
    for name, e in (("source", src.vectors), ("target", target.vectors)):
        cond = np.linalg.cond(e)
        if cond > MAX_COND:
            raise IllConditioned(f"{name} eigenvector matrix has condition {cond:.3e}")

    ratio = complex(np.linalg.det(src.vectors) / np.linalg.det(target.vectors))
    c = _real_aware_cube_root(ratio)
    return c * target.vectors @ np.linalg.inv(src.vectors)
