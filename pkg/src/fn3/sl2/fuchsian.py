"""SL(2) pants, their images under phi_star and the Fuchsian shape formulas."""

from __future__ import annotations

import cmath
import logging
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from ..linalg.matrix import Mat3
from ..traces.coords import TraceCoordsY
from ..traces.lawton import quadratic_roots
from ..traces.shape import fricke_sl2
from ..utils.errors import DomainError
from .embedding import Mat2, inv2, phi_star

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class SL2Pair:
    A: Mat2
    B: Mat2
    tr_comm: complex
    reducible: bool

    @property
    def C(self) -> Mat2:
        return inv2(self.B @ self.A)


def sl2_pants_from_traces(x: complex, y: complex, z: complex) -> SL2Pair:
    """Normal form with tr A = x, tr B = y, tr AB = z.

    A = [[x, -1], [1, 0]] and B = [[0, zeta], [-1/zeta, y]] where zeta is the
    root of zeta^2 - z zeta + 1 of larger modulus (ties by argument), so
    that tr AB = zeta + 1/zeta = z.
    """
    x, y, z = complex(x), complex(y), complex(z)
    r1, r2 = quadratic_roots(z, 1.0)
    if abs(abs(r1) - abs(r2)) <= 1e-14 * max(1.0, abs(r1)):
        zeta = r1 if cmath.phase(r1) >= cmath.phase(r2) else r2
    else:
        zeta = r1 if abs(r1) > abs(r2) else r2
    a = np.array([[x, -1.0], [1.0, 0.0]], dtype=complex)
    b = np.array([[0.0, zeta], [-1.0 / zeta, y]], dtype=complex)
    comm = fricke_sl2(x, y, z).tr_comm
    return SL2Pair(A=a, B=b, tr_comm=comm, reducible=abs(comm - 2.0) <= 1e-9)


def gilman_maskit_sign(x: float, y: float, z: float) -> bool:
    """A hyperbolic SL(2, R) pants lifts with tr A tr B tr C < 0."""
    return x * y * z < 0


def fuchsian_pants(x: complex, y: complex, z: complex, negate: bool = False) -> Tuple[Mat3, Mat3, Mat3]:
    """phi_star image (A, B, C) of the SL(2) pants with traces (x, y, z).

    Negating the SL(2) traces keeps the SL(3) traces (x^2 - 1, ...) but moves
    sigma to the other root of the shape quadratic.
    """
    sign = -1.0 if negate else 1.0
    pair = sl2_pants_from_traces(sign * x, sign * y, sign * z)
    a, b = phi_star(pair.A), phi_star(pair.B)
    return a, b, phi_star(pair.C)


def _root_product(a: complex, b: complex, c: complex) -> complex:
    factors = [complex(a) + 1.0, complex(b) + 1.0, complex(c) + 1.0]
    for f in factors:
        if f.imag == 0.0 and f.real <= 0.0:
            raise DomainError(
                f"trace {f - 1.0} puts a+1 on the negative real axis; "
                "use continue_shape along a path"
            )
    out = 1.0 + 0j
    for f in factors:
        out *= cmath.sqrt(f)
    return out


@dataclass(frozen=True)
class FuchsianShape:
    sigma: complex
    tr_comm: complex


def fuchsian_shape(a: complex, b: complex, c: complex) -> FuchsianShape:
    """sigma on the positive square-root branch and the commutator trace there."""
    root = _root_product(a, b, c)
    base = complex(a) + complex(b) + complex(c) + 1.0
    return FuchsianShape(sigma=base + 2.0 * root, tr_comm=(base + root) ** 2 - 1.0)


def fuchsian_coords(a: complex, b: complex, c: complex) -> TraceCoordsY:
    """Self-paired pants coordinates (a, b, c, sigma, a, b, c, sigma) of a Fuchsian pants."""
    sigma = fuchsian_shape(a, b, c).sigma
    return TraceCoordsY(a, b, c, sigma, a, b, c, sigma)


def shape_quadratic_roots(a: complex, b: complex, c: complex) -> Tuple[complex, complex]:
    """Both roots a + b + c + 1 +- 2 sqrt((a+1)(b+1)(c+1))."""
    root = cmath.sqrt((complex(a) + 1.0) * (complex(b) + 1.0) * (complex(c) + 1.0))
    base = complex(a) + complex(b) + complex(c) + 1.0
    return base + 2.0 * root, base - 2.0 * root


def _in_fuchsian_range(v: Sequence[complex]) -> bool:
    return all(abs(complex(t).imag) <= 1e-12 and complex(t).real > 3.0 for t in v)


def continue_shape(
    path: Sequence[Sequence[complex]], max_depth: int = 40
) -> List[FuchsianShape]:
    """Continue the positive branch along a polyline of (a, b, c) triples.

    The first vertex must lie in the Fuchsian range (all traces real > 3).
    Each segment is subdivided until consecutive square roots move by less
    than a quarter of their modulus; the product (a+1)(b+1)(c+1) must stay
    away from zero along the way.
    """
    points = [tuple(complex(t) for t in p) for p in path]
    if not points:
        return []
    if not _in_fuchsian_range(points[0]):
        raise DomainError(f"continuation must start in the Fuchsian range, got {points[0]}")

    def product(p: Tuple[complex, ...]) -> complex:
        return (p[0] + 1.0) * (p[1] + 1.0) * (p[2] + 1.0)

    def shape(p: Tuple[complex, ...], root: complex) -> FuchsianShape:
        base = p[0] + p[1] + p[2] + 1.0
        return FuchsianShape(sigma=base + 2.0 * root, tr_comm=(base + root) ** 2 - 1.0)

    root = cmath.sqrt(product(points[0]))
    out = [shape(points[0], root)]
    for start, end in zip(points, points[1:]):
        t, step = 0.0, 1.0
        depth = 0
        while t < 1.0:
            s = min(1.0, t + step)
            p = tuple(u + s * (w - u) for u, w in zip(start, end))
            f = product(p)
            if abs(f) <= 1e-12 * max(1.0, abs(root) ** 2):
                raise DomainError(f"path meets the branch locus at {p}")
            cand = cmath.sqrt(f)
            if abs(cand + root) < abs(cand - root):
                cand = -cand
            if abs(cand - root) <= 0.25 * abs(root):
                root, t = cand, s
                step = min(1.0 - t, 2.0 * step) if t < 1.0 else step
                depth = max(0, depth - 1)
            else:
                step /= 2.0
                depth += 1
                if depth > max_depth:
                    raise DomainError(f"continuation stalled near {p}")
        out.append(shape(end, root))
        log.debug("continued shape to %s: sqrt = %s", end, root)
    return out
