from __future__ import annotations

import cmath
from dataclasses import dataclass
from enum import Enum
from typing import Tuple

from ..linalg.matrix import Mat3, adjugate, commutator, tr
from .coords import RootChoice, TraceCoordsY
from .lawton import lawton_sym


@dataclass(frozen=True)
class ShapePair:
    sigma_plus: complex
    sigma_minus: complex


def shape_invariants(a: Mat3, b: Mat3) -> ShapePair:
    """sigma_+ = tr(A^-1 B) - tr(A^-1) tr(B), sigma_- = tr(B^-1 A) - tr(B^-1) tr(A)."""
    a_inv, b_inv = adjugate(a), adjugate(b)
    return ShapePair(
        sigma_plus=tr(a_inv @ b) - tr(a_inv) * tr(b),
        sigma_minus=tr(b_inv @ a) - tr(b_inv) * tr(a),
    )


def pants_coords(a: Mat3, b: Mat3) -> TraceCoordsY:
    """Pants coordinates of (A, B, C = (BA)^-1), root choice read off tr[A, B]."""
    c = adjugate(b @ a)
    shape = shape_invariants(a, b)
    provisional = TraceCoordsY(
        y1=tr(a),
        y2=tr(b),
        y3=tr(c),
        y4=shape.sigma_plus,
        y5=tr(adjugate(a)),
        y6=tr(adjugate(b)),
        y7=tr(b @ a),
        y8=shape.sigma_minus,
    )
    return provisional.with_choice(commutator_branch(provisional, tr(commutator(a, b))))


def commutator_branch(y: TraceCoordsY, comm: complex) -> RootChoice:
    quad = lawton_sym(y)
    if quad.repeated():
        return RootChoice.PLUS
    return quad.branch_of(comm)


def t2(a: complex, b: complex, c: complex, t: complex) -> complex:
    return (
        t * t
        - 2.0 * (a + b + c + 1.0) * t
        - 4.0 * a * b * c
        + a * a
        + b * b
        + c * c
        - 2.0 * (a * b + b * c + a * c)
        - 2.0 * (a + b + c)
        - 3.0
    )


@dataclass(frozen=True)
class BranchFactorization:
    """Where sigma can sit for a self-paired triple with traces (a, b, c).

    The discriminant of the commutator quadratic factors as
    (t + a + b + c - 3)^2 T2(t); on either factor's roots the two commutator
    traces coincide and take the listed value.
    """

    linear_root: complex
    linear_commutator: complex
    t2_roots: Tuple[complex, complex]
    t2_commutators: Tuple[complex, complex]


def branch_factorization(a: complex, b: complex, c: complex) -> BranchFactorization:
    a, b, c = complex(a), complex(b), complex(c)
    linear_root = 3.0 - a - b - c
    linear_comm = (
        -a * b * c + a * a + b * b + c * c + a * b + b * c + a * c - 3.0 * (a + b + c) + 3.0
    )
    root = cmath.sqrt((a + 1.0) * (b + 1.0) * (c + 1.0))
    base = a + b + c + 1.0
    roots = (base + 2.0 * root, base - 2.0 * root)
    offset = (a + 1.0) * (b + 1.0) * (c + 1.0) - 1.0
    comms = tuple(base * t + offset for t in roots)
    return BranchFactorization(
        linear_root=linear_root,
        linear_commutator=linear_comm,
        t2_roots=roots,
        t2_commutators=(comms[0], comms[1]),
    )


def self_paired_tuple(a: complex, b: complex, c: complex, t: complex) -> TraceCoordsY:
    return TraceCoordsY(a, b, c, t, a, b, c, t)


class Reducibility(Enum):
    REDUCIBLE_BRANCH = "reducible_branch"
    IRREDUCIBLE_BRANCH = "irreducible_branch"
    NOT_SELF_PAIRED = "not_self_paired"


def self_pairing_residual(y: TraceCoordsY) -> float:
    return max(abs(y.y1 - y.y5), abs(y.y2 - y.y6), abs(y.y3 - y.y7), abs(y.y4 - y.y8))


def reducibility_test(y: TraceCoordsY, tol: float = 1e-8) -> Reducibility:
    if self_pairing_residual(y) > tol:
        return Reducibility.NOT_SELF_PAIRED
    if abs(y.y4 - (3.0 - y.y1 - y.y2 - y.y3)) <= tol:
        return Reducibility.REDUCIBLE_BRANCH
    return Reducibility.IRREDUCIBLE_BRANCH


@dataclass(frozen=True)
class FrickeTraces:
    tr_AinvB: complex
    tr_comm: complex


def fricke_sl2(x: complex, y: complex, z: complex) -> FrickeTraces:
    """SL(2) traces of A^-1 B and [A, B] from tr A = x, tr B = y, tr AB = z."""
    return FrickeTraces(
        tr_AinvB=x * y - z,
        tr_comm=x * x + y * y + z * z - 2.0 - x * y * z,
    )
