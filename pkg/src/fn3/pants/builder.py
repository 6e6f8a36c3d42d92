"""Explicit pants triples (A, B, C) with CBA = I from pants coordinates.

A is put in diagonal form from the boundary traces (y1, y5); B is then
pinned down by seven trace conditions on a torus slice of the conjugacy
action. Two closed-form seeds per slice come from eliminating the
diagonal of B and its principal minors; damped Newton polishes them and
takes over from random starts when the seeds fail.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterator, List, Optional, Tuple

import numpy as np

from ..linalg.classify import strongly_loxodromic_by_trace
from ..linalg.eigen import cubic_roots, eigen3, sort_eigenvalues
from ..linalg.matrix import Mat3, adjugate, commutator, diag3, mat_norm, normalize_det, tr
from ..traces.coords import RootChoice, TraceCoordsY
from ..traces.lawton import CommutatorQuadratic, lawton_sym
from ..traces.shape import pants_coords
from ..utils.errors import (
    BoundaryNotLoxodromic,
    GaugeDegenerate,
    NoConvergence,
    RepeatedEigenvalues,
    RootChoiceUnrealizable,
)
from .newton import damped_newton

log = logging.getLogger(__name__)

RESTART_BUDGET = 64
IRREDUCIBLE_MARGIN = 1e-6
NEWTON_TOL = 1e-12
ACCEPT_TOL = 1e-9
COORDS_TOL = 1e-7
# Newton steps taken from every start, converged or not.
POLISH_STEPS = 2


class Gauge(Enum):
    """Torus slice: two off-diagonal entries of B fixed to 1."""

    PRIMARY = "b12=b23=1"
    ALTERNATE = "b13=b21=1"

    @property
    def fixed(self) -> Tuple[Tuple[int, int], Tuple[int, int]]:
        if self is Gauge.PRIMARY:
            return ((0, 1), (1, 2))
        return ((0, 2), (1, 0))

    @property
    def free(self) -> List[int]:
        pinned = {3 * i + j for i, j in self.fixed}
        return [k for k in range(9) if k not in pinned]


@dataclass(frozen=True, eq=False)
class PantsRep:
    A: Mat3
    B: Mat3
    C: Mat3
    coords: TraceCoordsY
    irreducible_flag: bool
    irreducibility_margin: float
    provenance: Dict[str, str] = field(default_factory=dict)

    def relation_residual(self) -> float:
        return mat_norm(self.C @ self.B @ self.A - np.eye(3))

    def generators(self) -> Tuple[Mat3, Mat3, Mat3]:
        return self.A, self.B, self.C

    def conjugated(self, g: Mat3) -> "PantsRep":
        g_inv = adjugate(g)
        return PantsRep(
            A=g @ self.A @ g_inv,
            B=g @ self.B @ g_inv,
            C=g @ self.C @ g_inv,
            coords=self.coords,
            irreducible_flag=self.irreducible_flag,
            irreducibility_margin=self.irreducibility_margin,
            provenance=dict(self.provenance),
        )


@dataclass(frozen=True)
class SolverReport:
    """Outcome of build_pants; ``residual`` is |F| relative to 1 + max|y|."""

    residual: float
    iterations: int
    restarts: int
    gauge: str
    start: str


def irreducibility_margin(a: Mat3, b: Mat3) -> float:
    """Smallest distance of B from fixing an eigenline of A or of A^T.

    A pair is reducible exactly when B preserves an eigenline of A (a
    common invariant line) or B^T preserves an eigenline of A^T (a common
    invariant plane). Zero means reducible.
    """
    try:
        lines = eigen3(a).vectors
        planes = eigen3(a.T).vectors
    except RepeatedEigenvalues:
        log.debug("irreducibility margin undefined for repeated eigenvalues of A")
        return 0.0
    scale = max(mat_norm(b), 1e-300)
    worst = np.inf
    for m, vectors in ((b, lines), (b.T, planes)):
        for k in range(3):
            v = vectors[:, k]
            image = m @ v
            off = image - (v.conj() @ image) * v
            worst = min(worst, float(np.linalg.norm(off)) / scale)
    return float(worst)


def pants_from_matrices(
    a: Mat3,
    b: Mat3,
    provenance: Optional[Dict[str, str]] = None,
    root_choice: Optional[RootChoice] = None,
) -> PantsRep:
    """Record for the triple (A, B, (BA)^-1)."""
    c = adjugate(b @ a)
    coords = pants_coords(a, b)
    if root_choice is not None and lawton_sym(coords).repeated():
        coords = coords.with_choice(root_choice)
    margin = irreducibility_margin(a, b)
    return PantsRep(
        A=a,
        B=b,
        C=c,
        coords=coords,
        irreducible_flag=margin > IRREDUCIBLE_MARGIN,
        irreducibility_margin=margin,
        provenance=dict(provenance or {}),
    )


def _targets(y: TraceCoordsY) -> np.ndarray:
    return np.array(
        [1.0, y.y2, y.y7, y.y4 + y.y2 * y.y5, y.y6, y.y3, y.y8 + y.y6 * y.y1],
        dtype=complex,
    )


def _principal_minors(b: Mat3) -> np.ndarray:
    return np.array(
        [
            b[1, 1] * b[2, 2] - b[1, 2] * b[2, 1],
            b[0, 0] * b[2, 2] - b[0, 2] * b[2, 0],
            b[0, 0] * b[1, 1] - b[0, 1] * b[1, 0],
        ]
    )


def _minor_gradients(b: Mat3) -> List[np.ndarray]:
    grads = []
    for i in range(3):
        j, k = [t for t in range(3) if t != i]
        g = np.zeros((3, 3), dtype=complex)
        g[j, j], g[k, k] = b[k, k], b[j, j]
        g[j, k], g[k, j] = -b[k, j], -b[j, k]
        grads.append(g)
    return grads


class _SliceSystem:
    """The seven trace conditions on B for diagonal A, restricted to a gauge.

    With ``commutator`` set, tr[A, B] = commutator is appended as an eighth
    condition. On the branch locus tr[A, B] moves like the square root of the
    other seven residuals.
    """

    def __init__(
        self,
        eigenvalues: Tuple[complex, ...],
        targets: np.ndarray,
        gauge: Gauge,
        commutator: Optional[complex] = None,
    ):
        self.a = np.asarray(eigenvalues, dtype=complex)
        self.targets = targets
        self.gauge = gauge
        self.commutator = commutator

    def matrix(self, z: np.ndarray) -> Mat3:
        flat = np.ones(9, dtype=complex)
        flat[self.gauge.free] = z
        return flat.reshape(3, 3)

    def unknowns(self, b: Mat3) -> np.ndarray:
        return np.asarray(b, dtype=complex).reshape(9)[self.gauge.free]

    def residual(self, z: np.ndarray) -> np.ndarray:
        b = self.matrix(z)
        d = np.diag(b)
        m = _principal_minors(b)
        values = np.array(
            [
                np.linalg.det(b),
                d.sum(),
                (self.a * d).sum(),
                (d / self.a).sum(),
                m.sum(),
                (m / self.a).sum(),
                (self.a * m).sum(),
            ]
        )
        out = values - self.targets
        if self.commutator is not None:
            a, a_inv, b_inv = np.diag(self.a), np.diag(1.0 / self.a), np.linalg.inv(b)
            out = np.append(out, tr(a @ b @ a_inv @ b_inv) - self.commutator)
        return out

    def jacobian(self, z: np.ndarray) -> np.ndarray:
        b = self.matrix(z)
        mg = _minor_gradients(b)
        rows = [
            adjugate(b).T,
            np.diag(np.ones(3, dtype=complex)),
            np.diag(self.a),
            np.diag(1.0 / self.a),
            sum(mg),
            sum(g / ai for g, ai in zip(mg, self.a)),
            sum(g * ai for g, ai in zip(mg, self.a)),
        ]
        if self.commutator is not None:
            a, a_inv, b_inv = np.diag(self.a), np.diag(1.0 / self.a), np.linalg.inv(b)
            rows.append((a_inv @ b_inv @ a - b_inv @ a @ b @ a_inv @ b_inv).T)
        full = np.array([r.reshape(9) for r in rows])
        return full[:, self.gauge.free]


def _diagonal_and_minors(a: np.ndarray, targets: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    ones = np.ones(3, dtype=complex)
    d = np.linalg.solve(np.array([ones, a, 1.0 / a]), targets[1:4])
    m = np.linalg.solve(np.array([ones, 1.0 / a, a]), targets[4:7])
    return d, m


def _quadratic_solutions(qa: complex, qb: complex, qc: complex, scale: float) -> List[complex]:
    tiny = 1e-10 * scale
    if abs(qa) <= tiny and abs(qb) <= tiny and abs(qc) <= tiny:
        # Every value solves the determinant condition.
        return [1.0 + 0j]
    if abs(qa) <= tiny:
        return [] if abs(qb) <= tiny else [-qc / qb]
    disc = np.sqrt(complex(qb * qb - 4.0 * qa * qc))
    return [(-qb + disc) / (2.0 * qa), (-qb - disc) / (2.0 * qa)]


def elimination_seeds(
    eigenvalues: Tuple[complex, ...], targets: np.ndarray, gauge: Gauge
) -> List[Mat3]:
    """Closed-form candidates for B on ``gauge``.

    With A diagonal the diagonal d of B and its principal minors M solve two
    Vandermonde-type systems; on either slice one off-diagonal unknown x
    then satisfies a quadratic from det B = 1.

    Raises:
        GaugeDegenerate: no candidate keeps the slice entries finite.
    """
    a = np.asarray(eigenvalues, dtype=complex)
    d, m = _diagonal_and_minors(a, targets)
    scale = 1.0 + float(np.max(np.abs(np.concatenate([d, m]))))
    seeds = []
    if gauge is Gauge.PRIMARY:
        b32 = d[1] * d[2] - m[0]
        b21 = d[0] * d[1] - m[2]
        k = d[0] * d[2] - m[1]
        qa = b21 * b32
        qb = d[0] * m[0] - b21 * d[2] - d[1] * k - 1.0
        for x in _quadratic_solutions(qa, qb, k, scale**2):
            if abs(x) <= 1e-12 * scale:
                continue
            seeds.append(
                np.array([[d[0], 1.0, x], [b21, d[1], 1.0], [k / x, b32, d[2]]], dtype=complex)
            )
    else:
        b12 = d[0] * d[1] - m[2]
        b31 = d[0] * d[2] - m[1]
        k = d[1] * d[2] - m[0]
        qa = b12 * b31
        qb = d[0] * m[0] - b12 * d[2] - d[1] * b31 - 1.0
        for x in _quadratic_solutions(qa, qb, k, scale**2):
            if abs(x) <= 1e-12 * scale:
                continue
            seeds.append(
                np.array([[d[0], b12, 1.0], [1.0, d[1], x], [b31, k / x, d[2]]], dtype=complex)
            )
    seeds = [s for s in seeds if np.all(np.isfinite(s))]
    if not seeds:
        raise GaugeDegenerate(f"slice {gauge.value} admits no finite elimination seed")
    return seeds


def _starts(
    eigenvalues: Tuple[complex, ...], targets: np.ndarray, seed: int
) -> Iterator[Tuple[str, Gauge, Optional[Mat3], Optional[np.random.Generator]]]:
    for gauge in Gauge:
        try:
            seeds = elimination_seeds(eigenvalues, targets, gauge)
        except GaugeDegenerate as err:
            log.debug("%s", err)
            continue
        for i, b in enumerate(seeds):
            yield f"elimination:{gauge.value}:{i}", gauge, b, None
    children = np.random.SeedSequence(seed).spawn(RESTART_BUDGET)
    for i, child in enumerate(children):
        gauge = Gauge.PRIMARY if i % 2 == 0 else Gauge.ALTERNATE
        yield f"random:{i}", gauge, None, np.random.default_rng(child)


def _degenerate(eigenvalues: Tuple[complex, ...], targets: np.ndarray, gauge: Gauge) -> bool:
    try:
        elimination_seeds(eigenvalues, targets, gauge)
    except GaugeDegenerate:
        return True
    return False


def _pin_commutator(system: _SliceSystem, target: complex, z: np.ndarray, scale: float) -> np.ndarray:
    """Newton on the seven traces plus tr[A, B] = target, starting from a solution ``z``.

    The polished point is kept only if it lowers the combined residual and
    still meets the trace conditions.
    """
    pinned = _SliceSystem(system.a, system.targets, system.gauge, commutator=target)
    before = float(np.linalg.norm(pinned.residual(z)))
    result = damped_newton(
        pinned.residual, pinned.jacobian, z, NEWTON_TOL * (scale + abs(target)), min_iter=POLISH_STEPS
    )
    traces = float(np.linalg.norm(system.residual(result.z))) / scale
    if np.isfinite(result.residual) and result.residual < before and traces <= ACCEPT_TOL:
        log.debug("pinned tr[A, B]: residual %.3e -> %.3e", before, result.residual)
        return result.z
    return z


def boundary_eigenvalues(y1: complex, y5: complex) -> Tuple[complex, complex, complex]:
    """Roots of x^3 - y1 x^2 + y5 x - 1 in descending modulus."""
    values = sort_eigenvalues(cubic_roots(complex(y1), complex(y5)))
    return values[0], values[1], values[2]


def build_pants(y: TraceCoordsY, seed: int = 0) -> Tuple[PantsRep, SolverReport]:
    """Realize ``y`` by an explicit triple with A diagonal.

    Raises:
        BoundaryNotLoxodromic: (y1, y5) is not a strongly loxodromic pair.
        RootChoiceUnrealizable: every converged solution carries the other
            commutator root.
        NoConvergence: no start converged within the restart budget.
        GaugeDegenerate: neither slice produced a usable start or solution.
    """
    if not strongly_loxodromic_by_trace(y.y1, y.y5):
        raise BoundaryNotLoxodromic(
            f"boundary traces ({y.y1}, {y.y5}) are not strongly loxodromic"
        )
    eigenvalues = boundary_eigenvalues(y.y1, y.y5)
    a = diag3(eigenvalues)
    targets = _targets(y)
    scale = 1.0 + max(abs(v) for v in y.as_tuple())
    quad: CommutatorQuadratic = lawton_sym(y)
    repeated = quad.repeated()

    seen: List[RootChoice] = []
    attempts = 0
    for label, gauge, b0, rng in _starts(eigenvalues, targets, seed):
        attempts += 1
        system = _SliceSystem(eigenvalues, targets, gauge)
        if b0 is None:
            z0 = np.sqrt(scale) * (rng.normal(size=7) + 1j * rng.normal(size=7))
        else:
            z0 = system.unknowns(b0)
        result = damped_newton(
            system.residual, system.jacobian, z0, NEWTON_TOL * scale, min_iter=POLISH_STEPS
        )
        rel = result.residual / scale
        if not np.isfinite(rel) or rel > ACCEPT_TOL:
            log.debug("start %s: no convergence (residual %.3e)", label, rel)
            continue

        z = result.z
        if repeated:
            z = _pin_commutator(system, quad.root(y.root_choice), z, scale)
            rel = float(np.linalg.norm(system.residual(z))) / scale
        b = normalize_det(system.matrix(z))
        rep = pants_from_matrices(
            a, b, {"constructor": "build_pants", "gauge": gauge.value, "start": label}, y.root_choice
        )
        if rep.coords.distance(y) > COORDS_TOL:
            log.debug("start %s: converged off the target (distance %.3e)", label, rep.coords.distance(y))
            continue
        choice = quad.branch_of(tr(commutator(a, b)))
        if not repeated and choice is not y.root_choice:
            seen.append(choice)
            log.debug("start %s: landed on the %s root", label, choice.value)
            continue

        report = SolverReport(
            residual=rel,
            iterations=result.iterations,
            restarts=attempts - 1,
            gauge=gauge.value,
            start=label,
        )
        log.info(
            "built pants from %s after %d restarts (residual %.2e, margin %.2e)",
            label,
            report.restarts,
            rel,
            rep.irreducibility_margin,
        )
        return rep, report

    if seen:
        raise RootChoiceUnrealizable(
            f"all {len(seen)} converged solutions realise the {seen[0].value} root, "
            f"not the requested {y.root_choice.value} root"
        )
    if all(_degenerate(eigenvalues, targets, gauge) for gauge in Gauge):
        raise GaugeDegenerate(f"no slice produced a solution after {attempts} starts")
    raise NoConvergence(f"no convergence after {attempts} starts")
