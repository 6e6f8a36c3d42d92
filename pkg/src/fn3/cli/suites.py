"""Reproducible verification suites behind ``fn3 verify``.

Every suite draws from its own generator seeded with (seed, suite index),
so a suite's numbers do not depend on which other suites ran. Residuals
are relative unless stated otherwise.
"""

from __future__ import annotations

import cmath
import itertools
import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Tuple

import numpy as np

from ..gluing.assembly import (
    assemble_from_pants,
    extract_fn,
    relation_residuals,
)
from ..gluing.centralizer import CentralizerParam
from ..gluing.decomposition import PantsDecomposition
from ..linalg.classify import (
    strongly_loxodromic_by_eigenvalues,
    trace_test,
)
from ..linalg.eigen import eigen3
from ..linalg.matrix import (
    adjugate,
    commutator,
    mat_norm,
    random_conjugator,
    random_unimodular,
    tr,
)
from ..pants.builder import PantsRep, build_pants, pants_from_matrices
from ..pants.families import build_reducible_pants, goldman_pants, goldman_rho
from ..real_forms.detection import SubgroupTag, acosta_scan, detect_pants
from ..real_forms.goldman import GoldmanParams, zhang_sigma
from ..real_forms.su21 import PPTraces, cross_ratios, pp_linear_system, su_loxodromic_sample
from ..sl2.embedding import j_orthogonality_defect, phi_star, phi_vector
from ..sl2.fuchsian import fuchsian_coords, fuchsian_pants, fuchsian_shape
from ..traces.coords import x_from_matrices, y_from_x
from ..traces.lawton import lawton_raw, lawton_sym
from ..traces.shape import pants_coords, self_paired_tuple, shape_invariants, t2
from ..utils.errors import Fn3Error, NoConvergence, UnknownSuite
from .config import RunConfig

log = logging.getLogger(__name__)

PHI_TOL = 1e-10
EXACT_TOL = 1e-9
SU_TRACE_TOL = 1e-10
FALBEL_TOL = 1e-8
PP_TOL = 1e-7
GOLDMAN_TRACE_TOL = 1e-10
MAX_LISTED_FAILURES = 20
NO_CONVERGENCE_RATE = 0.02

# Decade bins for residual histograms: [1e-18, 1e-17), ..., [1e-1, 1).
HIST_EDGES = np.arange(-18, 1)


def _rel(a: complex, b: complex) -> float:
    return abs(a - b) / (1.0 + abs(b))


def histogram(values: List[float]) -> Dict[str, int]:
    if not values:
        return {}
    logs = np.log10(np.maximum(np.asarray(values, dtype=float), 1e-18))
    counts, _ = np.histogram(np.clip(logs, -18, -1e-12), bins=HIST_EDGES)
    return {f"1e{int(lo)}": int(c) for lo, c in zip(HIST_EDGES[:-1], counts) if c}


@dataclass
class SuiteResult:
    name: str
    samples: int
    residuals: Dict[str, List[float]] = field(default_factory=dict)
    failures: List[str] = field(default_factory=list)
    failure_count: int = 0
    skipped: int = 0
    notes: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.failure_count == 0

    def check(self, metric: str, value: float, tol: float, label: str) -> bool:
        self.residuals.setdefault(metric, []).append(float(value))
        if value <= tol:
            return True
        self.failure_count += 1
        if len(self.failures) < MAX_LISTED_FAILURES:
            self.failures.append(f"{label}: {metric} = {value:.3e} > {tol:.1e}")
        return False

    def fail(self, message: str) -> None:
        self.failure_count += 1
        if len(self.failures) < MAX_LISTED_FAILURES:
            self.failures.append(message)

    def to_dict(self) -> Dict[str, object]:
        return {
            "name": self.name,
            "status": "PASS" if self.passed else "FAIL",
            "samples": self.samples,
            "skipped": self.skipped,
            "max_residual": {k: max(v) for k, v in sorted(self.residuals.items()) if v},
            "histogram": {k: histogram(v) for k, v in sorted(self.residuals.items())},
            "failure_count": self.failure_count,
            "failures": list(self.failures),
            "notes": list(self.notes),
        }


def _disk(rng: np.random.Generator, radius: float) -> complex:
    return cmath.rect(radius * math.sqrt(rng.uniform()), rng.uniform(-math.pi, math.pi))


def _random_sl2(rng: np.random.Generator) -> np.ndarray:
    while True:
        m = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        d = complex(np.linalg.det(m))
        if abs(d) > 1e-2:
            return m / cmath.sqrt(d)


def suite_lawton(cfg: RunConfig, rng: np.random.Generator) -> SuiteResult:
    """Lawton's S and P against the commutator traces of random pairs."""
    n = cfg.samples("lawton")
    out = SuiteResult("lawton", n)
    tol = cfg.tol("residual")
    for i in range(n):
        a, b = random_unimodular(rng), random_unimodular(rng)
        c1, c2 = tr(commutator(a, b)), tr(commutator(b, a))
        x = x_from_matrices(a, b)
        s0, p0 = lawton_raw(x)
        quad = lawton_sym(y_from_x(x))
        out.check("S0", _rel(s0, c1 + c2), tol, f"pair {i}")
        out.check("P0", _rel(p0, c1 * c2), tol, f"pair {i}")
        out.check("S", _rel(quad.S, c1 + c2), tol, f"pair {i}")
        out.check("P", _rel(quad.P, c1 * c2), tol, f"pair {i}")
    return out


def suite_factorization(cfg: RunConfig, rng: np.random.Generator) -> SuiteResult:
    """S^2 - 4P = (t + a + b + c - 3)^2 T2(t) on self-paired tuples."""
    n = cfg.samples("factorization")
    out = SuiteResult("factorization", n)
    tol = cfg.tol("residual")
    for i in range(n):
        a, b, c, t = (_disk(rng, 5.0) for _ in range(4))
        quad = lawton_sym(self_paired_tuple(a, b, c, t))
        rhs = (t + a + b + c - 3.0) ** 2 * t2(a, b, c, t)
        out.check("factorization", abs(quad.discriminant - rhs) / (1.0 + abs(quad.discriminant)), tol, f"tuple {i}")
    return out


def _loxodromic(rng: np.random.Generator) -> np.ndarray:
    """Conjugated diagonal with consecutive eigenvalue-modulus ratios in [1.2, 5]."""
    gap1, gap2 = rng.uniform(math.log(1.2), math.log(5.0), size=2)
    top = (2.0 * gap1 + gap2) / 3.0
    mods = [top, top - gap1, top - gap1 - gap2]
    phases = rng.uniform(-math.pi, math.pi, size=2)
    values = [cmath.rect(math.exp(mods[0]), phases[0]), cmath.rect(math.exp(mods[1]), phases[1])]
    values.append(1.0 / (values[0] * values[1]))
    g = random_conjugator(rng, max_cond=50.0)
    return g @ np.diag(values) @ adjugate(g)


def suite_pants(cfg: RunConfig, rng: np.random.Generator) -> SuiteResult:
    """build_pants followed by pants_coords gives the coordinates back."""
    n = cfg.samples("pants")
    out = SuiteResult("pants", n)
    tol = cfg.tol("roundtrip")
    stalled = 0
    for i in range(n):
        while True:
            a, b = _loxodromic(rng), _loxodromic(rng)
            if strongly_loxodromic_by_eigenvalues(adjugate(b @ a), gap=1e-3):
                break
        y = pants_coords(a, b)
        try:
            rep, _ = build_pants(y, seed=int(rng.integers(2**31)))
        except NoConvergence as err:
            stalled += 1
            log.info("pants %d: %s", i, err)
            continue
        except Fn3Error as err:
            out.fail(f"sample {i}: {type(err).__name__}: {err}")
            continue
        out.check("roundtrip", rep.coords.distance(y), tol, f"sample {i}")
        if rep.coords.root_choice is not y.root_choice:
            out.fail(f"sample {i}: root choice {rep.coords.root_choice.value} != {y.root_choice.value}")
    out.notes.append(f"NoConvergence on {stalled} of {n}")
    if stalled > NO_CONVERGENCE_RATE * n:
        out.fail(f"NoConvergence rate {stalled / n:.1%} above {NO_CONVERGENCE_RATE:.0%}")
    return out


def suite_phi(cfg: RunConfig, rng: np.random.Generator) -> SuiteResult:
    """Homomorphism, J-orthogonality, traces and eigenvectors of phi_star."""
    n = cfg.samples("phi")
    out = SuiteResult("phi", n)
    for i in range(n):
        m, k = _random_sl2(rng), _random_sl2(rng)
        pm, pk = phi_star(m), phi_star(k)
        scale = 1.0 + mat_norm(pm) * mat_norm(pk)
        label = f"sample {i}"
        out.check("homomorphism", mat_norm(phi_star(m @ k) - pm @ pk) / scale, PHI_TOL, label)
        out.check("j_orthogonal", j_orthogonality_defect(pm) / (1.0 + mat_norm(pm) ** 2), PHI_TOL, label)
        t = complex(np.trace(m))
        out.check("trace", abs(tr(pm) - (t * t - 1.0)) / (1.0 + abs(t) ** 2), PHI_TOL, label)
        out.check("inverse_trace", abs(tr(adjugate(pm)) - tr(pm)) / (1.0 + mat_norm(pm) ** 2), PHI_TOL, label)
        values, vectors = np.linalg.eig(m)
        for mu, w in zip(values, vectors.T):
            v = phi_vector(w)
            out.check(
                "eigenvector",
                float(np.linalg.norm(pm @ v - mu * mu * v)) / (1.0 + mat_norm(pm) * np.linalg.norm(v)),
                PHI_TOL,
                label,
            )
    return out


def suite_fuchsian(cfg: RunConfig, rng: np.random.Generator) -> SuiteResult:
    """Closed-form shape on Fuchsian pants and the (8, 8, 8) instance."""
    n = cfg.samples("fuchsian")
    out = SuiteResult("fuchsian", n)
    tol = cfg.tol("self_pairing")
    for i in range(n):
        x, y, z = rng.uniform(-6.0, -2.2, size=3)
        a, b, _ = fuchsian_pants(x, y, z)
        shape = fuchsian_shape(x * x - 1.0, y * y - 1.0, z * z - 1.0)
        sp = shape_invariants(a, b)
        out.check("sigma", _rel(sp.sigma_plus, shape.sigma), tol, f"triple {i}")
        out.check("tr_comm", _rel(tr(commutator(a, b)), shape.tr_comm), tol, f"triple {i}")

    concrete = fuchsian_shape(8.0, 8.0, 8.0)
    out.check("concrete_sigma", abs(concrete.sigma - 79.0), EXACT_TOL, "(8, 8, 8)")
    out.check("concrete_tr_comm", abs(concrete.tr_comm - 2703.0), EXACT_TOL, "(8, 8, 8)")
    return out


def suite_reducible(cfg: RunConfig, rng: np.random.Generator) -> SuiteResult:
    """Block upper-triangular pants sit on the linear branch."""
    n = cfg.samples("reducible")
    out = SuiteResult("reducible", n)
    tol = cfg.tol("residual")
    for i in range(n):
        traces = tuple(_disk(rng, 3.0) + 3.0 for _ in range(3))
        offsets = ((_disk(rng, 2.0), _disk(rng, 2.0)), (_disk(rng, 2.0), _disk(rng, 2.0)))
        rep = build_reducible_pants(traces, offsets)
        y = rep.coords
        linear = 3.0 - y.y1 - y.y2 - y.y3
        quad = lawton_sym(y)
        out.check("sigma_plus", _rel(y.y4, linear), EXACT_TOL, f"triple {i}")
        out.check("sigma_minus", _rel(y.y8, linear), EXACT_TOL, f"triple {i}")
        out.check("discriminant", abs(quad.discriminant) / (1.0 + abs(quad.S) ** 2), tol, f"triple {i}")
        if not detect_pants(y, tol=cfg.tol("detect")).passes(SubgroupTag.REDUCIBLE):
            out.fail(f"triple {i}: not detected as reducible")
    return out


def suite_su21(cfg: RunConfig, rng: np.random.Generator) -> SuiteResult:
    """SU(J) pairs: trace pairing, Falbel identities, the trace linear system."""
    n = cfg.samples("su21")
    out = SuiteResult("su21", n)
    agree = 0
    for i in range(n):
        a, _, _ = su_loxodromic_sample(rng)
        b, _, _ = su_loxodromic_sample(rng)
        label = f"pair {i}"
        for name, m in (("A", a), ("B", b), ("BA", b @ a)):
            t = tr(m)
            out.check("conjugate_trace", _rel(tr(adjugate(m)), t.conjugate()), SU_TRACE_TOL, f"{label} {name}")
        try:
            ratios = cross_ratios(a, b)
            x1, x2 = pp_linear_system(eigen3(a), eigen3(b), PPTraces.from_matrices(a, b))
        except Fn3Error as err:
            out.fail(f"{label}: {type(err).__name__}: {err}")
            continue
        scale = 1.0 + abs(ratios.X1) ** 2 + abs(ratios.X2) ** 2
        for k, value in enumerate(ratios.falbel_residuals(), start=1):
            out.check(f"falbel_{k}", abs(value) / scale, FALBEL_TOL, label)
        out.check("X1", _rel(x1, ratios.X1), PP_TOL, label)
        out.check("X2", _rel(x2, ratios.X2), PP_TOL, label)
        if np.sign(ratios.X3.imag) == -np.sign(tr(commutator(a, b)).imag):
            agree += 1
    out.notes.append(f"sign(Im X3) = -sign(Im tr[A,B]) on {agree} of {n} pairs")
    return out


def _goldman_params(rng: np.random.Generator) -> GoldmanParams:
    lam, tau = [], []
    for _ in range(3):
        lo = rng.uniform(0.1, 0.9)
        lower, upper = 2.0 / math.sqrt(lo), lo + lo**-2
        lam.append(lo)
        tau.append(lower + (upper - lower) * rng.uniform(0.05, 0.95))
    return GoldmanParams(
        lam=(lam[0], lam[1], lam[2]),
        tau=(tau[0], tau[1], tau[2]),
        s=rng.uniform(0.2, 3.0),
        r=rng.uniform(0.2, 3.0),
    )


def suite_goldman(cfg: RunConfig, rng: np.random.Generator) -> SuiteResult:
    """Goldman's pants: relation, positive spectra, boundary traces, shape."""
    n = cfg.samples("goldman")
    out = SuiteResult("goldman", n)
    discrepant = 0
    for i in range(n):
        p = _goldman_params(rng)
        label = f"params {i}"
        try:
            rep = goldman_pants(p)
        except Fn3Error as err:
            out.fail(f"{label}: {type(err).__name__}: {err}")
            continue
        rho = goldman_rho(p)
        if rho.discrepancy > 1e-8:
            discrepant += 1
        a, b, c = rep.generators()
        out.check(
            "relation",
            rep.relation_residual() / max(1.0, mat_norm(a) * mat_norm(b) * mat_norm(c)),
            EXACT_TOL,
            label,
        )
        for name, m, lam, tau in zip("ABC", (a, b, c), p.lam, p.tau):
            values = np.roots([1.0, -tr(m), tr(adjugate(m)), -1.0])
            if np.any(np.abs(values.imag) > 1e-6 * np.abs(values)) or np.any(values.real <= 0):
                out.fail(f"{label}: {name} has spectrum {values}")
            out.check("boundary_trace", _rel(tr(m), lam + tau), GOLDMAN_TRACE_TOL, f"{label} {name}")
            out.check("boundary_trace_inv", _rel(tr(adjugate(m)), 1.0 / lam + lam * tau), GOLDMAN_TRACE_TOL, f"{label} {name}")
        sigma = zhang_sigma(p, rho)
        direct = shape_invariants(a, b)
        out.check("sigma_plus", _rel(sigma.sigma_plus, direct.sigma_plus), cfg.tol("residual"), label)
        out.check("sigma_minus", _rel(sigma.sigma_minus, direct.sigma_minus), cfg.tol("residual"), label)
    out.notes.append(f"reference rho_C replaced by the relation value on {discrepant} of {n}")
    return out


GLUE_U = (0j, 0.7 + 0j, 0.3 + 0.5j)
GLUE_V = (0j, 0.1 - 0.2j)


def fuchsian_rep(x: float, y: float, z: float) -> PantsRep:
    a, b, _ = fuchsian_pants(x, y, z)
    return pants_from_matrices(a, b, {"constructor": "fuchsian_pants"})


def suite_surface(cfg: RunConfig, rng: np.random.Generator) -> SuiteResult:
    """Genus two from two Fuchsian pants under sampled glue choices."""
    n = cfg.samples("surface")
    out = SuiteResult("surface", n)
    choices = list(itertools.product(GLUE_U, GLUE_V))
    for i in range(n):
        x, y, z = rng.uniform(-3.5, -2.5, size=3)
        reps = [fuchsian_rep(x, y, z)] * 2
        base = extract_fn(assemble_from_pants(PantsDecomposition.doubled(), reps))
        glue = [CentralizerParam(*choices[int(k)]) for k in rng.integers(len(choices), size=3)]
        label = f"draw {i}"
        try:
            rep = assemble_from_pants(PantsDecomposition.doubled(glue), reps, relation_tol=None)
            rerooted = assemble_from_pants(PantsDecomposition.doubled(glue), reps, root=1, relation_tol=None)
        except Fn3Error as err:
            out.fail(f"{label}: {type(err).__name__}: {err}")
            continue
        out.check("relation", max(relation_residuals(rep).values()), cfg.tol("relation"), label)
        record = extract_fn(rep)
        worst = max(g.distance(p) for g, p in zip(record.glue, glue))
        out.check("roundtrip", worst, cfg.tol("roundtrip"), label)
        out.check("reroot", record.distance(extract_fn(rerooted)), cfg.tol("roundtrip"), label)
        drift = max(
            max(abs(t1 - t2), abs(s1 - s2)) / (1.0 + abs(t1))
            for (t1, s1), (t2, s2) in zip(record.boundaries, base.boundaries)
        )
        out.check("boundary_traces", drift, EXACT_TOL, label)
    return out


DETECTION_FAMILIES: Dict[str, Tuple[CentralizerParam, Tuple[str, ...], Tuple[str, ...]]] = {
    "fuchsian": (CentralizerParam(), ("sl3r", "su21", "so3c"), ()),
    "turn": (CentralizerParam(0j, 0.3j), ("su21",), ("sl3r",)),
    "bend": (CentralizerParam(0.4j, 0j), ("so3c",), ("su21",)),
    "generic": (CentralizerParam(0.2 + 0.1j, 0.3 + 0.2j), (), ("sl3r", "su21", "so3c")),
}


def suite_detection(cfg: RunConfig, rng: np.random.Generator) -> SuiteResult:
    """Word scans over deformations of a Fuchsian genus-two surface."""
    n_words = cfg.samples("detection")
    out = SuiteResult("detection", n_words)
    reps = [fuchsian_rep(-3.0, -3.0, -3.0)] * 2
    verdict = detect_pants(fuchsian_coords(8.0, 8.0, 8.0), tol=cfg.tol("detect"))
    for tag in (SubgroupTag.SO3C, SubgroupTag.SL3R, SubgroupTag.SU21):
        if not verdict.passes(tag):
            out.fail(f"Fuchsian pants coordinates fail {tag.value}")
    for name, (glue, must, must_not) in DETECTION_FAMILIES.items():
        rep = assemble_from_pants(PantsDecomposition.doubled([glue] * 3), reps)
        scan = acosta_scan(rep, n_words=n_words, seed=int(rng.integers(2**31)), tol=cfg.tol("scan"))
        for metric, value in scan.evidence.items():
            out.residuals.setdefault(f"{name}.{metric}", []).append(value)
        for tag in must:
            if not scan.passes(SubgroupTag(tag)):
                out.fail(f"{name}: expected {tag}, evidence {scan.evidence}")
        for tag in must_not:
            if scan.passes(SubgroupTag(tag)):
                out.fail(f"{name}: unexpected {tag}, evidence {scan.evidence}")
        out.notes.append(f"{name}: {scan.tag.value} ({', '.join(t.value for t in scan.tags)})")
    return out


def _diagonalizable(rng: np.random.Generator, kind: int) -> np.ndarray:
    if kind == 1:
        m, _, _ = su_loxodromic_sample(rng)
        return m
    g = random_conjugator(rng, max_cond=10.0)
    if kind == 2:
        # unit-modulus spectrum, regular elliptic
        alpha, beta = rng.uniform(-math.pi, math.pi, size=2)
        values = [cmath.exp(1j * alpha), cmath.exp(1j * beta), cmath.exp(-1j * (alpha + beta))]
    else:
        values = [_disk(rng, 3.0) + 0.2 for _ in range(2)]
        values.append(1.0 / (values[0] * values[1]))
    return g @ np.diag(values) @ adjugate(g)


def suite_classification(cfg: RunConfig, rng: np.random.Generator) -> SuiteResult:
    """Trace test against the eigenvalue-moduli oracle."""
    n = cfg.samples("classification")
    out = SuiteResult("classification", n)
    for i in range(n):
        m = _diagonalizable(rng, i % 3)
        test = trace_test(tr(m), tr(adjugate(m)))
        if test.indeterminate:
            out.skipped += 1
            continue
        oracle = strongly_loxodromic_by_eigenvalues(m, gap=1e-6)
        if test.strongly_loxodromic != oracle:
            out.fail(f"sample {i}: trace test {test.strongly_loxodromic}, oracle {oracle}, F = {test.F:.3e}")
    return out


SuiteFn = Callable[[RunConfig, np.random.Generator], SuiteResult]

SUITES: Dict[str, SuiteFn] = {
    "lawton": suite_lawton,
    "factorization": suite_factorization,
    "pants": suite_pants,
    "phi": suite_phi,
    "fuchsian": suite_fuchsian,
    "reducible": suite_reducible,
    "su21": suite_su21,
    "goldman": suite_goldman,
    "surface": suite_surface,
    "detection": suite_detection,
    "classification": suite_classification,
}


def run_suite(name: str, cfg: RunConfig) -> SuiteResult:
    if name not in SUITES:
        raise UnknownSuite(f"unknown suite {name!r}; known: {', '.join(SUITES)}, all")
    index = list(SUITES).index(name)
    rng = np.random.default_rng([cfg.seed, index])
    log.info("running suite %s (seed %d)", name, cfg.seed)
    result = SUITES[name](cfg, rng)
    log.info("suite %s: %s", name, "PASS" if result.passed else "FAIL")
    return result


def run_suites(name: str, cfg: RunConfig) -> List[SuiteResult]:
    names = list(SUITES) if name == "all" else [name]
    return [run_suite(n, cfg) for n in names]
