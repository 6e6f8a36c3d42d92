"""Which real form a pants or a surface representation lives in.

Pants are judged from their coordinates alone:

    SO(3,C)    self-paired traces, sigma_+ = sigma_-, a double commutator
               root and sigma on the T2 branch (not the linear one)
    reducible  self-paired with sigma = 3 - a - b - c
    SL(3,R)    all eight coordinates real
    SU(2,1)    y5..y8 are the conjugates of y1..y4

Surface representations are scanned on random words.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Tuple

import numpy as np

from ..gluing import assembly
from ..linalg.classify import classify
from ..linalg.matrix import adjugate, mat_norm, tr
from ..traces.coords import TraceCoordsY
from ..traces.lawton import lawton_sym
from ..traces.shape import self_pairing_residual, t2
from ..utils.errors import Fn3Error

log = logging.getLogger(__name__)

# Generators are only J-unitary up to eigen-solver accuracy and that drift
# compounds along a word.
SCAN_TOL = 1e-5


class SubgroupTag(Enum):
    SO3C = "so3c"
    REDUCIBLE = "reducible"
    SL3R = "sl3r"
    SU21 = "su21"
    GENERIC = "generic"


@dataclass(frozen=True)
class SubgroupVerdict:
    """Primary tag, every passing tag and the residuals behind them.

    ``sample_size`` is zero for coordinate-level verdicts; scans record how
    many words were drawn.
    """

    tag: SubgroupTag
    tags: Tuple[SubgroupTag, ...]
    evidence: Dict[str, float] = field(default_factory=dict)
    sample_size: int = 0
    notes: Tuple[str, ...] = ()

    def passes(self, tag: SubgroupTag) -> bool:
        return tag in self.tags


def _rel(a: complex, b: complex) -> float:
    return abs(a - b) / (1.0 + abs(a))


def detect_pants(y: TraceCoordsY, tol: float = 1e-8) -> SubgroupVerdict:
    a, b, c, sigma = y.y1, y.y2, y.y3, y.y4
    quad = lawton_sym(y)
    evidence = {
        "self_pairing": self_pairing_residual(y) / (1.0 + max(abs(v) for v in y.as_tuple())),
        "discriminant": abs(quad.discriminant) / (1.0 + abs(quad.S) ** 2),
        "t2_branch": abs(t2(a, b, c, sigma)) / (1.0 + abs(sigma)) ** 2,
        "linear_branch": _rel(sigma, 3.0 - a - b - c),
        "reality": max(abs(v.imag) / (1.0 + abs(v)) for v in y.as_tuple()),
        "conjugate_pairing": max(
            _rel(y.y5, y.y1.conjugate()),
            _rel(y.y6, y.y2.conjugate()),
            _rel(y.y7, y.y3.conjugate()),
            _rel(y.y8, y.y4.conjugate()),
        ),
    }

    paired = evidence["self_pairing"] <= tol
    tags: List[SubgroupTag] = []
    if (
        paired
        and evidence["discriminant"] <= tol
        and evidence["t2_branch"] <= tol
        and evidence["linear_branch"] > tol
    ):
        tags.append(SubgroupTag.SO3C)
    if paired and evidence["linear_branch"] <= tol:
        tags.append(SubgroupTag.REDUCIBLE)
    if evidence["reality"] <= tol:
        tags.append(SubgroupTag.SL3R)
    if evidence["conjugate_pairing"] <= tol:
        tags.append(SubgroupTag.SU21)

    tag = tags[0] if tags else SubgroupTag.GENERIC
    log.debug("pants verdict %s (passing %s)", tag.value, [t.value for t in tags])
    return SubgroupVerdict(tag=tag, tags=tuple(tags) or (SubgroupTag.GENERIC,), evidence=evidence)


def random_words(
    names: List[str], n_words: int, max_len: int, rng: np.random.Generator
) -> List[List[str]]:
    words = []
    for _ in range(n_words):
        length = int(rng.integers(1, max_len + 1))
        picks = rng.integers(0, len(names), size=length)
        signs = rng.integers(0, 2, size=length)
        words.append([("-" if s else "") + names[i] for i, s in zip(picks, signs)])
    return words


def _word_bound(rep: assembly.SurfaceRep, word: List[str]) -> float:
    """Product of letter norms, the scale of rounding error in the word."""
    bound = 1.0
    for token in word:
        m = rep.generators[token.lstrip("-")]
        bound *= max(mat_norm(m), mat_norm(adjugate(m)))
    return bound


def acosta_scan(
    rep: assembly.SurfaceRep,
    n_words: int = 500,
    max_len: int = 12,
    seed: int = 0,
    tol: float = SCAN_TOL,
) -> SubgroupVerdict:
    """Trace evidence on random words; a heuristic, not a proof.

    Real traces point to SL(3,R); tr W^-1 = conj tr W points to SU(2,1),
    or SU(3) when no sampled word is loxodromic; tr W^-1 = tr W on top of
    either points to SO(3,C). Residuals are relative to the product of the
    letter norms.
    """
    rng = np.random.default_rng(seed)
    names = sorted(rep.generators)
    real = conj = self_paired = 0.0
    loxodromic = False
    for word in random_words(names, n_words, max_len, rng):
        w = assembly.evaluate_word(rep, word)
        t, tinv = tr(w), tr(adjugate(w))
        scale = 1.0 + _word_bound(rep, word)
        real = max(real, abs(t.imag) / scale)
        conj = max(conj, abs(tinv - t.conjugate()) / scale)
        self_paired = max(self_paired, abs(tinv - t) / scale)
        if not loxodromic:
            try:
                loxodromic = classify(w).family == "loxodromic"
            except Fn3Error:
                pass

    evidence = {"reality": real, "conjugate_pairing": conj, "self_pairing": self_paired}
    tags: List[SubgroupTag] = []
    notes: List[str] = []
    if self_paired <= tol:
        tags.append(SubgroupTag.SO3C)
    if real <= tol:
        tags.append(SubgroupTag.SL3R)
    if conj <= tol:
        tags.append(SubgroupTag.SU21)
        if not loxodromic:
            notes.append("SU21-or-SU3: no loxodromic witness found")
    tag = tags[0] if tags else SubgroupTag.GENERIC
    log.info(
        "scan of %d words: %s (reality %.2e, conjugate pairing %.2e)",
        n_words,
        tag.value,
        real,
        conj,
    )
    return SubgroupVerdict(
        tag=tag,
        tags=tuple(tags) or (SubgroupTag.GENERIC,),
        evidence=evidence,
        sample_size=n_words,
        notes=tuple(notes),
    )
