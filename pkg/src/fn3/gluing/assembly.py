"""Assembly of a surface group representation over a pants decomposition.

Every pants keeps the matrices it was built with (its own frame); the
assembly only chooses a frame F_p per pants and a stable letter per
non-tree edge. With X the slot_a boundary and Y the slot_b boundary, both
in their own frames:

    tree edge:     F_b = F_a K_X(p) G0,   G0 = matching_conjugator(X^-1, Y)
    non-tree edge: D = F_b D0 K_X(p) F_a^-1,   D0 = matching_conjugator(Y, X^-1)

so that the glued curves satisfy Y = X^-1 (amalgamation) or
D X^-1 D^-1 = Y (HNN) in the base frame. Extraction reads K_X(p) back from
the relative frames F_a^-1 F_b and F_b^-1 D F_a, which global conjugation
does not change.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..linalg.eigen import eigen3
from ..linalg.matrix import Mat3, adjugate, mat_norm, tr
from ..pants.builder import PantsRep, build_pants
from ..traces.coords import TraceCoordsY
from ..traces.shape import pants_coords
from ..utils.errors import Fn3Error, RelationResidual, SpectraMismatch, UnknownGenerator, with_context
from .centralizer import (
    CentralizerParam,
    centralizer_element,
    extract_twist,
    in_basis,
    matching_conjugator,
)
from .decomposition import SLOT_NAMES, Edge, PantsDecomposition, Slot

log = logging.getLogger(__name__)

SPECTRA_TOL = 1e-6
RELATION_TOL = 1e-8

# Word equal to the inverse of each boundary: A^-1 = CB, B^-1 = AC, C^-1 = BA.
COMPLEMENT = {0: (2, 1), 1: (0, 2), 2: (1, 0)}


def generator_name(slot: Slot) -> str:
    return f"P{slot[0]}.{SLOT_NAMES[slot[1]]}"


def stable_letter_name(edge_id: int) -> str:
    return f"D{edge_id}"


@dataclass(frozen=True, eq=False)
class SurfaceRep:
    decomposition: PantsDecomposition
    pants_reps: Tuple[PantsRep, ...]
    frames: Tuple[Mat3, ...]
    stable_letters: Dict[int, Mat3]
    tree_edges: Tuple[int, ...]
    root: int = 0
    generators: Dict[str, Mat3] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not self.generators:
            gens: Dict[str, Mat3] = {}
            for p, (rep, f) in enumerate(zip(self.pants_reps, self.frames)):
                f_inv = adjugate(f)
                for k, m in enumerate(rep.generators()):
                    gens[generator_name((p, k))] = f @ m @ f_inv
            for e, d in sorted(self.stable_letters.items()):
                gens[stable_letter_name(e)] = d
            object.__setattr__(self, "generators", gens)

    def boundary(self, slot: Slot) -> Mat3:
        return self.generators[generator_name(slot)]

    def conjugated(self, g: Mat3) -> "SurfaceRep":
        """The representation G rho G^-1; own-frame pants are untouched."""
        g_inv = adjugate(g)
        return SurfaceRep(
            decomposition=self.decomposition,
            pants_reps=self.pants_reps,
            frames=tuple(g @ f for f in self.frames),
            stable_letters={e: g @ d @ g_inv for e, d in self.stable_letters.items()},
            tree_edges=self.tree_edges,
            root=self.root,
        )


@dataclass(frozen=True)
class FNRecord:
    """Coordinates of an assembled representation.

    ``boundaries`` holds (tr, tr of inverse) of each edge's slot_a curve,
    ``pants`` the pants coordinates in pants order and ``glue`` the
    canonical parameter of each edge.
    """

    boundaries: Tuple[Tuple[complex, complex], ...]
    pants: Tuple[TraceCoordsY, ...]
    glue: Tuple[CentralizerParam, ...]

    def distance(self, other: "FNRecord") -> float:
        worst = 0.0
        for (t1, s1), (t2, s2) in zip(self.boundaries, other.boundaries):
            worst = max(worst, abs(t1 - t2), abs(s1 - s2))
        for y1, y2 in zip(self.pants, other.pants):
            worst = max(worst, y1.distance(y2))
            if y1.root_choice is not y2.root_choice:
                worst = np.inf
        for g1, g2 in zip(self.glue, other.glue):
            worst = max(worst, g1.distance(g2))
        return float(worst)


def _own(rep: PantsRep, slot: int) -> Mat3:
    return rep.generators()[slot]


def _check_spectra(d: PantsDecomposition, reps: Sequence[PantsRep]) -> None:
    for i, e in enumerate(d.edges):
        ta, sa = reps[e.a[0]].coords.boundary(e.a[1])
        tb, sb = reps[e.b[0]].coords.boundary(e.b[1])
        gap = max(abs(ta - sb), abs(sa - tb))
        if gap > SPECTRA_TOL * (1.0 + max(abs(ta), abs(sa))):
            raise SpectraMismatch(
                f"edge {i}: {generator_name(e.a)} has traces ({ta}, {sa}) but "
                f"{generator_name(e.b)} has ({tb}, {sb}); they must be swapped"
            )


def _tree_conjugator(reps: Sequence[PantsRep], e: Edge) -> Mat3:
    x = _own(reps[e.a[0]], e.a[1])
    y = _own(reps[e.b[0]], e.b[1])
    g0 = matching_conjugator(eigen3(adjugate(x)), y)
    k = in_basis(centralizer_element(e.glue), eigen3(x))
    return k @ g0


def _stable_relative(reps: Sequence[PantsRep], e: Edge) -> Tuple[Mat3, Mat3]:
    """(D0, D0 K_X(p)) for a non-tree edge."""
    x = _own(reps[e.a[0]], e.a[1])
    y = _own(reps[e.b[0]], e.b[1])
    d0 = matching_conjugator(eigen3(y), adjugate(x))
    k = in_basis(centralizer_element(e.glue), eigen3(x))
    return d0, d0 @ k


def assemble_from_pants(
    d: PantsDecomposition,
    reps: Sequence[PantsRep],
    root: int = 0,
    require_closed: bool = True,
    relation_tol: Optional[float] = RELATION_TOL,
) -> SurfaceRep:
    """Glue already built pants along ``d``.

    Every normalized relation residual must be within ``relation_tol``;
    None skips the check.

    Raises:
        DecompositionInvalid: the graph is malformed.
        SpectraMismatch: glued boundaries are not mutually inverse.
        RelationResidual: a gluing relation fails beyond tolerance.
    """
    d.validate(require_closed=require_closed)
    _check_spectra(d, reps)
    for i, e in enumerate(d.edges):
        if e.glue.lattice_wrapped:
            log.warning("edge %d: glue %s is outside the canonical box", i, e.glue)

    tree, order = d.spanning_tree(root)
    frames: List[Optional[Mat3]] = [None] * len(d.pants)
    frames[root] = np.eye(3, dtype=complex)
    for q, i in order:
        e = d.edges[i]
        # Orient every tree edge from the pants already framed.
        if e.a[0] == q:
            e = e.flipped()
        frames[q] = frames[e.a[0]] @ _tree_conjugator(reps, e)
        log.debug("tree edge %d frames pants %d from pants %d", i, q, e.a[0])

    stable: Dict[int, Mat3] = {}
    for i, e in enumerate(d.edges):
        if i in tree:
            continue
        _, rel = _stable_relative(reps, e)
        stable[i] = frames[e.b[0]] @ rel @ adjugate(frames[e.a[0]])
        log.debug("edge %d closes with stable letter %s", i, stable_letter_name(i))

    rep = SurfaceRep(
        decomposition=d,
        pants_reps=tuple(reps),
        frames=tuple(frames),
        stable_letters=stable,
        tree_edges=tuple(tree),
        root=root,
    )
    residuals = relation_residuals(rep)
    worst = max(residuals.values())
    if relation_tol is not None:
        for name, value in residuals.items():
            if value > relation_tol:
                raise RelationResidual(f"{name}: normalized residual {value:.3e} exceeds {relation_tol:.1e}")
    log.info(
        "assembled %d pants, %d tree edges, %d stable letters (max relation residual %.2e)",
        len(reps),
        len(tree),
        len(stable),
        worst,
    )
    return rep


def _seeds(seed: int, n: int) -> List[int]:
    children = np.random.SeedSequence(seed).spawn(n)
    return [int(c.generate_state(1)[0]) for c in children]


def assemble_surface(
    d: PantsDecomposition,
    coords: Sequence[Union[TraceCoordsY, PantsRep]],
    seed: int = 0,
    root: int = 0,
    require_closed: bool = True,
    relation_tol: Optional[float] = RELATION_TOL,
) -> SurfaceRep:
    """Build every pants from its coordinates and glue them.

    Entries that are already a PantsRep are used as they are. Errors from
    building pants i carry the prefix ``pants i``.
    """
    if len(coords) != len(d.pants):
        raise SpectraMismatch(f"{len(d.pants)} pants but {len(coords)} coordinate records")
    reps = []
    for i, (y, s) in enumerate(zip(coords, _seeds(seed, len(coords)))):
        if isinstance(y, PantsRep):
            reps.append(y)
            continue
        try:
            rep, report = build_pants(y, seed=s)
        except Fn3Error as err:
            raise with_context(err, f"pants {i}") from err
        log.debug("pants %d built from %s", i, report.start)
        reps.append(rep)
    return assemble_from_pants(d, reps, root=root, require_closed=require_closed, relation_tol=relation_tol)


def extract_fn(rep: SurfaceRep) -> FNRecord:
    """Read boundary traces, pants coordinates and glue parameters back."""
    d = rep.decomposition
    reps = rep.pants_reps
    boundaries = []
    glue = []
    for i, e in enumerate(d.edges):
        x = rep.boundary(e.a)
        boundaries.append((tr(x), tr(adjugate(x))))
        x_own = _own(reps[e.a[0]], e.a[1])
        if i in rep.tree_edges:
            y_own = _own(reps[e.b[0]], e.b[1])
            g0 = matching_conjugator(eigen3(adjugate(x_own)), y_own)
            k = adjugate(rep.frames[e.a[0]]) @ rep.frames[e.b[0]] @ adjugate(g0)
        else:
            d0, _ = _stable_relative(reps, e)
            k = adjugate(d0) @ adjugate(rep.frames[e.b[0]]) @ rep.stable_letters[i] @ rep.frames[e.a[0]]
        glue.append(extract_twist(k, eigen3(x_own)))

    pants = []
    for p, own in enumerate(reps):
        f, f_inv = rep.frames[p], adjugate(rep.frames[p])
        coords = pants_coords(f @ own.A @ f_inv, f @ own.B @ f_inv)
        if coords.root_choice is not own.coords.root_choice:
            coords = coords.with_choice(own.coords.root_choice)
        pants.append(coords)
    return FNRecord(boundaries=tuple(boundaries), pants=tuple(pants), glue=tuple(glue))


WordLike = Union[str, Sequence[str]]


def parse_word(word: WordLike) -> List[str]:
    if isinstance(word, str):
        return word.replace(",", " ").split()
    return list(word)


def evaluate_word(rep: SurfaceRep, word: WordLike) -> Mat3:
    """Left-to-right product; a leading '-' on an id means the inverse."""
    out = np.eye(3, dtype=complex)
    for token in parse_word(word):
        name = token[1:] if token.startswith("-") else token
        if name not in rep.generators:
            raise UnknownGenerator(f"unknown generator {name!r}")
        m = rep.generators[name]
        out = out @ (adjugate(m) if token.startswith("-") else m)
    return out


def _complement(slot: Slot) -> List[str]:
    p, k = slot
    return [generator_name((p, j)) for j in COMPLEMENT[k]]


def relation_words(rep: SurfaceRep) -> Dict[str, List[str]]:
    """Defining relations: CBA = I per pants and one relation per edge."""
    words: Dict[str, List[str]] = {}
    for p in rep.decomposition.pants:
        words[f"pants {p}"] = [generator_name((p, 2)), generator_name((p, 1)), generator_name((p, 0))]
    for i, e in enumerate(rep.decomposition.edges):
        if i in rep.tree_edges:
            words[f"edge {i}"] = _complement(e.a) + _complement(e.b)
        else:
            name = stable_letter_name(i)
            words[f"edge {i}"] = _complement(e.b) + [name, "-" + generator_name(e.a), "-" + name]
    return words


def relation_scale(rep: SurfaceRep, word: Sequence[str]) -> float:
    """Product of the letter norms of ``word``, at least 1."""
    return max(1.0, float(np.prod([mat_norm(rep.generators[g.lstrip("-")]) for g in word])))


def relation_residuals(rep: SurfaceRep, normalized: bool = True) -> Dict[str, float]:
    """||W - I|| for every relation word W.

    With ``normalized`` each residual is divided by ``relation_scale``, the
    size of the rounding error in evaluating W. The normalized value is the
    one every relation check compares with the relation tolerance.
    """
    eye = np.eye(3)
    out: Dict[str, float] = {}
    for name, w in relation_words(rep).items():
        value = mat_norm(evaluate_word(rep, w) - eye)
        out[name] = value / relation_scale(rep, w) if normalized else value
    return out
