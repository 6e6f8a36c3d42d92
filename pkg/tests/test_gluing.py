"""Tests for centralizer parameters, decompositions and surface assembly."""

import cmath
import logging
import math

import numpy as np
import pytest

from fn3.gluing import (
    CentralizerParam,
    Edge,
    GlueRegime,
    PantsDecomposition,
    assemble_from_pants,
    assemble_surface,
    centralizer_element,
    evaluate_word,
    extract_fn,
    extract_twist,
    glue_regime,
    in_basis,
    matching_conjugator,
    relation_residuals,
    relation_scale,
    relation_words,
)
from fn3.linalg import adjugate, eigen3, random_conjugator, random_unimodular, tr
from fn3.linalg.matrix import det3, diag3
from fn3.pants import PantsRep, pants_from_matrices
from fn3.sl2 import fuchsian_coords, fuchsian_pants
from fn3.traces import TraceCoordsY
from fn3.utils import (
    BoundaryNotLoxodromic,
    DecompositionInvalid,
    EigenvalueMismatch,
    NotInCentralizer,
    NotStronglyLoxodromic,
    RelationResidual,
    SpectraMismatch,
    UnknownGenerator,
)

GLUE = [
    CentralizerParam(0.7, 0.1 - 0.2j),
    CentralizerParam(0.3 + 0.5j, 0),
    CentralizerParam(0, 0.1 - 0.2j),
]


def fuchsian_rep(x: float, y: float, z: float) -> PantsRep:
    a, b, _ = fuchsian_pants(x, y, z)
    return pants_from_matrices(a, b, {"constructor": "fuchsian_pants"})


def loxodromic(seed: int = 0) -> np.ndarray:
    g = random_conjugator(np.random.default_rng(seed), max_cond=10.0)
    return g @ diag3([2.0, 0.8j, 1.0 / 1.6j]) @ adjugate(g)


def test_canonical_box() -> None:
    """Canonical parameters land in the box and give the same K."""
    p = CentralizerParam(0.5 + 4j, 0.1 + 2j)
    c = p.canonical()
    assert -math.pi < c.bend <= math.pi
    assert -math.pi / 2 < c.turn <= math.pi / 2
    assert np.allclose(centralizer_element(p), centralizer_element(c))
    assert p.lattice_wrapped
    assert not c.lattice_wrapped


def test_lattice_distance() -> None:
    """u and u + 2 pi i are the same gluing."""
    assert CentralizerParam(2j * math.pi).distance(CentralizerParam()) <= 1e-12
    assert CentralizerParam(0.7).distance(CentralizerParam()) == pytest.approx(0.7)


def test_reversed_is_involution() -> None:
    """Reading an edge twice from the other side gives it back."""
    p = CentralizerParam(0.3 + 0.5j, 0.1 - 0.2j)
    assert p.reversed().reversed().distance(p) <= 1e-12
    assert p.reversed().v == -p.v


def test_names() -> None:
    """twist + i bend, bulge + i turn."""
    p = CentralizerParam(0.3 + 0.5j, 0.1 - 0.2j)
    assert (p.twist, p.bend, p.bulge, p.turn) == (0.3, 0.5, 0.1, -0.2)


@pytest.mark.parametrize(
    "u,v,expected",
    [
        (0, 0, GlueRegime.TRIVIAL),
        (0.7, 0, GlueRegime.TWIST),
        (0.7, 0.3j, GlueRegime.TWIST_TURN),
        (0.7, 0.2, GlueRegime.TWIST_BULGE),
        (0.7 + 0.4j, 0, GlueRegime.TWIST_BEND),
        (0.4j, 0.3j, GlueRegime.GENERAL),
    ],
)
def test_glue_regime(u: complex, v: complex, expected: GlueRegime) -> None:
    """Which of bend, bulge and turn are present."""
    assert glue_regime(CentralizerParam(u, v)) is expected


def test_centralizer_element_unimodular() -> None:
    """The diagonal entries multiply to 1."""
    k = centralizer_element(CentralizerParam(0.3 + 0.5j, 0.1 - 0.2j))
    assert det3(k) == pytest.approx(1.0)


@pytest.mark.parametrize("p", GLUE + [CentralizerParam(-1.1 + 2.5j, 0.4 + 1.2j)])
def test_extract_twist_round_trip(p: CentralizerParam) -> None:
    """extract_twist inverts centralizer_element in the curve's eigenbasis."""
    basis = eigen3(loxodromic())
    k = in_basis(centralizer_element(p), basis)
    assert extract_twist(k, basis).distance(p) <= 1e-10


def test_extract_twist_logs_fold(caplog) -> None:
    """Principal logarithms outside the canonical box are folded back and logged."""
    basis = eigen3(loxodromic())
    p = CentralizerParam(0.2 - 3.0j, 0.1 + 1.0j)
    with caplog.at_level(logging.DEBUG, logger="fn3.gluing.centralizer"):
        assert extract_twist(in_basis(centralizer_element(p), basis), basis).distance(p) <= 1e-10
    assert "folded" in caplog.text
    caplog.clear()
    with caplog.at_level(logging.DEBUG, logger="fn3.gluing.centralizer"):
        extract_twist(in_basis(centralizer_element(CentralizerParam(0.7)), basis), basis)
    assert "folded" not in caplog.text


def test_extract_twist_rejects_non_centralizing() -> None:
    """A random element does not commute with the curve."""
    basis = eigen3(loxodromic())
    with pytest.raises(NotInCentralizer):
        extract_twist(random_unimodular(np.random.default_rng(4)), basis)


def test_extract_twist_needs_distinct_moduli() -> None:
    """Equal moduli leave the parameter undefined."""
    basis = eigen3(diag3([2.0, -2.0, -0.25]))
    with pytest.raises(NotStronglyLoxodromic):
        extract_twist(np.eye(3, dtype=complex), basis)


def test_matching_conjugator() -> None:
    """G source G^-1 is the target, and G is unimodular."""
    x = loxodromic(0)
    h = random_conjugator(np.random.default_rng(9), max_cond=10.0)
    source = h @ x @ adjugate(h)
    g = matching_conjugator(eigen3(x), source)
    assert det3(g) == pytest.approx(1.0)
    assert np.allclose(g @ source @ np.linalg.inv(g), x, atol=1e-9)


def test_matching_conjugator_rejects_other_spectrum() -> None:
    """Different eigenvalues cannot be matched."""
    with pytest.raises(EigenvalueMismatch):
        matching_conjugator(eigen3(loxodromic()), diag3([3.0, 1.0, 1.0 / 3.0]))


def test_doubled_decomposition() -> None:
    """Two pants, three edges, genus two, one tree edge."""
    d = PantsDecomposition.doubled().validate()
    assert d.genus == 2
    tree, order = d.spanning_tree()
    assert tree == [0]
    assert order == [(1, 0)]


def test_decomposition_dict_round_trip() -> None:
    """to_dict and from_dict agree, and slot names are accepted."""
    d = PantsDecomposition.doubled(GLUE)
    assert PantsDecomposition.from_dict(d.to_dict()) == d
    named = PantsDecomposition.from_dict(
        {"pants": [{"id": 0}, {"id": 1}], "edges": [{"a": [0, "A"], "b": [1, "C"]}]}
    )
    assert named.edges[0].b == (1, 2)


@pytest.mark.parametrize(
    "d,match",
    [
        (PantsDecomposition(pants=(), edges=()), "no pants"),
        (PantsDecomposition(pants=(0, 2), edges=()), "ids"),
        (
            PantsDecomposition(pants=(0, 1), edges=(Edge((0, 0), (1, 0)), Edge((0, 0), (1, 1)))),
            "used by edges",
        ),
        (PantsDecomposition(pants=(0, 1), edges=(Edge((0, 0), (1, 0)),)), "free boundary"),
        (PantsDecomposition(pants=(0, 1), edges=(Edge((0, 0), (1, 5)),)), "missing slot"),
    ],
)
def test_decomposition_invalid(d: PantsDecomposition, match: str) -> None:
    """Malformed graphs are rejected with a reason."""
    with pytest.raises(DecompositionInvalid, match=match):
        d.validate()


def test_disconnected_decomposition() -> None:
    """Every pants must be reachable from pants 0."""
    d = PantsDecomposition(
        pants=(0, 1),
        edges=(Edge((0, 0), (0, 1)), Edge((1, 0), (1, 1))),
    )
    with pytest.raises(DecompositionInvalid, match="not connected"):
        d.validate(require_closed=False)


def test_unknown_slot_name() -> None:
    """Only A, B and C name slots."""
    with pytest.raises(DecompositionInvalid, match="slot name"):
        PantsDecomposition.from_dict({"pants": [0, 1], "edges": [{"a": [0, "D"], "b": [1, "A"]}]})


def genus_two(glue=None, root: int = 0):
    reps = [fuchsian_rep(-3.0, -3.2, -2.8)] * 2
    return assemble_from_pants(PantsDecomposition.doubled(glue or GLUE), reps, root=root)


def test_relations_hold() -> None:
    """Pants relations, the amalgamated edge and both HNN edges."""
    rep = genus_two()
    residuals = relation_residuals(rep)
    assert set(residuals) == {"pants 0", "pants 1", "edge 0", "edge 1", "edge 2"}
    assert max(residuals.values()) <= 1e-8
    assert set(rep.stable_letters) == {1, 2}


def test_extract_round_trip() -> None:
    """The glue parameters and pants coordinates come back out."""
    rep = genus_two()
    record = extract_fn(rep)
    for got, want in zip(record.glue, GLUE):
        assert got.distance(want) <= 1e-6
    for y, own in zip(record.pants, rep.pants_reps):
        assert y.distance(own.coords) <= 1e-8
    t, s = record.boundaries[0]
    assert t == pytest.approx((-3.0) ** 2 - 1.0)
    assert s == pytest.approx(t)


def test_extract_ignores_root_and_conjugation() -> None:
    """Re-rooting or conjugating the whole group keeps the record."""
    base = extract_fn(genus_two())
    assert extract_fn(genus_two(root=1)).distance(base) <= 1e-8
    g = random_conjugator(np.random.default_rng(5), max_cond=10.0)
    assert extract_fn(genus_two().conjugated(g)).distance(base) <= 1e-8


def test_zero_glue_matches_boundaries() -> None:
    """With no glue the glued boundaries are inverse to each other."""
    rep = genus_two([CentralizerParam()] * 3)
    x, y = rep.boundary((0, 0)), rep.boundary((1, 0))
    assert np.allclose(x @ y, np.eye(3), atol=1e-9)


def test_evaluate_word() -> None:
    """Words multiply left to right and '-' inverts a letter."""
    rep = genus_two()
    a, b = rep.generators["P0.A"], rep.generators["P0.B"]
    assert np.allclose(evaluate_word(rep, "P0.A P0.B"), a @ b)
    assert np.allclose(evaluate_word(rep, ["P0.A", "-P0.A"]), np.eye(3), atol=1e-9)
    assert np.allclose(evaluate_word(rep, "P0.C,P0.B,P0.A"), np.eye(3), atol=1e-9)
    with pytest.raises(UnknownGenerator, match="X"):
        evaluate_word(rep, "P0.A X")


def test_handle() -> None:
    """A single pants glued to itself closes with one stable letter."""
    glue = CentralizerParam(0.4, 0.1j)
    d = PantsDecomposition.handle(glue)
    rep = assemble_from_pants(d, [fuchsian_rep(-3.0, -3.0, -2.5)], require_closed=False)
    assert rep.tree_edges == ()
    assert max(relation_residuals(rep).values()) <= 1e-8
    assert extract_fn(rep).glue[0].distance(glue) <= 1e-6


GENUS_THREE = PantsDecomposition(
    pants=(0, 1, 2, 3),
    edges=(
        Edge(a=(0, 0), b=(1, 0), glue=CentralizerParam(0.7, 0.1 - 0.2j)),
        Edge(a=(0, 1), b=(2, 1), glue=CentralizerParam(0.3 + 0.5j, 0)),
        Edge(a=(0, 2), b=(3, 2), glue=CentralizerParam(0, 0.1 - 0.2j)),
        Edge(a=(1, 1), b=(2, 0), glue=CentralizerParam(-0.4 + 0.2j, 0.05)),
        Edge(a=(1, 2), b=(3, 0), glue=CentralizerParam(0.2, -0.3j)),
        Edge(a=(2, 2), b=(3, 1), glue=CentralizerParam(-0.6 - 0.1j, 0.1 + 0.1j)),
    ),
)


@pytest.mark.parametrize("root", [0, 1, 2, 3])
def test_genus_three_round_trip(root: int) -> None:
    """Four pants close up to genus three from every root."""
    reps = [fuchsian_rep(-3.0, -3.0, -3.0)] * 4
    rep = assemble_from_pants(GENUS_THREE.validate(), reps, root=root)
    assert len(rep.stable_letters) == 3
    assert len(relation_residuals(rep)) == 4 + 6
    assert max(relation_residuals(rep).values()) <= 1e-8
    assert max(relation_residuals(rep, normalized=False).values()) <= 1e-6
    record = extract_fn(rep)
    for got, edge in zip(record.glue, GENUS_THREE.edges):
        assert got.distance(edge.glue) <= 1e-6


def test_relation_scale_bounds_raw_residual() -> None:
    """Normalized residuals are the raw ones divided by the word scale."""
    rep = genus_two()
    raw = relation_residuals(rep, normalized=False)
    words = relation_words(rep)
    for name, value in relation_residuals(rep).items():
        assert relation_scale(rep, words[name]) >= 1.0
        assert value == pytest.approx(raw[name] / relation_scale(rep, words[name]))


def test_relation_tolerance_gates_assembly() -> None:
    """A relation tolerance below rounding error rejects the gluing."""
    reps = [fuchsian_rep(-3.0, -3.2, -2.8)] * 2
    with pytest.raises(RelationResidual, match="normalized residual"):
        assemble_from_pants(PantsDecomposition.doubled(GLUE), reps, relation_tol=1e-300)
    rep = assemble_from_pants(PantsDecomposition.doubled(GLUE), reps, relation_tol=None)
    assert max(relation_residuals(rep).values()) <= 1e-8


def test_spectra_mismatch() -> None:
    """Glued boundaries must have swapped traces."""
    reps = [fuchsian_rep(-3.0, -3.2, -2.8), fuchsian_rep(-3.5, -3.2, -2.8)]
    with pytest.raises(SpectraMismatch, match="edge 0"):
        assemble_from_pants(PantsDecomposition.doubled(), reps)


def test_assemble_surface_from_coords() -> None:
    """Pants built from coordinates glue like hand-made ones."""
    coords = [fuchsian_coords(8, 8, 8)] * 2
    rep = assemble_surface(PantsDecomposition.doubled(GLUE), coords, seed=1)
    assert max(relation_residuals(rep).values()) <= 1e-7
    for got, want in zip(extract_fn(rep).glue, GLUE):
        assert got.distance(want) <= 1e-6


def test_assemble_surface_names_failing_pants() -> None:
    """Errors from pants construction say which pants failed."""
    coords = [fuchsian_coords(8, 8, 8), TraceCoordsY(1, 8, 8, 0, 1, 8, 8, 0)]
    with pytest.raises(BoundaryNotLoxodromic, match="pants 1"):
        assemble_surface(PantsDecomposition.doubled(), coords)


def test_assemble_surface_counts_records() -> None:
    """One record per pants."""
    with pytest.raises(SpectraMismatch, match="2 pants but 1"):
        assemble_surface(PantsDecomposition.doubled(), [fuchsian_coords(8, 8, 8)])


def test_boundary_trace_of_glued_curve() -> None:
    """The glued curve keeps its Fuchsian trace in the surface group."""
    rep = genus_two()
    for k, t in enumerate((-3.0, -3.2, -2.8)):
        assert tr(rep.boundary((0, k))) == pytest.approx(t * t - 1.0)
        assert cmath.isclose(tr(rep.boundary((1, k))), t * t - 1.0, rel_tol=1e-9)
