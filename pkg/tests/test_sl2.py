"""Tests for the SL(2) embedding and the Fuchsian shape formulas."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fn3.linalg import tr
from fn3.sl2 import (
    as_mat2,
    continue_shape,
    fuchsian_coords,
    fuchsian_pants,
    fuchsian_shape,
    gilman_maskit_sign,
    inv2,
    j_orthogonality_defect,
    phi_star,
    phi_vector,
    shape_quadratic_roots,
    sl2_pants_from_traces,
)
from fn3.traces import fricke_sl2, pants_coords
from fn3.utils import DomainError, MalformedInput, NonUnimodular

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def random_sl2(rng: np.random.Generator) -> np.ndarray:
    m = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    return m / np.sqrt(complex(np.linalg.det(m)))


@given(seeds)
@settings(max_examples=100, deadline=None)
def test_phi_star_is_a_homomorphism(seed: int) -> None:
    """phi(MN) = phi(M) phi(N) and the image preserves J."""
    rng = np.random.default_rng(seed)
    m, n = random_sl2(rng), random_sl2(rng)
    pm, pn = phi_star(m), phi_star(n)
    scale = (1.0 + np.linalg.norm(m) * np.linalg.norm(n)) ** 2
    assert np.linalg.norm(phi_star(m @ n) - pm @ pn) <= 1e-10 * scale
    assert j_orthogonality_defect(pm) <= 1e-10 * (1.0 + np.linalg.norm(m)) ** 4


@given(seeds)
@settings(max_examples=100, deadline=None)
def test_phi_star_trace(seed: int) -> None:
    """tr phi(M) = (tr M)^2 - 1 and tr phi(M)^-1 agrees with it."""
    m = random_sl2(np.random.default_rng(seed))
    expected = np.trace(m) ** 2 - 1.0
    scale = 1.0 + np.linalg.norm(m) ** 2
    assert abs(tr(phi_star(m)) - expected) <= 1e-10 * scale
    assert abs(tr(phi_star(inv2(m))) - expected) <= 1e-10 * scale


def test_phi_star_identity() -> None:
    """The identity maps to the identity."""
    assert np.allclose(phi_star(np.eye(2)), np.eye(3))


@given(seeds)
@settings(max_examples=50, deadline=None)
def test_phi_vector_maps_eigenvectors(seed: int) -> None:
    """An eigenvector for lambda goes to an eigenvector for lambda^2."""
    m = random_sl2(np.random.default_rng(seed))
    values, vectors = np.linalg.eig(m)
    for k in range(2):
        v = phi_vector(vectors[:, k])
        residual = phi_star(m) @ v - values[k] ** 2 * v
        assert np.linalg.norm(residual) <= 1e-9 * (1.0 + np.linalg.norm(m)) ** 2


def test_as_mat2_rejects() -> None:
    """Shape and determinant are both checked."""
    with pytest.raises(MalformedInput, match="2x2"):
        as_mat2(np.eye(3))
    with pytest.raises(NonUnimodular):
        as_mat2(2.0 * np.eye(2))


@pytest.mark.parametrize("x,y,z", [(-3, -3, -3), (2.5, -4, 1 + 1j), (2, 2, 2)])
def test_normal_form_traces(x: complex, y: complex, z: complex) -> None:
    """The normal form has the requested traces and Fricke commutator."""
    pair = sl2_pants_from_traces(x, y, z)
    assert np.trace(pair.A) == pytest.approx(x)
    assert np.trace(pair.B) == pytest.approx(y)
    assert np.trace(pair.A @ pair.B) == pytest.approx(z)
    comm = pair.A @ pair.B @ inv2(pair.A) @ inv2(pair.B)
    assert np.trace(comm) == pytest.approx(fricke_sl2(x, y, z).tr_comm)
    assert pair.reducible == ((x, y, z) == (2, 2, 2))


def test_fuchsian_shape_eight() -> None:
    """(8, 8, 8): sigma = 79 and tr[A, B] = 2703."""
    shape = fuchsian_shape(8, 8, 8)
    assert shape.sigma == pytest.approx(79.0)
    assert shape.tr_comm == pytest.approx(2703.0)
    assert shape_quadratic_roots(8, 8, 8) == pytest.approx((79.0, -29.0))


def test_fuchsian_coords_self_paired() -> None:
    """Fuchsian coordinates repeat (a, b, c, sigma)."""
    y = fuchsian_coords(8, 8, 8)
    assert y.as_tuple()[:4] == y.as_tuple()[4:]
    assert y.y4 == pytest.approx(79.0)


@pytest.mark.parametrize("negate,sigma", [(False, 79.0), (True, -29.0)])
def test_fuchsian_pants_picks_root(negate: bool, sigma: float) -> None:
    """Negative SL(2) traces land on the + root; negating moves to the other."""
    a, b, c = fuchsian_pants(-3, -3, -3, negate=negate)
    for m in (a, b, c):
        assert tr(m) == pytest.approx(8.0)
    y = pants_coords(a, b)
    assert y.y4 == pytest.approx(sigma)
    assert y.y8 == pytest.approx(sigma)


def test_fuchsian_pants_relation() -> None:
    """CBA = I for the embedded pants."""
    a, b, c = fuchsian_pants(-2.5, -3.0, -4.0)
    assert np.allclose(c @ b @ a, np.eye(3), atol=1e-10)


@pytest.mark.parametrize(
    "x,y,z,expected",
    [(-3, -3, -3, True), (3, 3, 3, False), (-3, 3, 3, True)],
)
def test_gilman_maskit_sign(x: float, y: float, z: float, expected: bool) -> None:
    """Lifts of a hyperbolic pants have negative trace product."""
    assert gilman_maskit_sign(x, y, z) is expected


def test_fuchsian_shape_rejects_negative_axis() -> None:
    """a + 1 on the negative real axis needs continuation."""
    with pytest.raises(DomainError, match="continue_shape"):
        fuchsian_shape(-2, 8, 8)


def test_continue_shape_matches_closed_form() -> None:
    """Inside the positive region continuation agrees with fuchsian_shape."""
    shapes = continue_shape([(8, 8, 8), (8 + 2j, 5, 8), (2, 2, 2)])
    assert shapes[0].sigma == pytest.approx(79.0)
    assert shapes[-1].sigma == pytest.approx(fuchsian_shape(2, 2, 2).sigma)


def test_continue_shape_round_trip() -> None:
    """A loop not enclosing the branch locus returns to the start value."""
    shapes = continue_shape([(8, 8, 8), (8 + 3j, 8, 8), (8 + 3j, 8 + 3j, 8), (8, 8, 8)])
    assert shapes[-1].sigma == pytest.approx(shapes[0].sigma)


def test_continue_shape_around_branch_locus() -> None:
    """Circling a = -1 once flips the square root."""
    loop = [(-1 + 5 * np.exp(1j * t), 8, 8) for t in np.linspace(0.0, 2.0 * np.pi, 17)]
    shapes = continue_shape(loop)
    assert shapes[-1].sigma == pytest.approx(shape_quadratic_roots(4, 8, 8)[1])


def test_continue_shape_needs_fuchsian_start() -> None:
    """The first vertex must have real traces above 3."""
    with pytest.raises(DomainError, match="Fuchsian range"):
        continue_shape([(1, 8, 8), (8, 8, 8)])
