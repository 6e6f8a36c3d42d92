"""Tests for trace coordinates, the Lawton polynomials and shape invariants."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fn3.linalg import adjugate, commutator, random_unimodular, tr
from fn3.traces import (
    Reducibility,
    RootChoice,
    TraceCoordsX,
    TraceCoordsY,
    branch_factorization,
    cyclic_shift,
    fricke_sl2,
    lawton_raw,
    lawton_sym,
    pants_coords,
    reducibility_test,
    self_paired_tuple,
    shape_invariants,
    x_from_matrices,
    x_from_y,
    y_from_x,
)
from fn3.traces.shape import t2
from fn3.utils import MalformedInput

seeds = st.integers(min_value=0, max_value=2**32 - 1)
small = st.complex_numbers(max_magnitude=5.0, allow_nan=False, allow_infinity=False)


def rel(a: complex, b: complex) -> float:
    return abs(a - b) / (1.0 + abs(b))


def random_pair(seed: int):
    rng = np.random.default_rng(seed)
    return random_unimodular(rng), random_unimodular(rng)


def reducible_pair(seed: int):
    """Upper triangular pair sharing the invariant line e1."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(2):
        m = np.triu(rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3)), k=1)
        diag = rng.uniform(0.5, 2.0, 3) * np.exp(1j * rng.uniform(0.0, 2.0 * np.pi, 3))
        m = m + np.diag(diag)
        out.append(m / np.prod(diag) ** (1.0 / 3.0))
    return out


def test_identity_raw() -> None:
    """A = B = I gives S0 = 6 and P0 = 9."""
    s0, p0 = lawton_raw(TraceCoordsX.from_sequence([3] * 8))
    assert s0 == pytest.approx(6.0)
    assert p0 == pytest.approx(9.0)


def test_identity_symmetrized() -> None:
    """sigma = -6 at the identity and the double root is 3."""
    quad = lawton_sym(TraceCoordsY(3, 3, 3, -6, 3, 3, 3, -6))
    assert quad.S == pytest.approx(6.0)
    assert quad.P == pytest.approx(9.0)
    assert quad.plus == pytest.approx(3.0)
    assert quad.minus == pytest.approx(3.0)
    assert quad.repeated()


@given(seeds)
@settings(max_examples=100, deadline=None)
def test_lawton_matches_commutators(seed: int) -> None:
    """S and P are the sum and product of tr[A, B] and tr[B, A]."""
    a, b = random_pair(seed)
    c1, c2 = tr(commutator(a, b)), tr(commutator(b, a))
    x = x_from_matrices(a, b)
    s0, p0 = lawton_raw(x)
    assert rel(s0, c1 + c2) <= 1e-8
    assert rel(p0, c1 * c2) <= 1e-8
    quad = lawton_sym(y_from_x(x))
    assert rel(quad.S, c1 + c2) <= 1e-8
    assert rel(quad.P, c1 * c2) <= 1e-8


@given(seeds)
@settings(max_examples=30, deadline=None)
def test_reducible_pair_has_double_root(seed: int) -> None:
    """A shared eigenvector puts the commutator quadratic on its branch locus."""
    a, b = reducible_pair(seed)
    s0, p0 = lawton_raw(x_from_matrices(a, b))
    assert abs(s0 * s0 - 4.0 * p0) <= 1e-8 * (1.0 + abs(s0) ** 2)


def test_xy_round_trip() -> None:
    """y_from_x inverts x_from_y."""
    x = TraceCoordsX.from_sequence([1 + 2j, -0.5, 3j, 2, 0.25 - 1j, 4, -2 + 1j, 7])
    assert x_from_y(y_from_x(x)) == x


def test_identity_y4() -> None:
    """y4 = x4 - x2 x5 is -6 at the identity."""
    y = y_from_x(TraceCoordsX.from_sequence([3] * 8))
    assert y.y4 == -6


def test_coords_need_eight_entries() -> None:
    """Short coordinate lists are rejected."""
    with pytest.raises(MalformedInput, match="8 entries"):
        TraceCoordsY.from_sequence([1, 2, 3])


def test_shape_invariants_identity() -> None:
    """sigma_+ = sigma_- = -6 for A = B = I."""
    shape = shape_invariants(np.eye(3, dtype=complex), np.eye(3, dtype=complex))
    assert shape.sigma_plus == pytest.approx(-6.0)
    assert shape.sigma_minus == pytest.approx(-6.0)


@given(seeds)
@settings(max_examples=50, deadline=None)
def test_pants_coords_root_choice(seed: int) -> None:
    """The recorded root is tr[A, B]."""
    a, b = random_pair(seed)
    y = pants_coords(a, b)
    quad = lawton_sym(y)
    if quad.repeated():
        return
    assert rel(quad.root(y.root_choice), tr(commutator(a, b))) <= 1e-6
    assert y.y3 == pytest.approx(tr(adjugate(b @ a)))
    assert y.y7 == pytest.approx(tr(b @ a))


@given(seeds)
@settings(max_examples=50, deadline=None)
def test_cyclic_shift_keeps_quadratic(seed: int) -> None:
    """Relabelling (A, B, C) as (B, C, A) leaves S and P alone."""
    a, b = random_pair(seed)
    y = pants_coords(a, b)
    q1, q2 = lawton_sym(y), lawton_sym(cyclic_shift(y))
    assert rel(q2.S, q1.S) <= 1e-8
    assert rel(q2.P, q1.P) <= 1e-8


def test_cyclic_shift_matches_matrices() -> None:
    """cyclic_shift agrees with the coordinates of (B, C)."""
    a, b = random_pair(5)
    c = adjugate(b @ a)
    shifted = cyclic_shift(pants_coords(a, b))
    direct = pants_coords(b, c)
    assert shifted.distance(direct) <= 1e-9


@given(seeds)
@settings(max_examples=50, deadline=None)
def test_sigma_plus_is_cyclic(seed: int) -> None:
    """sigma_+ agrees on (A, B), (B, C) and (C, A)."""
    a, b = random_pair(seed)
    c = adjugate(b @ a)
    s_ab = shape_invariants(a, b).sigma_plus
    assert rel(shape_invariants(b, c).sigma_plus, s_ab) <= 1e-9
    assert rel(shape_invariants(c, a).sigma_plus, s_ab) <= 1e-9


def test_branch_factorization_identity_triple() -> None:
    """(3, 3, 3): linear root -6 and commutator trace 3."""
    bf = branch_factorization(3, 3, 3)
    assert bf.linear_root == pytest.approx(-6.0)
    assert bf.linear_commutator == pytest.approx(3.0)


def test_branch_factorization_eight() -> None:
    """(8, 8, 8): T2 roots 79 and -29."""
    bf = branch_factorization(8, 8, 8)
    assert bf.t2_roots[0] == pytest.approx(79.0)
    assert bf.t2_roots[1] == pytest.approx(-29.0)
    assert t2(8, 8, 8, 79) == pytest.approx(0.0, abs=1e-9)


@given(small, small, small, small)
@settings(max_examples=200, deadline=None)
def test_discriminant_factorization(a: complex, b: complex, c: complex, t: complex) -> None:
    """S^2 - 4P = (t + a + b + c - 3)^2 T2(t) on self-paired tuples."""
    quad = lawton_sym(self_paired_tuple(a, b, c, t))
    rhs = (t + a + b + c - 3.0) ** 2 * t2(a, b, c, t)
    scale = (1.0 + max(abs(a), abs(b), abs(c), abs(t))) ** 6
    assert abs(quad.discriminant - rhs) <= 1e-12 * scale


@given(small, small, small)
@settings(max_examples=50, deadline=None)
def test_branch_roots_give_double_root(a: complex, b: complex, c: complex) -> None:
    """On each branch the two commutator traces coincide at the listed value."""
    bf = branch_factorization(a, b, c)
    for t, comm in zip((bf.linear_root,) + bf.t2_roots, (bf.linear_commutator,) + bf.t2_commutators):
        quad = lawton_sym(self_paired_tuple(a, b, c, t))
        size = 1.0 + max(abs(a), abs(b), abs(c), abs(t))
        assert abs(quad.discriminant) <= 1e-10 * size**6
        assert abs(quad.S - 2.0 * comm) <= 1e-10 * size**3


@pytest.mark.parametrize(
    "y,expected",
    [
        (self_paired_tuple(2, 3, 4, 3 - 9), Reducibility.REDUCIBLE_BRANCH),
        (self_paired_tuple(8, 8, 8, 79), Reducibility.IRREDUCIBLE_BRANCH),
        (TraceCoordsY(1, 2, 3, 4, 5, 6, 7, 8), Reducibility.NOT_SELF_PAIRED),
    ],
)
def test_reducibility_test(y: TraceCoordsY, expected: Reducibility) -> None:
    """Linear branch, T2 branch and a generic tuple."""
    assert reducibility_test(y) is expected


@pytest.mark.parametrize(
    "x,y,z,ainvb,comm",
    [
        (2, 2, 2, 2, 2),
        (-3, -3, -3, 12, 52),
    ],
)
def test_fricke(x: float, y: float, z: float, ainvb: float, comm: float) -> None:
    """Fricke traces at the identity and at the (-3, -3, -3) pants."""
    f = fricke_sl2(x, y, z)
    assert f.tr_AinvB == pytest.approx(ainvb)
    assert f.tr_comm == pytest.approx(comm)


@given(seeds)
@settings(max_examples=50, deadline=None)
def test_fricke_matches_matrices(seed: int) -> None:
    """Fricke's formulas against explicit SL(2) matrices."""
    rng = np.random.default_rng(seed)
    ms = []
    for _ in range(2):
        m = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        ms.append(m / np.sqrt(complex(np.linalg.det(m))))
    a, b = ms
    a_inv, b_inv = np.linalg.inv(a), np.linalg.inv(b)
    f = fricke_sl2(np.trace(a), np.trace(b), np.trace(a @ b))
    assert rel(f.tr_AinvB, np.trace(a_inv @ b)) <= 1e-10 * (1.0 + np.linalg.norm(a) * np.linalg.norm(b))
    assert rel(f.tr_comm, np.trace(a @ b @ a_inv @ b_inv)) <= 1e-9 * (1.0 + np.linalg.norm(a) * np.linalg.norm(b)) ** 2


def test_root_choice_other() -> None:
    """other flips the label."""
    assert RootChoice.PLUS.other is RootChoice.MINUS
    assert RootChoice.MINUS.other is RootChoice.PLUS
