"""Commutator trace polynomials.

``lawton_raw`` evaluates S0 and P0 in the raw coordinates x; ``lawton_sym``
evaluates S and P in the pants coordinates y. The two roots of
X^2 - S X + P are tr[A, B] and tr[B, A].

Both polynomials are stored as monomial tables (coefficient, variable
indices) grouped line by line and summed with ``math.fsum`` on the real and
imaginary parts separately; the sixty-odd terms of P0 otherwise lose several
digits once the traces reach O(10).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence, Tuple

from .coords import RootChoice, TraceCoordsX, TraceCoordsY

Monomial = Tuple[float, Tuple[int, ...]]

S0_TERMS: Tuple[Monomial, ...] = (
    (1, (1, 5)), (1, (2, 6)), (1, (3, 7)), (1, (4, 8)), (1, (1, 2, 5, 6)),
    (-1, (1, 2, 7)), (-1, (1, 4, 6)), (-1, (2, 5, 8)), (-1, (3, 5, 6)),
    (-3, ()),
)  # fmt: skip

P0_LINES: Tuple[Tuple[Monomial, ...], ...] = (
    ((1, (1, 1, 2, 5, 5, 6)), (1, (1, 2, 2, 5, 6, 6)), (1, (1, 1, 2, 2, 3)),
     (1, (5, 5, 6, 6, 7)), (1, (1, 1, 6, 6, 8)), (1, (2, 2, 4, 5, 5))),
    ((-1, (1, 1, 2, 5, 7)), (-1, (1, 3, 5, 5, 6)), (-1, (1, 1, 4, 5, 6)),
     (-1, (1, 2, 5, 5, 8))),
    ((-1, (2, 2, 5, 6, 8)), (-1, (1, 2, 4, 6, 6)), (-1, (1, 2, 2, 6, 7)),
     (-1, (2, 3, 5, 6, 6))),
    ((-1, (1, 1, 1, 2, 6)), (-1, (2, 5, 5, 5, 6)), (-1, (1, 2, 2, 2, 5)),
     (-1, (1, 5, 6, 6, 6))),
    ((-1, (1, 2, 3, 4, 5)), (-1, (1, 5, 6, 7, 8)), (-1, (1, 2, 3, 6, 8)),
     (-1, (2, 4, 5, 6, 7))),
    ((1, (1, 1, 2, 8)), (1, (4, 5, 5, 6)), (1, (1, 1, 3, 6)), (1, (2, 5, 5, 7)),
     (1, (1, 1, 4, 7)), (1, (3, 5, 5, 8))),
    ((1, (1, 2, 2, 4)), (1, (5, 6, 6, 8)), (1, (2, 2, 3, 5)), (1, (1, 6, 6, 7)),
     (1, (2, 2, 7, 8)), (1, (3, 4, 6, 6))),
    ((1, (3, 3, 4, 5)), (1, (1, 7, 7, 8)), (1, (3, 3, 6, 8)), (1, (2, 4, 7, 7))),
    ((1, (1, 3, 4, 4)), (1, (5, 7, 8, 8)), (1, (4, 4, 6, 7)), (1, (2, 3, 8, 8))),
    ((-2, (1, 2, 3, 3)), (-2, (5, 6, 7, 7)), (-2, (2, 4, 4, 5)), (-2, (1, 6, 8, 8))),
    ((1, (1, 2, 5, 6)), (1, (1, 3, 5, 7)), (1, (1, 4, 5, 8))),
    ((1, (2, 3, 6, 7)), (1, (2, 4, 6, 8)), (1, (3, 4, 7, 8))),
    tuple((1, (i, i, i)) for i in range(1, 9)),
    ((-3, (1, 3, 8)), (-3, (4, 5, 7)), (-3, (2, 3, 4)), (-3, (6, 7, 8))),
    ((3, (1, 4, 6)), (3, (2, 5, 8)), (3, (1, 2, 7)), (3, (3, 5, 6))),
    ((-6, (1, 5)), (-6, (2, 6)), (-6, (3, 7)), (-6, (4, 8)), (9, ())),
)  # fmt: skip

S_TERMS: Tuple[Monomial, ...] = (
    (1, (1, 5)), (1, (2, 6)), (1, (3, 7)), (1, (4, 8)),
    (-1, (1, 2, 3)), (-1, (5, 6, 7)), (-3, ()),
)  # fmt: skip

# The y8 line holds y5^2 y7 y8; the variant with y3 y5^2 y6 breaks the
# agreement with P0 and the duality y_i <-> y_{i+4}.
P_LINES: Tuple[Tuple[Monomial, ...], ...] = (
    ((1, (1, 2, 3, 5, 6, 7)),),
    ((1, (1, 1, 2, 2, 7)), (1, (3, 5, 5, 6, 6)), (1, (1, 1, 3, 3, 6)),
     (1, (2, 5, 5, 7, 7)), (1, (2, 2, 3, 3, 5)), (1, (1, 6, 6, 7, 7))),
    ((1, (1, 2, 5, 6)), (1, (2, 3, 6, 7)), (1, (1, 3, 5, 7))),
    ((-2, (1, 2, 7, 7)), (-2, (3, 3, 5, 6)), (-2, (1, 3, 6, 6)),
     (-2, (2, 2, 5, 7)), (-2, (2, 3, 5, 5)), (-2, (1, 1, 6, 7))),
    ((1, (1, 1, 1)), (1, (2, 2, 2)), (1, (3, 3, 3)),
     (1, (5, 5, 5)), (1, (6, 6, 6)), (1, (7, 7, 7))),
    ((3, (1, 2, 3)), (3, (5, 6, 7)), (-6, (1, 5)), (-6, (2, 6)), (-6, (3, 7))),
    ((1, (1, 2, 4, 5, 7)), (1, (1, 3, 4, 6, 7)), (1, (2, 3, 4, 5, 6))),
    ((1, (1, 2, 2, 4)), (1, (4, 5, 5, 6)), (1, (1, 1, 3, 4)),
     (1, (4, 5, 7, 7)), (1, (2, 3, 3, 4)), (1, (4, 6, 6, 7))),
    ((1, (1, 3, 5, 6, 8)), (1, (2, 3, 5, 7, 8)), (1, (1, 2, 6, 7, 8))),
    ((1, (5, 6, 6, 8)), (1, (1, 1, 2, 8)), (1, (5, 5, 7, 8)),
     (1, (1, 3, 3, 8)), (1, (6, 7, 7, 8)), (1, (2, 2, 3, 8))),
    ((1, (1, 4, 4, 7)), (1, (2, 4, 4, 5)), (1, (3, 4, 4, 6)),
     (-3, (1, 7, 8)), (-3, (2, 5, 8)), (-3, (3, 6, 8))),
    ((1, (1, 6, 8, 8)), (1, (2, 7, 8, 8)), (1, (3, 5, 8, 8)),
     (-3, (1, 4, 6)), (-3, (2, 4, 7)), (-3, (3, 4, 5))),
    ((1, (1, 4, 5, 8)), (1, (2, 4, 6, 8)), (1, (3, 4, 7, 8)), (-6, (4, 8))),
    ((1, (4, 4, 4)), (1, (8, 8, 8)), (9, ())),
)  # fmt: skip


def _fsum(values: Sequence[complex]) -> complex:
    return complex(
        math.fsum(v.real for v in values), math.fsum(v.imag for v in values)
    )


def _monomial(coef: float, indices: Tuple[int, ...], v: Tuple[complex, ...]) -> complex:
    out = complex(coef)
    for i in indices:
        out *= v[i - 1]
    return out


def evaluate(terms: Sequence[Monomial], v: Tuple[complex, ...]) -> complex:
    return _fsum([_monomial(c, ix, v) for c, ix in terms])


def evaluate_lines(lines: Sequence[Sequence[Monomial]], v: Tuple[complex, ...]) -> complex:
    return _fsum([evaluate(line, v) for line in lines])


def quadratic_roots(s: complex, p: complex) -> Tuple[complex, complex]:
    """Roots of X^2 - s X + p, computed without cancellation."""
    disc = cmath.sqrt(s * s - 4.0 * p)
    q = (s + disc) / 2.0 if abs(s + disc) >= abs(s - disc) else (s - disc) / 2.0
    if q == 0:
        return 0j, 0j
    return q, p / q


def lex_greater(a: complex, b: complex, tol: float = 1e-12) -> bool:
    """Lexicographic (Re, Im) comparison with a tolerance on equal real parts."""
    scale = max(1.0, abs(a), abs(b))
    if abs(a.real - b.real) > tol * scale:
        return a.real > b.real
    return a.imag > b.imag


@dataclass(frozen=True)
class CommutatorQuadratic:
    """X^2 - S X + P, whose roots are tr[A, B] and tr[B, A]."""

    S: complex
    P: complex
    roots: Tuple[complex, complex]

    @classmethod
    def from_sp(cls, s: complex, p: complex) -> "CommutatorQuadratic":
        r1, r2 = quadratic_roots(s, p)
        if lex_greater(r2, r1):
            r1, r2 = r2, r1
        return cls(S=s, P=p, roots=(r1, r2))

    @property
    def plus(self) -> complex:
        return self.roots[0]

    @property
    def minus(self) -> complex:
        return self.roots[1]

    @property
    def discriminant(self) -> complex:
        return self.S * self.S - 4.0 * self.P

    def root(self, choice: RootChoice) -> complex:
        return self.plus if choice is RootChoice.PLUS else self.minus

    def repeated(self, tol: float = 1e-8) -> bool:
        return abs(self.plus - self.minus) <= tol * max(1.0, abs(self.plus))

    def branch_of(self, value: complex) -> RootChoice:
        """Label of the root nearest to ``value``."""
        if abs(value - self.plus) <= abs(value - self.minus):
            return RootChoice.PLUS
        return RootChoice.MINUS

    def residual(self) -> float:
        return max(
            abs(r * r - self.S * r + self.P) / max(1.0, abs(self.P)) for r in self.roots
        )


def lawton_raw(x: TraceCoordsX) -> Tuple[complex, complex]:
    """(S0, P0): sum and product of tr[A, B] and tr[B, A] from raw traces."""
    v = x.as_tuple()
    return evaluate(S0_TERMS, v), evaluate_lines(P0_LINES, v)


def lawton_sym_sp(y: TraceCoordsY) -> Tuple[complex, complex]:
    v = y.as_tuple()
    return evaluate(S_TERMS, v), evaluate_lines(P_LINES, v)


def lawton_sym(y: TraceCoordsY) -> CommutatorQuadratic:
    s, p = lawton_sym_sp(y)
    return CommutatorQuadratic.from_sp(s, p)
