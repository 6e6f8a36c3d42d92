"""Trace coordinates of a two-generator group.

Raw coordinates (Lawton):
    x1 = tr A,    x2 = tr B,    x3 = tr AB,      x4 = tr A^-1 B,
    x5 = tr A^-1, x6 = tr B^-1, x7 = tr B^-1A^-1, x8 = tr B^-1 A.

Pants coordinates, with C = (BA)^-1:
    y1 = tr A, y2 = tr B, y3 = tr C, y4 = sigma_+,
    y5 = tr A^-1, y6 = tr B^-1, y7 = tr C^-1, y8 = sigma_-.
"""

from __future__ import annotations

from dataclasses import dataclass, fields, replace
from enum import Enum
from typing import Sequence, Tuple

import numpy as np

from ..linalg.matrix import Mat3, adjugate, tr
from ..utils.errors import MalformedInput


class RootChoice(Enum):
    """Which root of the commutator quadratic is tr[A, B].

    PLUS is the lexicographically larger root in (Re, Im).
    """

    PLUS = "plus"
    MINUS = "minus"

    @property
    def other(self) -> "RootChoice":
        return RootChoice.MINUS if self is RootChoice.PLUS else RootChoice.PLUS


def _eight(values: Sequence[complex], name: str) -> Tuple[complex, ...]:
    vals = tuple(complex(v) for v in values)
    if len(vals) != 8:
        raise MalformedInput(f"{name} needs 8 entries, got {len(vals)}")
    if not all(np.isfinite(v) for v in vals):
        raise MalformedInput(f"{name} has non-finite entries")
    return vals


@dataclass(frozen=True)
class TraceCoordsX:
    x1: complex
    x2: complex
    x3: complex
    x4: complex
    x5: complex
    x6: complex
    x7: complex
    x8: complex

    @classmethod
    def from_sequence(cls, values: Sequence[complex]) -> "TraceCoordsX":
        return cls(*_eight(values, "TraceCoordsX"))

    def as_tuple(self) -> Tuple[complex, ...]:
        return tuple(getattr(self, f.name) for f in fields(self))


@dataclass(frozen=True)
class TraceCoordsY:
    y1: complex
    y2: complex
    y3: complex
    y4: complex
    y5: complex
    y6: complex
    y7: complex
    y8: complex
    root_choice: RootChoice = RootChoice.PLUS

    @classmethod
    def from_sequence(
        cls, values: Sequence[complex], root_choice: RootChoice = RootChoice.PLUS
    ) -> "TraceCoordsY":
        return cls(*_eight(values, "TraceCoordsY"), root_choice=root_choice)

    def as_tuple(self) -> Tuple[complex, ...]:
        return (
            self.y1,
            self.y2,
            self.y3,
            self.y4,
            self.y5,
            self.y6,
            self.y7,
            self.y8,
        )

    def boundary(self, slot: int) -> Tuple[complex, complex]:
        """(tr, tr of inverse) of boundary slot 0 (A), 1 (B) or 2 (C)."""
        pairs = ((self.y1, self.y5), (self.y2, self.y6), (self.y3, self.y7))
        return pairs[slot]

    def with_choice(self, root_choice: RootChoice) -> "TraceCoordsY":
        return replace(self, root_choice=root_choice)

    def distance(self, other: "TraceCoordsY") -> float:
        """Largest entrywise difference relative to 1 + |entry|."""
        return max(
            abs(a - b) / (1.0 + abs(a))
            for a, b in zip(self.as_tuple(), other.as_tuple())
        )


def x_from_y(y: TraceCoordsY) -> TraceCoordsX:
    return TraceCoordsX(
        x1=y.y1,
        x2=y.y2,
        x3=y.y7,
        x4=y.y4 + y.y2 * y.y5,
        x5=y.y5,
        x6=y.y6,
        x7=y.y3,
        x8=y.y8 + y.y1 * y.y6,
    )


def y_from_x(x: TraceCoordsX, root_choice: RootChoice = RootChoice.PLUS) -> TraceCoordsY:
    return TraceCoordsY(
        y1=x.x1,
        y2=x.x2,
        y3=x.x7,
        y4=x.x4 - x.x2 * x.x5,
        y5=x.x5,
        y6=x.x6,
        y7=x.x3,
        y8=x.x8 - x.x1 * x.x6,
        root_choice=root_choice,
    )


def x_from_matrices(a: Mat3, b: Mat3) -> TraceCoordsX:
    a_inv, b_inv = adjugate(a), adjugate(b)
    return TraceCoordsX(
        x1=tr(a),
        x2=tr(b),
        x3=tr(a @ b),
        x4=tr(a_inv @ b),
        x5=tr(a_inv),
        x6=tr(b_inv),
        x7=tr(b_inv @ a_inv),
        x8=tr(b_inv @ a),
    )


def cyclic_shift(y: TraceCoordsY) -> TraceCoordsY:
    """Coordinates of the relabelled triple (B, C, A)."""
    return TraceCoordsY(
        y1=y.y2,
        y2=y.y3,
        y3=y.y1,
        y4=y.y4,
        y5=y.y6,
        y6=y.y7,
        y7=y.y5,
        y8=y.y8,
        root_choice=y.root_choice,
    )
