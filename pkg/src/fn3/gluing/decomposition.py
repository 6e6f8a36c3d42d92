"""Pants decomposition graphs."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from ..utils.errors import DecompositionInvalid
from .centralizer import CentralizerParam

Slot = Tuple[int, int]

SLOT_NAMES = ("A", "B", "C")


def _slot(value: Any) -> Slot:
    try:
        pid, slot = value
    except (TypeError, ValueError):
        raise DecompositionInvalid(f"slot must be [pants, slot], got {value!r}")
    if isinstance(slot, str):
        if slot not in SLOT_NAMES:
            raise DecompositionInvalid(f"unknown slot name {slot!r}")
        slot = SLOT_NAMES.index(slot)
    return int(pid), int(slot)


def _complex(value: Any) -> complex:
    if value is None:
        return 0j
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return complex(float(value[0]), float(value[1]))
    if isinstance(value, (int, float)):
        return complex(value)
    raise DecompositionInvalid(f"expected [re, im], got {value!r}")


@dataclass(frozen=True)
class Edge:
    """Boundary ``a`` glued to boundary ``b``; ``glue`` is read from a towards b."""

    a: Slot
    b: Slot
    glue: CentralizerParam = field(default_factory=CentralizerParam)

    @property
    def is_self_edge(self) -> bool:
        return self.a[0] == self.b[0]

    def flipped(self) -> "Edge":
        return Edge(a=self.b, b=self.a, glue=self.glue.reversed())

    def with_glue(self, glue: CentralizerParam) -> "Edge":
        return Edge(a=self.a, b=self.b, glue=glue)


@dataclass(frozen=True)
class PantsDecomposition:
    pants: Tuple[int, ...]
    edges: Tuple[Edge, ...]

    @property
    def genus(self) -> int:
        """Genus of the closed surface with this many pants."""
        return len(self.pants) // 2 + 1

    def free_slots(self) -> List[Slot]:
        used = {s for e in self.edges for s in (e.a, e.b)}
        return [(p, k) for p in self.pants for k in range(3) if (p, k) not in used]

    def validate(self, require_closed: bool = True) -> "PantsDecomposition":
        """Raises DecompositionInvalid on a malformed graph; returns self otherwise."""
        n = len(self.pants)
        if n == 0:
            raise DecompositionInvalid("decomposition has no pants")
        if tuple(self.pants) != tuple(range(n)):
            raise DecompositionInvalid(f"pants ids must be 0..{n - 1}, got {list(self.pants)}")

        seen: Dict[Slot, int] = {}
        for i, e in enumerate(self.edges):
            for s in (e.a, e.b):
                if s[0] not in range(n) or s[1] not in range(3):
                    raise DecompositionInvalid(f"edge {i} refers to missing slot {s}")
                if s in seen:
                    raise DecompositionInvalid(f"slot {s} used by edges {seen[s]} and {i}")
                seen[s] = i

        if require_closed:
            if len(seen) != 3 * n:
                raise DecompositionInvalid(f"free boundary slots {self.free_slots()}")
            if n % 2 or n < 2:
                raise DecompositionInvalid(f"a closed surface needs 2g - 2 pants, got {n}")
            if len(self.edges) != 3 * self.genus - 3:
                raise DecompositionInvalid(
                    f"genus {self.genus} needs {3 * self.genus - 3} edges, got {len(self.edges)}"
                )

        reached = {p for p, _ in self.spanning_tree(0)[1]} | {0}
        if len(reached) != n:
            missing = sorted(set(self.pants) - reached)
            raise DecompositionInvalid(f"pants {missing} are not connected to pants 0")
        return self

    def spanning_tree(self, root: int = 0) -> Tuple[List[int], List[Tuple[int, int]]]:
        """Breadth-first tree from ``root``, edges in id order.

        Returns the tree edge ids and the visit list of (pants, via edge).
        Self-edges never enter the tree.
        """
        adjacency: Dict[int, List[Tuple[int, int]]] = {p: [] for p in self.pants}
        for i, e in enumerate(self.edges):
            if e.is_self_edge:
                continue
            adjacency.setdefault(e.a[0], []).append((i, e.b[0]))
            adjacency.setdefault(e.b[0], []).append((i, e.a[0]))

        visited = {root}
        tree: List[int] = []
        order: List[Tuple[int, int]] = []
        queue = deque([root])
        while queue:
            p = queue.popleft()
            for i, q in adjacency.get(p, []):
                if q in visited:
                    continue
                visited.add(q)
                tree.append(i)
                order.append((q, i))
                queue.append(q)
        return tree, order

    def to_dict(self) -> Dict[str, Any]:
        return {
            "genus": self.genus,
            "pants": list(self.pants),
            "edges": [
                {
                    "a": list(e.a),
                    "b": list(e.b),
                    "u": [e.glue.u.real, e.glue.u.imag],
                    "v": [e.glue.v.real, e.glue.v.imag],
                }
                for e in self.edges
            ],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "PantsDecomposition":
        try:
            pants = data["pants"]
            raw_edges = data["edges"]
        except (KeyError, TypeError):
            raise DecompositionInvalid("decomposition needs 'pants' and 'edges'")
        if pants and isinstance(pants[0], dict):
            ids = tuple(int(p["id"]) for p in pants)
        else:
            ids = tuple(int(p) for p in pants)
        edges = tuple(
            Edge(
                a=_slot(e["a"]),
                b=_slot(e["b"]),
                glue=CentralizerParam(_complex(e.get("u")), _complex(e.get("v"))),
            )
            for e in raw_edges
        )
        return cls(pants=ids, edges=edges)

    @classmethod
    def doubled(cls, glue: Optional[List[CentralizerParam]] = None) -> "PantsDecomposition":
        """Genus two from two pants glued slot to slot."""
        glue = glue or [CentralizerParam()] * 3
        return cls(
            pants=(0, 1),
            edges=tuple(Edge(a=(0, k), b=(1, k), glue=glue[k]) for k in range(3)),
        )

    @classmethod
    def handle(cls, glue: Optional[CentralizerParam] = None) -> "PantsDecomposition":
        """One-holed torus: slot A of a single pants glued to its slot B."""
        return cls(pants=(0,), edges=(Edge(a=(0, 0), b=(0, 1), glue=glue or CentralizerParam()),))
