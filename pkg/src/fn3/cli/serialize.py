"""JSON forms of the library records.

Complex scalars are ``[re, im]`` (a bare number is read as real), matrices
are nested row-major lists of scalars.

Surface files hold a decomposition plus one entry per pants::

    {"pants": [{"id": 0, "coords": [...8 scalars...], "root_choice": "plus"},
               {"id": 1, "fuchsian": [-3, -3, -3]}],
     "edges": [{"a": [0, "A"], "b": [1, "A"], "u": [0.7, 0], "v": [0, 0]}, ...]}

A ``fuchsian`` entry gives SL(2,R) traces whose image under the symmetric
square is used as the pants, in its real frame.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Dict, List, Sequence, Tuple

import numpy as np

from ..gluing.assembly import FNRecord, SurfaceRep
from ..gluing.centralizer import CentralizerParam
from ..gluing.decomposition import PantsDecomposition
from ..linalg.matrix import Mat3, as_mat3
from ..pants.builder import PantsRep, SolverReport, pants_from_matrices
from ..real_forms.detection import SubgroupVerdict
from ..sl2.fuchsian import fuchsian_pants
from ..traces.coords import RootChoice, TraceCoordsY
from ..utils.errors import MalformedInput


def complex_to_json(z: complex) -> List[float]:
    z = complex(z)
    return [z.real, z.imag]


def complex_from_json(value: Any) -> complex:
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return complex(value)
    if isinstance(value, (list, tuple)) and len(value) == 2:
        try:
            return complex(float(value[0]), float(value[1]))
        except (TypeError, ValueError):
            pass
    raise MalformedInput(f"expected a scalar or [re, im], got {value!r}")


def matrix_to_json(m: np.ndarray) -> List[List[List[float]]]:
    return [[complex_to_json(z) for z in row] for row in np.asarray(m)]


def matrix_from_json(value: Any) -> Mat3:
    if not isinstance(value, list) or len(value) != 3:
        raise MalformedInput("a matrix is a list of 3 rows")
    rows = []
    for i, row in enumerate(value):
        if not isinstance(row, list) or len(row) != 3:
            raise MalformedInput(f"row {i} must have 3 entries")
        rows.append([complex_from_json(z) for z in row])
    return as_mat3(rows)


def coords_to_json(y: TraceCoordsY) -> Dict[str, Any]:
    return {"y": [complex_to_json(v) for v in y.as_tuple()], "root_choice": y.root_choice.value}


def _root_choice(value: Any) -> RootChoice:
    try:
        return RootChoice(value or "plus")
    except ValueError:
        raise MalformedInput(f"root_choice must be 'plus' or 'minus', got {value!r}")


def coords_from_json(value: Any) -> TraceCoordsY:
    """Either ``{"y": [...], "root_choice": ...}`` or a bare list of eight scalars."""
    if isinstance(value, dict):
        raw, choice = value.get("y", value.get("coords")), value.get("root_choice")
    else:
        raw, choice = value, None
    if not isinstance(raw, list):
        raise MalformedInput("coordinates must be a list of eight scalars")
    return TraceCoordsY.from_sequence([complex_from_json(v) for v in raw], _root_choice(choice))


def glue_to_json(p: CentralizerParam) -> Dict[str, Any]:
    return {
        "u": complex_to_json(p.u),
        "v": complex_to_json(p.v),
        "twist": p.twist,
        "bend": p.bend,
        "bulge": p.bulge,
        "turn": p.turn,
    }


def pants_to_json(rep: PantsRep, report: SolverReport | None = None) -> Dict[str, Any]:
    out: Dict[str, Any] = {
        "A": matrix_to_json(rep.A),
        "B": matrix_to_json(rep.B),
        "C": matrix_to_json(rep.C),
        "coords": coords_to_json(rep.coords),
        "irreducible": rep.irreducible_flag,
        "irreducibility_margin": rep.irreducibility_margin,
        "relation_residual": rep.relation_residual(),
        "provenance": dict(sorted(rep.provenance.items())),
    }
    if report is not None:
        out["solver"] = {
            "residual": report.residual,
            "iterations": report.iterations,
            "restarts": report.restarts,
            "gauge": report.gauge,
            "start": report.start,
        }
    return out


def pants_from_json(value: Dict[str, Any]) -> PantsRep:
    try:
        a, b = matrix_from_json(value["A"]), matrix_from_json(value["B"])
    except (KeyError, TypeError):
        raise MalformedInput("a pants record needs matrices 'A' and 'B'")
    choice = None
    if isinstance(value.get("coords"), dict):
        choice = _root_choice(value["coords"].get("root_choice"))
    return pants_from_matrices(a, b, {"constructor": "file"}, root_choice=choice)


def record_to_json(record: FNRecord) -> Dict[str, Any]:
    return {
        "boundaries": [
            {"tr": complex_to_json(t), "tr_inv": complex_to_json(s)} for t, s in record.boundaries
        ],
        "pants": [coords_to_json(y) for y in record.pants],
        "glue": [glue_to_json(p) for p in record.glue],
    }


def surface_to_json(rep: SurfaceRep) -> Dict[str, Any]:
    return {
        "decomposition": rep.decomposition.to_dict(),
        "root": rep.root,
        "tree_edges": list(rep.tree_edges),
        "generators": {name: matrix_to_json(m) for name, m in sorted(rep.generators.items())},
    }


def verdict_to_json(v: SubgroupVerdict) -> Dict[str, Any]:
    return {
        "tag": v.tag.value,
        "tags": [t.value for t in v.tags],
        "evidence": dict(sorted(v.evidence.items())),
        "sample_size": v.sample_size,
        "notes": list(v.notes),
    }


def surface_input(data: Any) -> Tuple[PantsDecomposition, List[Any]]:
    """Decomposition plus, per pants, either TraceCoordsY or a ready PantsRep."""
    if not isinstance(data, dict):
        raise MalformedInput("a surface file is a JSON object")
    d = PantsDecomposition.from_dict(data)
    entries: Sequence[Any] = data["pants"]
    out: List[Any] = []
    for i, entry in enumerate(entries):
        if not isinstance(entry, dict):
            raise MalformedInput(f"pants {i}: expected an object with 'coords' or 'fuchsian'")
        if "fuchsian" in entry:
            x, y, z = (complex_from_json(t) for t in entry["fuchsian"])
            a, b, _ = fuchsian_pants(x, y, z, negate=bool(entry.get("negate", False)))
            out.append(pants_from_matrices(a, b, {"constructor": "fuchsian_pants"}))
        elif "coords" in entry:
            out.append(coords_from_json({"y": entry["coords"], "root_choice": entry.get("root_choice")}))
        else:
            raise MalformedInput(f"pants {i}: needs 'coords' or 'fuchsian'")
    return d, out


def read_json(path: Path) -> Any:
    """Parse a JSON file; decoding errors become MalformedInput with the line."""
    try:
        raw = path.read_text(encoding="utf-8")
    except OSError as e:
        raise MalformedInput(f"{path}: {e.strerror or e}") from e
    try:
        return json.loads(raw)
    except json.JSONDecodeError as e:
        raise MalformedInput(f"{path}: line {e.lineno}: {e.msg}") from e


def dumps(data: Any) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def write_json(data: Any, path: Path | None) -> None:
    """Write to ``path`` or print to stdout when it is None."""
    text = dumps(data)
    if path is None:
        print(text, end="")
        return
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
