from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Dict, Optional

from ..utils.errors import MalformedInput

log = logging.getLogger(__name__)

DEFAULT_TOLERANCES: Dict[str, float] = {
    "unimodular": 1e-9,
    "classify": 1e-9,
    "self_pairing": 1e-8,
    "residual": 1e-8,
    "detect": 1e-8,
    "relation": 1e-8,
    "roundtrip": 1e-6,
    "scan": 1e-5,
}

DEFAULT_SAMPLES: Dict[str, int] = {
    "lawton": 1000,
    "factorization": 1000,
    "pants": 200,
    "phi": 1000,
    "fuchsian": 100,
    "reducible": 100,
    "su21": 200,
    "goldman": 200,
    "surface": 20,
    "detection": 500,
    "classification": 1000,
}

QUICK_DIVISOR = 10


@dataclass(frozen=True)
class RunConfig:
    """Seed, tolerances and sample counts for a run.

    Identical configs give byte-identical reports.
    """

    seed: int = 0
    tolerances: Dict[str, float] = field(default_factory=lambda: dict(DEFAULT_TOLERANCES))
    sample_counts: Dict[str, int] = field(default_factory=lambda: dict(DEFAULT_SAMPLES))
    output: Optional[Path] = None

    def __post_init__(self) -> None:
        for name, value in self.tolerances.items():
            if not value > 0:
                raise MalformedInput(f"tolerance {name!r} must be positive, got {value}")
        for name, value in self.sample_counts.items():
            if value < 1:
                raise MalformedInput(f"sample count {name!r} must be at least 1, got {value}")

    @classmethod
    def load(cls, path: Optional[Path]) -> "RunConfig":
        """Read a JSON config; a missing file gives the defaults."""
        if path is None or not path.exists():
            return cls()
        try:
            data = json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as e:
            raise MalformedInput(f"{path}: line {e.lineno}: {e.msg}") from e
        if not isinstance(data, dict):
            raise MalformedInput(f"{path}: expected a JSON object")
        return cls.from_dict(data)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "RunConfig":
        unknown = set(data) - {"seed", "tolerances", "sample_counts", "output"}
        if unknown:
            raise MalformedInput(f"unknown config keys: {sorted(unknown)}")
        try:
            tolerances = dict(DEFAULT_TOLERANCES)
            tolerances.update({k: float(v) for k, v in data.get("tolerances", {}).items()})
            samples = dict(DEFAULT_SAMPLES)
            samples.update({k: int(v) for k, v in data.get("sample_counts", {}).items()})
            seed = int(data.get("seed", 0))
        except (TypeError, ValueError, AttributeError) as e:
            raise MalformedInput(f"bad config value: {e}") from e
        output = data.get("output")
        return cls(
            seed=seed,
            tolerances=tolerances,
            sample_counts=samples,
            output=Path(output) if output else None,
        )

    def with_overrides(
        self,
        seed: Optional[int] = None,
        tol: Optional[Dict[str, float]] = None,
        out: Optional[Path] = None,
        quick: bool = False,
    ) -> "RunConfig":
        """Apply command-line flags on top of the file values."""
        tolerances = dict(self.tolerances)
        tolerances.update(tol or {})
        samples = dict(self.sample_counts)
        if quick:
            samples = {k: max(1, v // QUICK_DIVISOR) for k, v in samples.items()}
        return replace(
            self,
            seed=self.seed if seed is None else seed,
            tolerances=tolerances,
            sample_counts=samples,
            output=out if out is not None else self.output,
        )

    def tol(self, name: str) -> float:
        if name not in self.tolerances:
            raise MalformedInput(f"unknown tolerance {name!r}")
        return self.tolerances[name]

    def samples(self, suite: str) -> int:
        return self.sample_counts.get(suite, 1)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "seed": self.seed,
            "tolerances": dict(sorted(self.tolerances.items())),
            "sample_counts": dict(sorted(self.sample_counts.items())),
            "output": str(self.output) if self.output else None,
        }


def parse_tol(items: Optional[list]) -> Dict[str, float]:
    """``NAME=VAL`` pairs from repeated --tol flags."""
    out: Dict[str, float] = {}
    for item in items or []:
        name, sep, value = item.partition("=")
        if not sep or not name:
            raise MalformedInput(f"--tol expects NAME=VAL, got {item!r}")
        if name not in DEFAULT_TOLERANCES:
            raise MalformedInput(f"unknown tolerance {name!r}; known: {', '.join(sorted(DEFAULT_TOLERANCES))}")
        try:
            out[name] = float(value)
        except ValueError as e:
            raise MalformedInput(f"--tol {name}: {e}") from e
    log.debug("tolerance overrides %s", out)
    return out
