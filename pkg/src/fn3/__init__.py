"""fn3 - Fenchel-Nielsen coordinates for surface group representations into SL(3, C)."""

__version__ = "0.1.0"

from .gluing import PantsDecomposition, assemble_surface, evaluate_word, extract_fn
from .pants import build_pants
from .traces import TraceCoordsY

__all__ = [
    "PantsDecomposition",
    "TraceCoordsY",
    "assemble_surface",
    "build_pants",
    "evaluate_word",
    "extract_fn",
]
