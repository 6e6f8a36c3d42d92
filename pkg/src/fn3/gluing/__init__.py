"""
Gluing module for fn3.

- centralizer: the twist-bend / bulge-turn torus, extraction and matching conjugators
- decomposition: pants decomposition graphs and their JSON form
- assembly: surface representations, coordinate extraction and word evaluation
"""

from .centralizer import (
    CentralizerParam,
    GlueRegime,
    centralizer_element,
    extract_twist,
    glue_regime,
    in_basis,
    matching_conjugator,
)
from .decomposition import Edge, PantsDecomposition, Slot
from .assembly import (
    FNRecord,
    SurfaceRep,
    assemble_from_pants,
    assemble_surface,
    evaluate_word,
    extract_fn,
    generator_name,
    parse_word,
    relation_residuals,
    relation_scale,
    relation_words,
)

__all__ = [
    "CentralizerParam",
    "Edge",
    "FNRecord",
    "GlueRegime",
    "PantsDecomposition",
    "Slot",
    "SurfaceRep",
    "assemble_from_pants",
    "assemble_surface",
    "centralizer_element",
    "evaluate_word",
    "extract_fn",
    "extract_twist",
    "generator_name",
    "glue_regime",
    "in_basis",
    "matching_conjugator",
    "parse_word",
    "relation_residuals",
    "relation_scale",
    "relation_words",
]
