"""Bounded homotopy categories over presented parity categories, at desk scale."""

from .category import GradedObject, Morphism, PresentedCategory
from .complexes import (
    ChainMap,
    ComplexObj,
    HomComplex,
    RHom,
    ch,
    cone,
    e_plus,
    hom_complex,
    minimalize,
    single,
)
from .sl2 import sl2_costandard, sl2_parity, sl2_presentation, sl2_standard

__all__ = [
    "ChainMap",
    "ComplexObj",
    "GradedObject",
    "HomComplex",
    "Morphism",
    "PresentedCategory",
    "RHom",
    "ch",
    "cone",
    "e_plus",
    "hom_complex",
    "minimalize",
    "single",
    "sl2_costandard",
    "sl2_parity",
    "sl2_presentation",
    "sl2_standard",
]
