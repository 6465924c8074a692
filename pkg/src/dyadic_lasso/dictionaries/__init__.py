"""Construcción, normalización y truncación de diccionarios."""
from .base import (
    Dictionary,
    DictionaryFamily,
    DyadicLevels,
    dyadic_levels,
    normalize,
    truncate,
)
from .families import (
    make_fourier_grid,
    make_gaussian_design,
    make_dictionary,
    make_haar_grid,
    make_orthonormal_sequence,
)
from .heaviside import enumerate_heaviside, heaviside_patterns

__all__ = [
    "Dictionary",
    "DictionaryFamily",
    "DyadicLevels",
    "dyadic_levels",
    "enumerate_heaviside",
    "heaviside_patterns",
    "make_fourier_grid",
    "make_gaussian_design",
    "make_dictionary",
    "make_haar_grid",
    "make_orthonormal_sequence",
    "normalize",
    "truncate",
]
