"""Primitivas hilbertianas empíricas y generación de datos."""
from .design import (
    Design,
    NoiseLevel,
    SampleVector,
    empirical_inner,
    empirical_norm,
    gamma_emp,
)
from .sampling import RandomStream, derive_stream, sample_regression, sample_sequence_model

__all__ = [
    "Design",
    "NoiseLevel",
    "SampleVector",
    "RandomStream",
    "derive_stream",
    "empirical_inner",
    "empirical_norm",
    "gamma_emp",
    "sample_regression",
    "sample_sequence_model",
]
