"""
Diccionarios evaluados sobre el diseño: normalización, truncación y niveles diádicos.

El orden de las columnas es parte del dato: el Lasso seleccionado trunca
D_p = {φ_1, …, φ_p} siguiendo ese orden a priori.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from functools import cached_property

import numpy as np
from numpy.typing import ArrayLike, NDArray

from dyadic_lasso.errors import DegenerateDictionaryError, DimensionError, ParameterError
from dyadic_lasso.geometry import Design, SampleVector


class DictionaryFamily(str, Enum):
    """Familias de diccionario disponibles."""
    ORTHONORMAL = "orthonormal"
    HAAR = "haar"
    FOURIER = "fourier"
    GAUSSIAN = "gaussian"
    HEAVISIDE = "heaviside"
    CUSTOM = "custom"


@dataclass(frozen=True, eq=False)
class Dictionary:
    """
    Familia ordenada {φ_j} evaluada en el diseño.

    matrix[:, j] = (φ_j(x_1), …, φ_j(x_n)). Inmutable tras la construcción.
    """

    matrix: NDArray[np.float64]
    design: Design
    family: DictionaryFamily = DictionaryFamily.CUSTOM
    normalized: bool = False

    def __post_init__(self) -> None:
        matrix = np.array(self.matrix, dtype=float, copy=True)
        if matrix.ndim != 2 or matrix.shape[0] != self.design.n or matrix.shape[1] < 1:
            raise DimensionError(
                f"La matriz del diccionario tiene shape {matrix.shape}, "
                f"se esperaba ({self.design.n}, p) con p ≥ 1"
            )
        matrix.setflags(write=False)
        object.__setattr__(self, "matrix", matrix)

    @property
    def p(self) -> int:
        return int(self.matrix.shape[1])

    @property
    def n(self) -> int:
        return self.design.n

    def column(self, j: int) -> SampleVector:
        """φ_{j+1} sobre el diseño (índice base cero)."""
        return self.matrix[:, j]

    @cached_property
    def column_norms(self) -> NDArray[np.float64]:
        return np.sqrt(np.einsum("ij,ij->j", self.matrix, self.matrix) / self.n)

    @cached_property
    def gram(self) -> NDArray[np.float64]:
        """Matriz de Gram empírica G_jk = ⟨φ_j, φ_k⟩."""
        gram = self.matrix.T @ self.matrix / self.n
        gram.setflags(write=False)
        return gram

    # ==========================================
    # APLICACIONES LINEALES
    # ==========================================

    def synthesize(self, theta: ArrayLike) -> SampleVector:
        """Φθ = Σ θ_j φ_j sobre el diseño."""
        coefficients = np.asarray(theta, dtype=float)
        if coefficients.shape != (self.p,):
            raise DimensionError(f"theta tiene shape {coefficients.shape}, se esperaba ({self.p},)")
        return self.matrix @ coefficients

    def analyze(self, y: ArrayLike) -> NDArray[np.float64]:
        """Vector de correlaciones (⟨φ_j, y⟩)_j."""
        vector = self.design.check(y, "y")
        return self.matrix.T @ vector / self.n


@dataclass(frozen=True)
class DyadicLevels:
    """Niveles {1, 2, 4, …} ∩ [1, p_max], con p_max añadido si no es diádico."""

    levels: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.levels or self.levels[0] != 1:
            raise ParameterError("Los niveles diádicos deben empezar en 1")
        if any(b <= a for a, b in zip(self.levels, self.levels[1:])):
            raise ParameterError("Los niveles diádicos deben ser estrictamente crecientes")

    def __iter__(self):
        return iter(self.levels)

    def __len__(self) -> int:
        return len(self.levels)

    @property
    def p_max(self) -> int:
        return self.levels[-1]


# ==========================================
# OPERACIONES
# ==========================================

def normalize(dictionary: Dictionary) -> Dictionary:
    """Divide cada columna por su norma empírica: ‖φ_j‖ = 1 para todo j."""
    norms = dictionary.column_norms
    zero = np.flatnonzero(norms == 0.0)
    if zero.size:
        raise DegenerateDictionaryError(int(zero[0]))
    return replace(dictionary, matrix=dictionary.matrix / norms, normalized=True)


def truncate(dictionary: Dictionary, p: int) -> Dictionary:
    """D_p = {φ_1, …, φ_p}, conservando el orden."""
    if not 1 <= p <= dictionary.p:
        raise ParameterError(f"p debe estar en [1, {dictionary.p}], recibido {p}")
    if p == dictionary.p:
        return dictionary
    return replace(dictionary, matrix=dictionary.matrix[:, :p])


def dyadic_levels(p_max: int) -> DyadicLevels:
    """Niveles {2^J} ∩ [1, p_max], añadiendo p_max cuando no es potencia de dos."""
    if p_max < 1:
        raise ParameterError(f"p_max debe ser ≥ 1, recibido {p_max}")
    levels = []
    level = 1
    while level <= p_max:
        levels.append(level)
        level *= 2
    if levels[-1] != p_max:
        levels.append(p_max)
    return DyadicLevels(tuple(levels))
