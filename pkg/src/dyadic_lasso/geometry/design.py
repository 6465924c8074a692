"""
Geometría hilbertiana empírica sobre un diseño fijo.

El producto escalar es ⟨u, v⟩ = Σ u_i v_i / n y su norma ‖h‖ = √(Σ h(x_i)²/n),
es decir, la norma L2 de la medida empírica de los puntos de diseño.

El criterio de mínimos cuadrados se guarda como γ(h) = ‖y − h‖², sin la
constante −‖y‖² de la formulación general: todos los argmin y todas las
diferencias de criterio son invariantes a ese desplazamiento.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from dyadic_lasso.errors import DimensionError, ParameterError

SampleVector = NDArray[np.float64]
"""Función evaluada en los n puntos del diseño (o las observaciones y)."""


@dataclass(frozen=True, eq=False)
class Design:
    """Puntos de diseño x_1..x_n en R^d, fijos (no aleatorios)."""

    points: NDArray[np.float64]

    def __post_init__(self) -> None:
        points = np.asarray(self.points, dtype=float)
        if points.ndim == 1:
            points = points[:, None]
        if points.ndim != 2 or points.shape[0] < 1 or points.shape[1] < 1:
            raise DimensionError(
                f"El diseño necesita al menos un punto de dimensión ≥ 1, recibido shape={points.shape}"
            )
        points.setflags(write=False)
        object.__setattr__(self, "points", points)

    @property
    def n(self) -> int:
        return int(self.points.shape[0])

    @property
    def d(self) -> int:
        return int(self.points.shape[1])

    # ==========================================
    # CONSTRUCTORES
    # ==========================================

    @classmethod
    def grid(cls, n: int) -> "Design":
        """Rejilla regular x_i = i/n en [0, 1), i = 0..n−1."""
        if n < 1:
            raise ParameterError(f"n debe ser ≥ 1, recibido {n}")
        return cls(np.arange(n, dtype=float) / n)

    @classmethod
    def uniform(cls, n: int, d: int, rng: np.random.Generator) -> "Design":
        """n puntos i.i.d. uniformes en [0, 1]^d."""
        if n < 1 or d < 1:
            raise ParameterError(f"n y d deben ser ≥ 1, recibido n={n}, d={d}")
        return cls(rng.uniform(0.0, 1.0, size=(n, d)))

    @classmethod
    def sequence(cls, p: int) -> "Design":
        """Diseño identidad del modelo de secuencia: un punto por coordenada."""
        if p < 1:
            raise ParameterError(f"p debe ser ≥ 1, recibido {p}")
        return cls(np.arange(1, p + 1, dtype=float))

    def check(self, u: ArrayLike, name: str = "u") -> SampleVector:
        """Convierte u a vector de muestra y comprueba su longitud."""
        vector = np.asarray(u, dtype=float)
        if vector.ndim != 1 or vector.shape[0] != self.n:
            raise DimensionError(
                f"{name} tiene shape {vector.shape}, el diseño espera ({self.n},)"
            )
        return vector


@dataclass(frozen=True)
class NoiseLevel:
    """Nivel de ruido ε del marco general; en regresión ε = σ/√n."""

    eps: float

    def __post_init__(self) -> None:
        if not self.eps > 0:
            raise ParameterError(f"eps debe ser > 0, recibido {self.eps}")

    @classmethod
    def from_regression(cls, sigma: float, n: int) -> "NoiseLevel":
        if n < 1:
            raise ParameterError(f"n debe ser ≥ 1, recibido {n}")
        return cls(sigma / math.sqrt(n))

    def sigma(self, n: int) -> float:
        """σ de regresión equivalente para un diseño de tamaño n."""
        return self.eps * math.sqrt(n)


# ==========================================
# PRODUCTO ESCALAR, NORMA Y CRITERIO
# ==========================================

def empirical_inner(u: ArrayLike, v: ArrayLike, design: Design) -> float:
    """⟨u, v⟩ = (1/n) Σ u_i v_i."""
    u_vec = design.check(u, "u")
    v_vec = design.check(v, "v")
    return float(np.dot(u_vec, v_vec) / design.n)


def empirical_norm(u: ArrayLike, design: Design) -> float:
    """‖u‖ = √⟨u, u⟩."""
    u_vec = design.check(u, "u")
    return float(np.sqrt(np.dot(u_vec, u_vec) / design.n))


def gamma_emp(y: ArrayLike, h: ArrayLike, design: Design) -> float:
    """Criterio de mínimos cuadrados ‖y − h‖² (sin la constante −‖y‖²)."""
    residual = design.check(y, "y") - design.check(h, "h")
    return float(np.dot(residual, residual) / design.n)
