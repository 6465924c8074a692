"""
Enumeración exacta del diccionario de crestas de Heaviside sobre el diseño.

φ_{a,b}(x) = 1{⟨a, x⟩ + b > 0}. Sobre n puntos fijos solo hay un número finito
de comportamientos distintos (a lo sumo (n+1)^{d+1}); se enumeran todos.

Para una dirección a fija, los patrones realizables son los cortes de la
ordenación de las proyecciones ⟨a, x_i⟩. Esa ordenación solo cambia en las
direcciones críticas ortogonales a x_j − x_i, así que basta con una dirección
interior por cada arco entre direcciones críticas consecutivas.

Orden de las columnas: dirección por ángulo creciente, umbral creciente,
primera aparición de cada patrón.
"""
from __future__ import annotations

import math

import numpy as np
from numpy.typing import NDArray

from dyadic_lasso.errors import UnsupportedDimensionError
from dyadic_lasso.geometry import Design
from dyadic_lasso.logging import get_logger

from .base import Dictionary, DictionaryFamily, normalize

logger = get_logger(__name__)


def _directions(design: Design) -> NDArray[np.float64]:
    """Una dirección por celda de la partición del círculo en direcciones críticas."""
    if design.d == 1:
        return np.array([[1.0], [-1.0]])

    points = design.points
    i, j = np.triu_indices(design.n, k=1)
    deltas = points[j] - points[i]
    deltas = deltas[np.any(deltas != 0.0, axis=1)]
    if deltas.size == 0:
        return np.array([[1.0, 0.0], [-1.0, 0.0]])

    normal = np.arctan2(deltas[:, 1], deltas[:, 0]) + math.pi / 2
    critical = np.unique(np.mod(np.concatenate([normal, normal + math.pi]), 2 * math.pi))
    following = np.append(critical[1:], critical[0] + 2 * math.pi)
    angles = (critical + following) / 2
    return np.column_stack([np.cos(angles), np.sin(angles)])


def heaviside_patterns(design: Design) -> NDArray[np.float64]:
    """
    Todas las columnas 0/1 distintas y no nulas x ↦ 1{⟨a, x⟩ + b > 0}, sin normalizar.

    Raises:
        UnsupportedDimensionError: si d > 2
    """
    if design.d > 2:
        raise UnsupportedDimensionError(
            f"La enumeración de Heaviside solo admite d ∈ {{1, 2}}, recibido d={design.d}"
        )

    seen: dict[bytes, NDArray[np.bool_]] = {}
    for direction in _directions(design):
        projections = design.points @ direction
        levels = np.unique(projections)
        thresholds = np.concatenate(
            [[levels[0] - 1.0], (levels[:-1] + levels[1:]) / 2, [levels[-1] + 1.0]]
        )
        patterns = projections[:, None] > thresholds[None, :]
        for column in patterns.T:
            if column.any():
                seen.setdefault(column.tobytes(), column)

    matrix = np.column_stack(list(seen.values())).astype(float)
    bound = (design.n + 1) ** (design.d + 1)
    logger.debug(f"Heaviside: {matrix.shape[1]} patrones distintos (cota {bound})")
    return matrix


def enumerate_heaviside(design: Design) -> Dictionary:
    """Diccionario de Heaviside enumerado, deduplicado y normalizado."""
    raw = Dictionary(heaviside_patterns(design), design, DictionaryFamily.HEAVISIDE)
    return normalize(raw)
