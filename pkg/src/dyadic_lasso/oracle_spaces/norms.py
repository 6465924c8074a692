"""
Normas de secuencia que certifican la pertenencia de un objetivo.

    besov:   sup_J (J^{2r} Σ_{j≥J} θ_j²)^{1/2}
    strong:  (Σ |θ_j|^q)^{1/q}
    weak:    sup_k k^{1/q} |θ|_(k),  |θ|_(k) la k-ésima mayor magnitud

Las secuencias son finitas; la cola más allá de su longitud es nula.
"""
import numpy as np
from numpy.typing import ArrayLike

from dyadic_lasso.errors import ParameterError


def besov_norm(theta: ArrayLike, r: float) -> float:
    """Raíz de sup_{J ≥ 1} J^{2r} Σ_{j ≥ J} θ_j²."""
    squares = np.asarray(theta, dtype=float).ravel() ** 2
    if squares.size == 0:
        return 0.0
    tails = np.cumsum(squares[::-1])[::-1]
    weights = np.arange(1, squares.size + 1, dtype=float) ** (2.0 * r)
    return float(np.sqrt(np.max(weights * tails)))


def strong_lq_norm(theta: ArrayLike, q: float) -> float:
    """(Σ |θ_j|^q)^{1/q}."""
    if not q > 0:
        raise ParameterError(f"q debe ser > 0, recibido {q}")
    magnitudes = np.abs(np.asarray(theta, dtype=float).ravel())
    return float(np.sum(magnitudes ** q) ** (1.0 / q))


def weak_lq_norm(theta: ArrayLike, q: float) -> float:
    """max_k k^{1/q}·|θ|_(k): supremo exacto de la definición discreta."""
    if not q > 0:
        raise ParameterError(f"q debe ser > 0, recibido {q}")
    magnitudes = np.sort(np.abs(np.asarray(theta, dtype=float).ravel()))[::-1]
    if magnitudes.size == 0:
        return 0.0
    ranks = np.arange(1, magnitudes.size + 1, dtype=float)
    return float(np.max(ranks ** (1.0 / q) * magnitudes))
