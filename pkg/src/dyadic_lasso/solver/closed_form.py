"""
Formas cerradas en el caso ortonormal.

- Lasso: umbral suave a λ/2 coordenada a coordenada.
- K-funcional K(f, δ) = inf_θ ‖f − θ‖ + δ‖θ‖₁: el minimizador es θ = S(f, δρ)
  con ρ = ‖f − θ‖, punto fijo escalar resuelto por Brent sobre ρ ∈ (0, ‖f‖].
"""
from __future__ import annotations

import math

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.optimize import brentq

from dyadic_lasso.errors import ParameterError


def soft_threshold(values: ArrayLike, threshold: float) -> NDArray[np.float64]:
    """sign(v)·max(|v| − t, 0)."""
    array = np.asarray(values, dtype=float)
    return np.sign(array) * np.maximum(np.abs(array) - threshold, 0.0)


def soft_threshold_fit(y_coeffs: ArrayLike, lam: float) -> NDArray[np.float64]:
    """
    Lasso en una base ortonormal: θ_j = sign(y_j)·max(|y_j| − λ/2, 0).

    Examples:
        >>> soft_threshold_fit([3.0, 0.4, -3.0], 2.0)
        array([ 2.,  0., -2.])
    """
    if lam < 0:
        raise ParameterError(f"lambda debe ser ≥ 0, recibido {lam}")
    return soft_threshold(y_coeffs, lam / 2.0)


def k_functional_orthonormal(
    f_coeffs: ArrayLike,
    delta: float,
    tol: float = 1e-12,
) -> tuple[float, NDArray[np.float64]]:
    """
    K(f, δ) = inf_θ (‖f − θ‖ + δ‖θ‖₁) en representación ortonormal.

    Args:
        f_coeffs: Coeficientes de f
        delta: δ ≥ 0
        tol: Tolerancia absoluta en ρ

    Returns:
        (K, θ) con θ el minimizador
    """
    if delta < 0:
        raise ParameterError(f"delta debe ser ≥ 0, recibido {delta}")
    f = np.asarray(f_coeffs, dtype=float).ravel()
    magnitudes = np.abs(f)
    nonzero = magnitudes[magnitudes > 0]

    # Si δ√k ≤ 1 el punto fijo es ρ = 0: θ = f
    if delta == 0.0 or nonzero.size == 0 or delta * math.sqrt(nonzero.size) <= 1.0:
        theta = f.copy()
        return float(delta * np.sum(magnitudes)), theta

    norm = float(np.linalg.norm(f))

    def excess(rho: float) -> float:
        return float(np.linalg.norm(np.minimum(magnitudes, delta * rho))) - rho

    lower = float(nonzero.min()) / delta
    if excess(norm) >= 0.0:
        rho = norm
    else:
        rho = brentq(excess, lower, norm, xtol=tol)

    theta = soft_threshold(f, delta * rho)
    value = float(np.linalg.norm(f - theta) + delta * np.sum(np.abs(theta)))
    # El óptimo convexo es el punto fijo; los extremos θ = f y θ = 0 acotan el error de Brent
    candidates = [(value, theta), (float(delta * np.sum(magnitudes)), f.copy()), (norm, np.zeros_like(f))]
    best_value, best_theta = min(candidates, key=lambda item: item[0])
    return best_value, best_theta
