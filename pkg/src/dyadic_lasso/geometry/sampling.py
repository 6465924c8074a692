"""
Generación de datos en los dos marcos estadísticos.

- Regresión gaussiana de diseño fijo: Y_i = f(x_i) + σ ξ_i.
- Modelo de secuencia gaussiano (equivalente discreto del ruido blanco):
  y_j = θ*_j + ε ξ_j, j = 1..p.

Los flujos aleatorios se derivan de (semilla maestra, clave) con
SeedSequence: la réplica k recibe siempre el mismo flujo, sea cual sea el
orden o el hilo en que se evalúe.
"""
from __future__ import annotations

import numpy as np
from numpy.typing import ArrayLike, NDArray

from dyadic_lasso.errors import ParameterError

from .design import Design, SampleVector

RandomStream = np.random.Generator


def derive_stream(master_seed: int, *key: int) -> RandomStream:
    """Flujo determinista para la clave (k_1, ..., k_m) bajo master_seed."""
    if master_seed < 0 or any(k < 0 for k in key):
        raise ParameterError("La semilla y la clave del flujo deben ser enteros ≥ 0")
    sequence = np.random.SeedSequence(entropy=int(master_seed), spawn_key=tuple(int(k) for k in key))
    return np.random.Generator(np.random.PCG64(sequence))


def sample_regression(
    f_on_design: ArrayLike,
    sigma: float,
    design: Design,
    rng: RandomStream,
) -> SampleVector:
    """y_i = f(x_i) + σ ξ_i con ξ_i normales estándar independientes."""
    f = design.check(f_on_design, "f_on_design")
    if sigma < 0:
        raise ParameterError(f"sigma debe ser ≥ 0, recibido {sigma}")
    noise = rng.standard_normal(design.n)
    return f + sigma * noise


def sample_sequence_model(
    theta_star: ArrayLike,
    eps: float,
    p: int,
    rng: RandomStream,
) -> NDArray[np.float64]:
    """
    Primeros p coeficientes ruidosos y_j = θ*_j + ε ξ_j.

    Las coordenadas más allá de la longitud de θ* se toman nulas. Se admite
    eps = 0 (copia exacta de θ*).
    """
    if p < 1:
        raise ParameterError(f"p debe ser ≥ 1, recibido {p}")
    if eps < 0:
        raise ParameterError(f"eps debe ser ≥ 0, recibido {eps}")
    theta = np.zeros(p)
    source = np.asarray(theta_star, dtype=float).ravel()[:p]
    theta[: source.shape[0]] = source
    return theta + eps * rng.standard_normal(p)
