"""
Lasso por descenso por coordenadas con certificado KKT.

Minimiza F(θ) = ‖y − Φθ‖² + λ‖θ‖₁ con la norma EMPÍRICA (factor 1/n), de modo
que λ se compara con 2⟨φ_j, y − Φθ⟩ y los λ_p = 4ε(√ln p + 1) se enchufan
directamente.

Algoritmo: pasada cíclica completa sobre todas las coordenadas seguida de
pasadas restringidas al conjunto activo hasta estabilizarse; tras cada ciclo
se recalculan las correlaciones desde cero y se evalúa el certificado.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from numpy.typing import ArrayLike, NDArray

from dyadic_lasso.config import get_experiment_settings
from dyadic_lasso.dictionaries import Dictionary
from dyadic_lasso.errors import DimensionError, ParameterError, SolverConvergenceError
from dyadic_lasso.geometry import SampleVector
from dyadic_lasso.logging import get_logger

logger = get_logger(__name__)

ACTIVE_SET_PASSES = 1000


@dataclass(frozen=True, eq=False)
class LassoFit:
    """Resultado de un ajuste Lasso."""

    theta: NDArray[np.float64]
    lam: float
    objective: float
    kkt_violation: float
    iterations: int
    fitted: SampleVector
    history: tuple[float, ...] = field(default=())

    @property
    def l1_norm(self) -> float:
        return float(np.sum(np.abs(self.theta)))

    @property
    def support(self) -> NDArray[np.intp]:
        return np.flatnonzero(self.theta)


def kkt_violation(theta: NDArray[np.float64], correlations: NDArray[np.float64], lam: float) -> float:
    """
    Máxima violación de las condiciones de subgradiente.

    θ_j ≠ 0: |2c_j − λ sign(θ_j)|;  θ_j = 0: max(|2c_j| − λ, 0),  con c_j = ⟨φ_j, y − Φθ⟩.
    """
    gradient = 2.0 * correlations
    active = theta != 0.0
    violation_active = np.abs(gradient[active] - lam * np.sign(theta[active]))
    violation_zero = np.maximum(np.abs(gradient[~active]) - lam, 0.0)
    worst = 0.0
    if violation_active.size:
        worst = max(worst, float(violation_active.max()))
    if violation_zero.size:
        worst = max(worst, float(violation_zero.max()))
    return worst


def _objective(residual: NDArray[np.float64], theta: NDArray[np.float64], lam: float) -> float:
    return float(np.dot(residual, residual) / residual.shape[0] + lam * np.sum(np.abs(theta)))


def _sweep(
    indices: NDArray[np.intp],
    theta: NDArray[np.float64],
    correlations: NDArray[np.float64],
    gram: NDArray[np.float64],
    half_lam: float,
) -> float:
    """Una pasada cíclica sobre indices; actualiza θ y c in situ y devuelve el mayor |Δθ_j|."""
    largest = 0.0
    for j in indices:
        g = gram[j, j]
        rho = correlations[j] + g * theta[j]
        magnitude = abs(rho) - half_lam
        new = math.copysign(magnitude, rho) / g if magnitude > 0.0 else 0.0
        delta = new - theta[j]
        if delta != 0.0:
            correlations -= gram[j] * delta
            theta[j] = new
            largest = max(largest, abs(delta))
    return largest


def lasso_cd(
    dictionary: Dictionary,
    y: ArrayLike,
    lam: float,
    tol: Optional[float] = None,
    max_iter: Optional[int] = None,
    theta0: Optional[ArrayLike] = None,
) -> LassoFit:
    """
    Lasso θ̂ = argmin ‖y − Φθ‖² + λ‖θ‖₁ sobre un diccionario normalizado.

    Args:
        dictionary: Diccionario normalizado
        y: Observaciones sobre el diseño
        lam: λ ≥ 0
        tol: Tolerancia del certificado KKT (por defecto SOLVER_TOL)
        max_iter: Máximo de pasadas (por defecto SOLVER_MAX_ITER)
        theta0: Punto de arranque (warm start)

    Returns:
        LassoFit con kkt_violation ≤ tol

    Raises:
        SolverConvergenceError: max_iter agotado; lleva el mejor iterado
    """
    settings = get_experiment_settings()
    tol = settings.SOLVER_TOL if tol is None else tol
    max_iter = settings.SOLVER_MAX_ITER if max_iter is None else max_iter

    if not dictionary.normalized:
        raise ParameterError("lasso_cd requiere un diccionario normalizado")
    if lam < 0:
        raise ParameterError(f"lambda debe ser ≥ 0, recibido {lam}")
    if not tol > 0:
        raise ParameterError(f"tol debe ser > 0, recibido {tol}")

    observations = dictionary.design.check(y, "y")
    gram = dictionary.gram
    base = dictionary.analyze(observations)

    if theta0 is None:
        theta = np.zeros(dictionary.p)
    else:
        theta = np.array(theta0, dtype=float)
        if theta.shape != (dictionary.p,):
            raise DimensionError(f"theta0 tiene shape {theta.shape}, se esperaba ({dictionary.p},)")

    correlations = base - gram @ theta
    violation = kkt_violation(theta, correlations, lam)
    history: list[float] = []
    iterations = 0
    every = np.arange(dictionary.p)
    half_lam = lam / 2.0

    while violation > tol and iterations < max_iter:
        _sweep(every, theta, correlations, gram, half_lam)
        iterations += 1

        active = np.flatnonzero(theta)
        for _ in range(ACTIVE_SET_PASSES):
            if active.size == 0 or iterations >= max_iter:
                break
            largest = _sweep(active, theta, correlations, gram, half_lam)
            iterations += 1
            if largest <= tol * 1e-2:
                break

        # Correlaciones exactas: evita la deriva de las actualizaciones incrementales
        correlations = base - gram @ theta
        violation = kkt_violation(theta, correlations, lam)
        residual = observations - dictionary.matrix @ theta
        history.append(_objective(residual, theta, lam))

    fitted = dictionary.matrix @ theta
    fit = LassoFit(
        theta=theta,
        lam=float(lam),
        objective=_objective(observations - fitted, theta, lam),
        kkt_violation=violation,
        iterations=iterations,
        fitted=fitted,
        history=tuple(history),
    )
    if violation > tol:
        raise SolverConvergenceError(fit, violation, iterations)

    logger.debug(
        f"lasso_cd p={dictionary.p} λ={lam:.4g}: {iterations} pasadas, KKT {violation:.2e}, "
        f"soporte {fit.support.size}"
    )
    return fit


def kkt_residual(dictionary: Dictionary, y: ArrayLike, fit: LassoFit) -> float:
    """Certificado de optimalidad recalculado desde θ: 0 en el óptimo exacto."""
    theta = np.asarray(fit.theta, dtype=float)
    if theta.shape != (dictionary.p,):
        raise DimensionError(f"El ajuste tiene {theta.shape[0]} coeficientes, el diccionario {dictionary.p}")
    observations = dictionary.design.check(y, "y")
    correlations = dictionary.analyze(observations - dictionary.matrix @ theta)
    return kkt_violation(theta, correlations, fit.lam)
