"""
Lasso seleccionado sobre truncaciones diádicas.

Para cada p ∈ Λ = {1, 2, 4, …, p_max} se ajusta el Lasso f̂_p sobre D_p con λ_p
y se elige

    p̂ = argmin_p  γ(f̂_p) + λ_p‖f̂_p‖₁ + pen(p)

desempatando por el p más pequeño. Los diccionarios anidados permiten
arrancar cada nivel desde θ̂ del nivel anterior completado con ceros.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np
from numpy.typing import ArrayLike, NDArray

from dyadic_lasso.dictionaries import Dictionary, DyadicLevels, dyadic_levels, truncate
from dyadic_lasso.errors import ParameterError, SolverConvergenceError
from dyadic_lasso.geometry import gamma_emp
from dyadic_lasso.logging import get_logger
from dyadic_lasso.solver import LassoFit, lasso_cd, soft_threshold_fit

from .schedules import lambda_p, pen_p

logger = get_logger(__name__)


@dataclass(frozen=True, eq=False)
class LevelRecord:
    """Ajuste y criterio de un nivel de truncación."""

    p: int
    lambda_p: float
    pen_p: float
    fit: LassoFit
    gamma: float
    criterion: float


@dataclass(frozen=True, eq=False)
class SelectionTrace:
    """Criterios por nivel y nivel elegido p̂."""

    levels: DyadicLevels
    per_level: tuple[LevelRecord, ...]
    p_hat: int

    @property
    def chosen(self) -> LevelRecord:
        return next(record for record in self.per_level if record.p == self.p_hat)

    @property
    def chosen_fit(self) -> LassoFit:
        return self.chosen.fit

    def criteria(self) -> NDArray[np.float64]:
        return np.array([record.criterion for record in self.per_level])


def _argmin_level(records: list[LevelRecord]) -> int:
    # np.argmin devuelve el primer mínimo: el p más pequeño ante empate
    criteria = np.array([record.criterion for record in records])
    return records[int(np.argmin(criteria))].p


def _check_inputs(eps: float, p_max: int, available: int) -> None:
    if not eps > 0:
        raise ParameterError(f"eps debe ser > 0, recibido {eps}")
    if not 1 <= p_max <= available:
        raise ParameterError(f"p_max debe estar en [1, {available}], recibido {p_max}")


def selected_lasso(
    dictionary: Dictionary,
    y: ArrayLike,
    eps: float,
    p_max: Optional[int] = None,
    tol: Optional[float] = None,
    max_iter: Optional[int] = None,
    lambda_multiplier: float = 1.0,
    pen_multiplier: float = 1.0,
    warm_start: bool = True,
    max_workers: int = 1,
) -> SelectionTrace:
    """
    Lasso seleccionado sobre los niveles diádicos de un diccionario normalizado.

    Args:
        warm_start: Arranca cada nivel desde el ajuste del nivel anterior (solo con max_workers = 1)
        max_workers: Con más de un hilo los niveles se ajustan en paralelo desde cero.
            El resultado es idéntico bit a bit al de warm_start=False, pero solo
            coincide con el modo en caliente a la tolerancia del solver; el arnés
            Monte Carlo usa siempre el modo secuencial

    Raises:
        SolverConvergenceError: etiquetado con el nivel p que no convergió
    """
    p_max = dictionary.p if p_max is None else p_max
    _check_inputs(eps, p_max, dictionary.p)
    if lambda_multiplier < 0 or pen_multiplier < 0:
        raise ParameterError("Los multiplicadores de λ_p y pen(p) deben ser ≥ 0")

    observations = dictionary.design.check(y, "y")
    levels = dyadic_levels(p_max)

    def fit_level(p: int, theta0: Optional[NDArray[np.float64]]) -> LevelRecord:
        lam = lambda_multiplier * lambda_p(p, eps)
        pen = pen_multiplier * pen_p(p, eps)
        try:
            fit = lasso_cd(truncate(dictionary, p), observations, lam, tol, max_iter, theta0)
        except SolverConvergenceError as exc:
            raise exc.at_level(p) from exc
        gamma = gamma_emp(observations, fit.fitted, dictionary.design)
        return LevelRecord(p, lam, pen, fit, gamma, gamma + lam * fit.l1_norm + pen)

    records: list[LevelRecord] = []
    if max_workers > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            records = list(pool.map(lambda p: fit_level(p, None), levels))
    else:
        previous: Optional[NDArray[np.float64]] = None
        for p in levels:
            theta0 = None
            if warm_start and previous is not None:
                theta0 = np.zeros(p)
                theta0[: previous.shape[0]] = previous
            record = fit_level(p, theta0)
            records.append(record)
            previous = record.fit.theta

    p_hat = _argmin_level(records)
    logger.debug(f"Lasso seleccionado: p̂={p_hat} entre {len(levels)} niveles")
    return SelectionTrace(levels, tuple(records), p_hat)


def selected_soft_threshold(
    y_coeffs: ArrayLike,
    eps: float,
    p_max: Optional[int] = None,
    lambda_multiplier: float = 1.0,
    pen_multiplier: float = 1.0,
) -> SelectionTrace:
    """
    Lasso seleccionado en el modelo de secuencia ortonormal, en forma cerrada.

    y_coeffs son las N coordenadas observadas. El nivel p umbraliza las p
    primeras a λ_p/2; las restantes entran en γ como y_j². Los ajustes se
    expresan sobre el diseño identidad de N puntos (fitted = √N·θ̂).
    """
    observed = np.asarray(y_coeffs, dtype=float).ravel()
    size = observed.shape[0]
    p_max = size if p_max is None else p_max
    _check_inputs(eps, p_max, size)

    levels = dyadic_levels(p_max)
    squares = observed ** 2
    # tail[p] = Σ_{j>p} y_j²
    tail = np.append(np.cumsum(squares[::-1])[::-1], 0.0)
    scale = math.sqrt(size)

    records = []
    for p in levels:
        lam = lambda_multiplier * lambda_p(p, eps)
        pen = pen_multiplier * pen_p(p, eps)
        theta = soft_threshold_fit(observed[:p], lam)
        gamma = float(np.sum((observed[:p] - theta) ** 2) + tail[p])
        l1 = float(np.sum(np.abs(theta)))
        fitted = np.zeros(size)
        fitted[:p] = scale * theta
        fit = LassoFit(
            theta=theta,
            lam=lam,
            objective=gamma + lam * l1,
            kkt_violation=0.0,
            iterations=0,
            fitted=fitted,
        )
        records.append(LevelRecord(p, lam, pen, fit, gamma, gamma + lam * l1 + pen))

    return SelectionTrace(levels, tuple(records), _argmin_level(records))
