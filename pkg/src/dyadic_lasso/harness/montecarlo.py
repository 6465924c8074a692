"""
Riesgo Monte Carlo de los estimadores Lasso.

Cada réplica k recibe el flujo derive_stream(seed, *stream_key, k); las
réplicas son tareas independientes y se agregan en orden de índice, de modo
que el resultado no depende del número de hilos.

Dos marcos:
- secuencia (dictionary=None): y_j = θ*_j + ε ξ_j sobre una base ortonormal,
  con los ajustes en forma cerrada;
- regresión (dictionary dado): y_i = f(x_i) + σ ξ_i con σ = ε√n y el
  descenso por coordenadas.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Optional

import numpy as np
from numpy.typing import NDArray

from dyadic_lasso.config import get_experiment_settings
from dyadic_lasso.dictionaries import Dictionary, DictionaryFamily, dyadic_levels, truncate
from dyadic_lasso.errors import ParameterError, ReplicationError, SolverConvergenceError
from dyadic_lasso.geometry import (
    NoiseLevel,
    RandomStream,
    derive_stream,
    gamma_emp,
    sample_regression,
    sample_sequence_model,
)
from dyadic_lasso.logging import get_logger
from dyadic_lasso.oracle_spaces import TargetSpec
from dyadic_lasso.selection import SelectionTrace, lambda_p, selected_lasso, selected_soft_threshold
from dyadic_lasso.solver import lasso_cd, soft_threshold_fit

logger = get_logger(__name__)

ORTHOGONAL_FAMILIES = (DictionaryFamily.ORTHONORMAL, DictionaryFamily.HAAR, DictionaryFamily.FOURIER)


class Estimator(str, Enum):
    """Estimadores evaluables por Monte Carlo."""
    LASSO = "lasso"
    SELECTED_LASSO = "selected_lasso"
    SOFT_THRESHOLD = "soft_threshold"


@dataclass(frozen=True, eq=False)
class Replication:
    """Resultado de una réplica."""

    loss: float
    l1_norm: float
    lam: float
    pen: float
    p_hat: int
    support_size: int
    level_losses: NDArray[np.float64] = field(default_factory=lambda: np.zeros(0))
    level_numerators: NDArray[np.float64] = field(default_factory=lambda: np.zeros(0))


def mean_and_stderr(values: NDArray[np.float64]) -> tuple[float, float]:
    """Media muestral y su error estándar Monte Carlo."""
    samples = np.asarray(values, dtype=float)
    if samples.size < 2:
        return float(samples.mean()), 0.0
    return float(samples.mean()), float(samples.std(ddof=1) / math.sqrt(samples.size))


@dataclass(frozen=True, eq=False)
class RiskEstimate:
    """Muestras por réplica y sus agregados."""

    losses: NDArray[np.float64]
    l1_norms: NDArray[np.float64]
    lambdas: NDArray[np.float64]
    penalties: NDArray[np.float64]
    p_hats: NDArray[np.int64]
    support_sizes: NDArray[np.int64]
    levels: tuple[int, ...] = ()
    level_losses: Optional[NDArray[np.float64]] = None
    level_numerators: Optional[NDArray[np.float64]] = None

    @classmethod
    def from_replications(cls, outcomes: list[Replication], levels: tuple[int, ...] = ()) -> "RiskEstimate":
        return cls(
            losses=np.array([o.loss for o in outcomes]),
            l1_norms=np.array([o.l1_norm for o in outcomes]),
            lambdas=np.array([o.lam for o in outcomes]),
            penalties=np.array([o.pen for o in outcomes]),
            p_hats=np.array([o.p_hat for o in outcomes], dtype=np.int64),
            support_sizes=np.array([o.support_size for o in outcomes], dtype=np.int64),
            levels=levels,
            level_losses=np.vstack([o.level_losses for o in outcomes]) if levels else None,
            level_numerators=np.vstack([o.level_numerators for o in outcomes]) if levels else None,
        )

    @property
    def n_rep(self) -> int:
        return int(self.losses.shape[0])

    @property
    def mean_risk(self) -> float:
        return mean_and_stderr(self.losses)[0]

    @property
    def stderr(self) -> float:
        return mean_and_stderr(self.losses)[1]

    def numerators(self, include_pen: bool = False) -> NDArray[np.float64]:
        """‖f − f̂‖² + λ‖θ̂‖₁ (+ pen(p̂)) por réplica."""
        values = self.losses + self.lambdas * self.l1_norms
        return values + self.penalties if include_pen else values

    @property
    def extras(self) -> dict[str, Any]:
        return {
            "l1_mean": float(self.l1_norms.mean()),
            "p_hat_mean": float(self.p_hats.mean()),
            "p_hat_median": float(np.median(self.p_hats)),
            "support_mean": float(self.support_sizes.mean()),
        }


# ==========================================
# RÉPLICAS POR MARCO
# ==========================================

def _level_tails(coefficients: NDArray[np.float64], size: int) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """(θ* completado hasta size, tails[p] = Σ_{j>p} θ*_j²)."""
    full = np.zeros(max(size, coefficients.shape[0]))
    full[: coefficients.shape[0]] = coefficients
    tails = np.append(np.cumsum((full ** 2)[::-1])[::-1], 0.0)
    return full[:size], tails


def _from_trace(trace: SelectionTrace, level_losses: NDArray[np.float64]) -> Replication:
    """Réplica del nivel elegido; guarda por nivel ‖f − f̂_p‖² y ‖f − f̂_p‖² + λ_p‖θ̂_p‖₁ + pen(p)."""
    chosen = trace.chosen
    level_numerators = level_losses + np.array(
        [record.lambda_p * record.fit.l1_norm + record.pen_p for record in trace.per_level]
    )
    index = trace.per_level.index(chosen)
    return Replication(
        loss=float(level_losses[index]),
        l1_norm=chosen.fit.l1_norm,
        lam=chosen.lambda_p,
        pen=chosen.pen_p,
        p_hat=trace.p_hat,
        support_size=int(chosen.fit.support.size),
        level_losses=level_losses,
        level_numerators=level_numerators,
    )


def _sequence_replicator(
    estimator: Estimator,
    target: TargetSpec,
    eps: float,
    size: int,
    lam: float,
    lambda_multiplier: float,
    pen_multiplier: float,
) -> Callable[[RandomStream], Replication]:
    if target.values is not None:
        raise ParameterError("El modelo de secuencia necesita un objetivo con coeficientes")
    head, tails = _level_tails(target.coefficients, size)

    def replicate(rng: RandomStream) -> Replication:
        y = sample_sequence_model(head, eps, size, rng)
        if estimator is Estimator.SELECTED_LASSO:
            trace = selected_soft_threshold(y, eps, size, lambda_multiplier, pen_multiplier)
            level_losses = np.array([
                float(np.sum((head[: record.p] - record.fit.theta) ** 2) + tails[record.p])
                for record in trace.per_level
            ])
            return _from_trace(trace, level_losses)
        theta = soft_threshold_fit(y, lam)
        return Replication(
            loss=float(np.sum((head - theta) ** 2) + tails[size]),
            l1_norm=float(np.sum(np.abs(theta))),
            lam=lam,
            pen=0.0,
            p_hat=size,
            support_size=int(np.count_nonzero(theta)),
        )

    return replicate


def _regression_replicator(
    estimator: Estimator,
    target: TargetSpec,
    dictionary: Dictionary,
    eps: float,
    size: int,
    lam: float,
    lambda_multiplier: float,
    pen_multiplier: float,
    tol: Optional[float],
    max_iter: Optional[int],
) -> Callable[[RandomStream], Replication]:
    design = dictionary.design
    f = target.on_design(dictionary)
    sigma = NoiseLevel(eps).sigma(design.n)
    sub = truncate(dictionary, size)
    if estimator is Estimator.SOFT_THRESHOLD and dictionary.family not in ORTHOGONAL_FAMILIES:
        raise ParameterError(
            f"soft_threshold solo es el Lasso en familias ortonormales, recibido '{dictionary.family.value}'"
        )
    if estimator is Estimator.LASSO:
        # Gram calculada antes de repartir réplicas entre hilos
        _ = sub.gram

    def replicate(rng: RandomStream) -> Replication:
        y = sample_regression(f, sigma, design, rng)
        if estimator is Estimator.SELECTED_LASSO:
            trace = selected_lasso(
                dictionary, y, eps, size, tol, max_iter, lambda_multiplier, pen_multiplier
            )
            level_losses = np.array([gamma_emp(f, record.fit.fitted, design) for record in trace.per_level])
            return _from_trace(trace, level_losses)
        if estimator is Estimator.LASSO:
            fit = lasso_cd(sub, y, lam, tol, max_iter)
            theta, fitted = fit.theta, fit.fitted
        else:
            theta = soft_threshold_fit(sub.analyze(y), lam)
            fitted = sub.synthesize(theta)
        return Replication(
            loss=gamma_emp(f, fitted, design),
            l1_norm=float(np.sum(np.abs(theta))),
            lam=lam,
            pen=0.0,
            p_hat=size,
            support_size=int(np.count_nonzero(theta)),
        )

    return replicate


# ==========================================
# RIESGO MONTE CARLO
# ==========================================

def mc_risk(
    estimator: Estimator,
    target: TargetSpec,
    eps: float,
    n_rep: Optional[int] = None,
    seed: int = 0,
    *,
    p: Optional[int] = None,
    dictionary: Optional[Dictionary] = None,
    lam: Optional[float] = None,
    lambda_multiplier: float = 1.0,
    pen_multiplier: float = 1.0,
    tol: Optional[float] = None,
    max_iter: Optional[int] = None,
    max_workers: Optional[int] = None,
    stream_key: tuple[int, ...] = (),
) -> RiskEstimate:
    """
    Estima E‖f − f̂‖² (y los términos λ‖θ̂‖₁, pen(p̂)) sobre n_rep réplicas.

    Args:
        estimator: lasso (nivel p), selected_lasso (niveles hasta p) o soft_threshold (nivel p)
        target: Objetivo θ* (o valores sobre el diseño en regresión)
        eps: Nivel de ruido ε
        n_rep: Réplicas (por defecto MC_N_REP)
        seed: Semilla maestra
        p: Nivel de truncación, o p_max para selected_lasso
        dictionary: Diccionario de regresión; None para el modelo de secuencia
        lam: λ explícito; por defecto lambda_multiplier·λ_p
        max_workers: Hilos para las réplicas (por defecto THREADS)
        stream_key: Prefijo de la clave de los flujos

    Raises:
        ReplicationError: si el solver no converge en alguna réplica
    """
    settings = get_experiment_settings()
    n_rep = settings.MC_N_REP if n_rep is None else n_rep
    max_workers = settings.THREADS if max_workers is None else max_workers
    estimator = Estimator(estimator)

    if n_rep < 2:
        raise ParameterError(f"n_rep debe ser ≥ 2, recibido {n_rep}")
    if not eps > 0:
        raise ParameterError(f"eps debe ser > 0, recibido {eps}")
    if p is None:
        p = dictionary.p if dictionary is not None else target.length
    if p < 1:
        raise ParameterError(f"p debe ser ≥ 1, recibido {p}")
    level_lam = lambda_multiplier * lambda_p(p, eps) if lam is None else lam
    if level_lam < 0:
        raise ParameterError(f"lambda debe ser ≥ 0, recibido {level_lam}")

    if dictionary is None:
        replicate = _sequence_replicator(
            estimator, target, eps, p, level_lam, lambda_multiplier, pen_multiplier
        )
    else:
        replicate = _regression_replicator(
            estimator, target, dictionary, eps, p, level_lam, lambda_multiplier, pen_multiplier, tol, max_iter
        )

    def run(index: int) -> Replication:
        rng = derive_stream(seed, *stream_key, index)
        try:
            return replicate(rng)
        except SolverConvergenceError as exc:
            raise ReplicationError(index, exc) from exc

    if max_workers > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            outcomes = list(pool.map(run, range(n_rep)))
    else:
        outcomes = [run(index) for index in range(n_rep)]

    levels = dyadic_levels(p).levels if estimator is Estimator.SELECTED_LASSO else ()
    estimate = RiskEstimate.from_replications(outcomes, levels)
    logger.debug(
        f"mc_risk {estimator.value} p={p} eps={eps:.4g}: riesgo {estimate.mean_risk:.4e} "
        f"± {estimate.stderr:.2e} ({n_rep} réplicas)"
    )
    return estimate
