"""
Experimentos Monte Carlo que contrastan las desigualdades oráculo y las tasas.

Cada experimento devuelve un ExperimentReport cuyas columnas son las del
contrato CSV. Las constantes absolutas de los resultados teóricos no se
conocen: se informan cocientes empíricos, nunca se comparan con un valor fijo.

Espacios de claves de los flujos aleatorios (primer elemento de la clave):
    STREAM_REPLICATIONS  réplicas Monte Carlo, (0, fila, réplica)
    STREAM_TARGETS       objetivos aleatorios del hipercubo, (1, objetivo)
    STREAM_DESIGNS       diseños y diccionarios aleatorios, (2, índice)
"""
from __future__ import annotations

import math
import time
from typing import Any, Optional, Sequence

import numpy as np

from dyadic_lasso.config import get_experiment_settings
from dyadic_lasso.dictionaries import Dictionary, dyadic_levels, enumerate_heaviside, truncate
from dyadic_lasso.errors import ParameterError
from dyadic_lasso.geometry import Design, NoiseLevel, derive_stream, sample_regression, sample_sequence_model
from dyadic_lasso.logging import get_logger
from dyadic_lasso.oracle_spaces import (
    TargetSpec,
    check_rates_regime,
    deterministic_lasso,
    deterministic_lasso_sequence,
    hypercube_target,
    lasso_rate_regime,
    make_power_law_target,
    selected_rate_bound,
    u_param,
)
from dyadic_lasso.selection import lambda_nn, lambda_p, pen_p, selected_lasso, selected_soft_threshold
from dyadic_lasso.solver import lasso_cd, soft_threshold_fit

from .montecarlo import Estimator, mc_risk, mean_and_stderr
from .report import ExperimentReport, finish_report

logger = get_logger(__name__)

STREAM_REPLICATIONS = 0
STREAM_TARGETS = 1
STREAM_DESIGNS = 2

ORACLE_RATIO_COLUMNS = [
    "p", "eps", "lambda_p", "numerator_mean", "numerator_stderr", "denominator",
    "ratio", "ratio_stderr", "risk_mean", "l1_mean",
]
SELECTED_ORACLE_COLUMNS = [
    "eps", "numerator_mean", "numerator_stderr", "denominator", "ratio", "ratio_stderr",
    "selected_risk_mean", "selected_risk_stderr", "best_level", "best_level_risk_mean",
    "best_level_risk_stderr", "p_hat_median",
]
RATES_COLUMNS = ["eps", "risk_mean", "risk_stderr", "p_hat_median", "slope", "slope_stderr"]
MINIMAX_COLUMNS = ["target", "p", "d", "M", "risk_mean", "risk_stderr", "reference", "ratio"]
HEAVISIDE_ORACLE_COLUMNS = [
    "n", "lambda", "n_columns", "numerator_mean", "numerator_stderr", "denominator",
    "ratio", "ratio_stderr",
]
LASSO_RATES_COLUMNS = [
    "eps", "p", "regime", "regime_bound", "lasso_risk_mean", "lasso_risk_stderr",
    "selected_risk_mean", "selected_risk_stderr",
]
FIT_COLUMNS = ["j", "theta_star", "theta_hat"]
SELECT_COLUMNS = ["p", "lambda_p", "pen_p", "gamma", "l1_norm", "criterion", "selected"]


def _denominator_tol(tol: Optional[float]) -> float:
    """Los denominadores se certifican al menos a 1e-8."""
    settings_tol = get_experiment_settings().SOLVER_TOL if tol is None else tol
    return min(settings_tol, 1e-8)


def _deterministic_value(
    target: TargetSpec,
    dictionary: Optional[Dictionary],
    p: int,
    lam: float,
    tol: Optional[float],
    max_iter: Optional[int],
) -> float:
    """L_{D_p}(f, λ) en el marco correspondiente."""
    if dictionary is None:
        return deterministic_lasso_sequence(target.coefficients, p, lam)[0]
    f = target.on_design(dictionary)
    value, _ = deterministic_lasso(truncate(dictionary, p), f, lam, _denominator_tol(tol), max_iter)
    return value


# ==========================================
# DESIGUALDADES ORÁCULO
# ==========================================

def oracle_ratio_experiment(
    target: TargetSpec,
    p_grid: Sequence[int],
    eps_grid: Sequence[float],
    n_rep: Optional[int] = None,
    seed: int = 0,
    dictionary: Optional[Dictionary] = None,
    lambda_multiplier: float = 1.0,
    tol: Optional[float] = None,
    max_iter: Optional[int] = None,
    max_workers: Optional[int] = None,
) -> ExperimentReport:
    """
    Cociente E[‖f − f̂_p‖² + λ_p‖θ̂_p‖₁] / (L_{D_p}(f, λ_p) + λ_p ε) por cada (p, ε).

    dictionary=None usa el modelo de secuencia ortonormal.
    """
    started = time.perf_counter()
    logger.info(f"Experimento oracle-ratio: p={list(p_grid)}, eps={list(eps_grid)}")
    rows, stderr = [], []
    for p in p_grid:
        for eps in eps_grid:
            row_index = len(rows)
            lam = lambda_multiplier * lambda_p(p, eps)
            estimate = mc_risk(
                Estimator.LASSO, target, eps, n_rep, seed,
                p=p, dictionary=dictionary, lam=lam, tol=tol, max_iter=max_iter,
                max_workers=max_workers, stream_key=(STREAM_REPLICATIONS, row_index),
            )
            numerator, numerator_stderr = mean_and_stderr(estimate.numerators())
            denominator = _deterministic_value(target, dictionary, p, lam, tol, max_iter) + lam * eps
            rows.append({
                "p": p,
                "eps": eps,
                "lambda_p": lam,
                "numerator_mean": numerator,
                "numerator_stderr": numerator_stderr,
                "denominator": denominator,
                "ratio": numerator / denominator,
                "ratio_stderr": numerator_stderr / denominator,
                "risk_mean": estimate.mean_risk,
                "l1_mean": estimate.extras["l1_mean"],
            })
            stderr.append(numerator_stderr)
    summary = {"max_ratio": max(row["ratio"] for row in rows)}
    return finish_report("oracle-ratio", ORACLE_RATIO_COLUMNS, rows, stderr, seed, started, summary)


def selected_oracle_experiment(
    target: TargetSpec,
    p_max: int,
    eps_grid: Sequence[float],
    n_rep: Optional[int] = None,
    seed: int = 0,
    dictionary: Optional[Dictionary] = None,
    lambda_multiplier: float = 1.0,
    pen_multiplier: float = 1.0,
    tol: Optional[float] = None,
    max_iter: Optional[int] = None,
    max_workers: Optional[int] = None,
) -> ExperimentReport:
    """
    Cociente del Lasso seleccionado frente a inf_p (L_{D_p}(f, λ_p) + pen(p)) + ε².

    Registra además el nivel p con menor E[‖f − f̂_p‖² + λ_p‖θ̂_p‖₁ + pen(p)] sobre
    las mismas réplicas, el mismo funcional que el numerador, para contrastar
    la adaptatividad de la selección.
    """
    started = time.perf_counter()
    logger.info(f"Experimento selected-oracle: p_max={p_max}, eps={list(eps_grid)}")
    levels = dyadic_levels(p_max)
    rows, stderr = [], []
    for index, eps in enumerate(eps_grid):
        estimate = mc_risk(
            Estimator.SELECTED_LASSO, target, eps, n_rep, seed,
            p=p_max, dictionary=dictionary, lambda_multiplier=lambda_multiplier,
            pen_multiplier=pen_multiplier, tol=tol, max_iter=max_iter,
            max_workers=max_workers, stream_key=(STREAM_REPLICATIONS, index),
        )
        numerator, numerator_stderr = mean_and_stderr(estimate.numerators(include_pen=True))
        oracle = min(
            _deterministic_value(target, dictionary, p, lambda_multiplier * lambda_p(p, eps), tol, max_iter)
            + pen_multiplier * pen_p(p, eps)
            for p in levels
        )
        denominator = oracle + eps ** 2
        best = int(np.argmin(estimate.level_numerators.mean(axis=0)))
        best_mean, best_stderr = mean_and_stderr(estimate.level_numerators[:, best])
        rows.append({
            "eps": eps,
            "numerator_mean": numerator,
            "numerator_stderr": numerator_stderr,
            "denominator": denominator,
            "ratio": numerator / denominator,
            "ratio_stderr": numerator_stderr / denominator,
            "selected_risk_mean": estimate.mean_risk,
            "selected_risk_stderr": estimate.stderr,
            "best_level": levels.levels[best],
            "best_level_risk_mean": best_mean,
            "best_level_risk_stderr": best_stderr,
            "p_hat_median": estimate.extras["p_hat_median"],
        })
        stderr.append(numerator_stderr)
    summary = {"max_ratio": max(row["ratio"] for row in rows)}
    return finish_report("selected-oracle", SELECTED_ORACLE_COLUMNS, rows, stderr, seed, started, summary)


def heaviside_oracle_experiment(
    design: Design,
    target: TargetSpec,
    sigma: float,
    n_rep: Optional[int] = None,
    seed: int = 0,
    tol: Optional[float] = None,
    max_iter: Optional[int] = None,
    max_workers: Optional[int] = None,
) -> ExperimentReport:
    """
    Lasso sobre el diccionario de Heaviside enumerado con λ = λ_nn(n, d, σ).

    Cociente E[‖f − f̂‖² + λ‖θ̂‖₁] / (L_D(f, λ) + λσ/√n).
    """
    started = time.perf_counter()
    if not sigma > 0:
        raise ParameterError(f"sigma debe ser > 0, recibido {sigma}")
    dictionary = enumerate_heaviside(design)
    lam = lambda_nn(design.n, design.d, sigma)
    eps = NoiseLevel.from_regression(sigma, design.n).eps
    estimate = mc_risk(
        Estimator.LASSO, target, eps, n_rep, seed,
        p=dictionary.p, dictionary=dictionary, lam=lam, tol=tol, max_iter=max_iter,
        max_workers=max_workers, stream_key=(STREAM_REPLICATIONS, design.n),
    )
    numerator, numerator_stderr = mean_and_stderr(estimate.numerators())
    value, _ = deterministic_lasso(
        dictionary, target.on_design(dictionary), lam, _denominator_tol(tol), max_iter
    )
    denominator = value + lam * eps
    rows = [{
        "n": design.n,
        "lambda": lam,
        "n_columns": dictionary.p,
        "numerator_mean": numerator,
        "numerator_stderr": numerator_stderr,
        "denominator": denominator,
        "ratio": numerator / denominator,
        "ratio_stderr": numerator_stderr / denominator,
    }]
    return finish_report(
        "heaviside-oracle", HEAVISIDE_ORACLE_COLUMNS, rows, [numerator_stderr], seed, started,
        {"max_ratio": rows[0]["ratio"]},
    )


# ==========================================
# TASAS DE CONVERGENCIA
# ==========================================

def fit_loglog_slope(
    x: Sequence[float],
    means: Sequence[float],
    stderrs: Sequence[float],
) -> tuple[float, float, float]:
    """
    Pendiente e intercepto de log(media) frente a x por mínimos cuadrados.

    El error estándar de la pendiente propaga Var(log m_i) ≈ (s_i/m_i)².

    Returns:
        (pendiente, error estándar, intercepto); nan con menos de dos puntos
    """
    abscissa = np.asarray(x, dtype=float)
    values = np.asarray(means, dtype=float)
    if abscissa.size < 2:
        return math.nan, math.nan, math.nan
    slope, intercept = np.polyfit(abscissa, np.log(values), 1)
    centered = abscissa - abscissa.mean()
    weights = centered / np.sum(centered ** 2)
    relative = np.asarray(stderrs, dtype=float) / values
    return float(slope), float(np.sqrt(np.sum(weights ** 2 * relative ** 2))), float(intercept)


def rates_experiment(
    q: float,
    r: float,
    R: float,
    eps_grid: Sequence[float],
    n_rep: Optional[int] = None,
    seed: int = 0,
    length: int = 8192,
    lambda_multiplier: float = 1.0,
    pen_multiplier: float = 1.0,
    max_workers: Optional[int] = None,
) -> ExperimentReport:
    """
    Riesgo del Lasso seleccionado sobre un objetivo potencial y pendiente log-log
    frente a ε√ln(R/ε); la tasa adaptativa predice pendiente 2 − q.

    Raises:
        RegimeError: si algún ε incumple R/ε ≥ max(e, q/(4r))
    """
    started = time.perf_counter()
    for eps in eps_grid:
        check_rates_regime(q, r, R, eps)
    logger.info(f"Experimento rates: q={q}, r={r}, R={R}, eps={list(eps_grid)}")
    target = make_power_law_target(q, r, R, length)

    estimates = [
        mc_risk(
            Estimator.SELECTED_LASSO, target, eps, n_rep, seed,
            p=length, lambda_multiplier=lambda_multiplier, pen_multiplier=pen_multiplier,
            max_workers=max_workers, stream_key=(STREAM_REPLICATIONS, index),
        )
        for index, eps in enumerate(eps_grid)
    ]
    x = [math.log(eps * math.sqrt(math.log(R / eps))) for eps in eps_grid]
    slope, slope_stderr, intercept = fit_loglog_slope(
        x, [e.mean_risk for e in estimates], [e.stderr for e in estimates]
    )
    rows = [
        {
            "eps": eps,
            "risk_mean": estimate.mean_risk,
            "risk_stderr": estimate.stderr,
            "p_hat_median": estimate.extras["p_hat_median"],
            "slope": slope,
            "slope_stderr": slope_stderr,
        }
        for eps, estimate in zip(eps_grid, estimates)
    ]
    reference_ratio = float(np.mean(
        [e.mean_risk / selected_rate_bound(eps, R, q) for eps, e in zip(eps_grid, estimates)]
    ))
    summary = {
        "slope": slope,
        "slope_stderr": slope_stderr,
        "intercept": intercept,
        "expected_slope": 2.0 - q,
        "reference_ratio_mean": reference_ratio,
    }
    return finish_report("rates", RATES_COLUMNS, rows, [e.stderr for e in estimates], seed, started, summary)


def lasso_rates_experiment(
    q: float,
    r: float,
    R: float,
    eps_grid: Sequence[float],
    p_grid: Sequence[int],
    n_rep: Optional[int] = None,
    seed: int = 0,
    length: int = 8192,
    max_workers: Optional[int] = None,
) -> ExperimentReport:
    """
    Lasso a p fijo frente al Lasso seleccionado sobre las mismas réplicas.

    Cada fila lleva el régimen de la cota a p fijo y su valor sin constante.
    """
    started = time.perf_counter()
    for eps in eps_grid:
        check_rates_regime(q, r, R, eps)
    if any(not 1 <= p <= length for p in p_grid):
        raise ParameterError(f"Los niveles de p_grid deben estar en [1, {length}]")
    logger.info(f"Experimento lasso-rates: p={list(p_grid)}, eps={list(eps_grid)}")
    target = make_power_law_target(q, r, R, length)

    rows, stderr = [], []
    for index, eps in enumerate(eps_grid):
        key = (STREAM_REPLICATIONS, index)
        selected = mc_risk(
            Estimator.SELECTED_LASSO, target, eps, n_rep, seed,
            p=length, max_workers=max_workers, stream_key=key,
        )
        for p in p_grid:
            fixed = mc_risk(
                Estimator.LASSO, target, eps, n_rep, seed,
                p=p, max_workers=max_workers, stream_key=key,
            )
            regime, bound = lasso_rate_regime(p, eps, R, q, r)
            rows.append({
                "eps": eps,
                "p": p,
                "regime": regime.value,
                "regime_bound": bound,
                "lasso_risk_mean": fixed.mean_risk,
                "lasso_risk_stderr": fixed.stderr,
                "selected_risk_mean": selected.mean_risk,
                "selected_risk_stderr": selected.stderr,
            })
            stderr.append(fixed.stderr)
    return finish_report("lasso-rates", LASSO_RATES_COLUMNS, rows, stderr, seed, started)


def minimax_hypercube_experiment(
    q: float,
    r: float,
    R: float,
    eps: float,
    n_targets: int,
    n_rep: Optional[int] = None,
    seed: int = 0,
    max_workers: Optional[int] = None,
) -> ExperimentReport:
    """
    Riesgo del Lasso seleccionado sobre vértices aleatorios del hipercubo.

    reference = u^{1−q/2} R^q (ε√ln(R/ε))^{2−q}; el cociente solo se informa.

    Raises:
        RegimeError: fuera de las hipótesis de la cota inferior
    """
    started = time.perf_counter()
    if n_targets < 1:
        raise ParameterError(f"n_targets debe ser ≥ 1, recibido {n_targets}")
    u = u_param(q, r)
    reference = u ** (1.0 - q / 2.0) * selected_rate_bound(eps, R, q)
    rows, stderr = [], []
    for index in range(n_targets):
        target = hypercube_target(q, r, R, eps, derive_stream(seed, STREAM_TARGETS, index))
        estimate = mc_risk(
            Estimator.SELECTED_LASSO, target, eps, n_rep, seed,
            p=target.extras["p"], max_workers=max_workers,
            stream_key=(STREAM_REPLICATIONS, index),
        )
        rows.append({
            "target": index,
            "p": target.extras["p"],
            "d": target.extras["d"],
            "M": target.extras["M"],
            "risk_mean": estimate.mean_risk,
            "risk_stderr": estimate.stderr,
            "reference": reference,
            "ratio": estimate.mean_risk / reference,
        })
        stderr.append(estimate.stderr)
    ratio_mean, ratio_stderr = mean_and_stderr(np.array([row["ratio"] for row in rows]))
    summary = {"ratio_mean": ratio_mean, "ratio_stderr": ratio_stderr, "u": u}
    return finish_report("minimax-hypercube", MINIMAX_COLUMNS, rows, stderr, seed, started, summary)


# ==========================================
# AJUSTES INDIVIDUALES
# ==========================================

def _single_observation(
    target: TargetSpec,
    eps: float,
    size: int,
    seed: int,
    dictionary: Optional[Dictionary],
):
    rng = derive_stream(seed, STREAM_REPLICATIONS, 0, 0)
    if dictionary is None:
        return sample_sequence_model(target.coefficients, eps, size, rng)
    sigma = NoiseLevel(eps).sigma(dictionary.n)
    return sample_regression(target.on_design(dictionary), sigma, dictionary.design, rng)


def fit_experiment(
    target: TargetSpec,
    eps: float,
    p: int,
    seed: int = 0,
    dictionary: Optional[Dictionary] = None,
    lam: Optional[float] = None,
    tol: Optional[float] = None,
    max_iter: Optional[int] = None,
) -> ExperimentReport:
    """Un ajuste Lasso sobre una observación: coeficientes verdaderos y estimados."""
    started = time.perf_counter()
    if not eps > 0:
        raise ParameterError(f"eps debe ser > 0, recibido {eps}")
    lam = lambda_p(p, eps) if lam is None else lam
    y = _single_observation(target, eps, p, seed, dictionary)
    if dictionary is None:
        theta_hat = soft_threshold_fit(y, lam)
        summary: dict[str, Any] = {"lambda": lam, "kkt_violation": 0.0, "iterations": 0}
    else:
        fit = lasso_cd(truncate(dictionary, p), y, lam, tol, max_iter)
        theta_hat = fit.theta
        summary = {
            "lambda": lam,
            "objective": fit.objective,
            "kkt_violation": fit.kkt_violation,
            "iterations": fit.iterations,
        }
    theta_star = target.padded(p) if target.values is None else np.full(p, math.nan)
    rows = [
        {"j": j + 1, "theta_star": float(theta_star[j]), "theta_hat": float(theta_hat[j])}
        for j in range(p)
    ]
    return finish_report("fit", FIT_COLUMNS, rows, [], seed, started, summary)


def select_experiment(
    target: TargetSpec,
    eps: float,
    p_max: int,
    seed: int = 0,
    dictionary: Optional[Dictionary] = None,
    lambda_multiplier: float = 1.0,
    pen_multiplier: float = 1.0,
    tol: Optional[float] = None,
    max_iter: Optional[int] = None,
) -> ExperimentReport:
    """Traza del Lasso seleccionado sobre una observación: criterio por nivel."""
    started = time.perf_counter()
    if not eps > 0:
        raise ParameterError(f"eps debe ser > 0, recibido {eps}")
    y = _single_observation(target, eps, p_max, seed, dictionary)
    if dictionary is None:
        trace = selected_soft_threshold(y, eps, p_max, lambda_multiplier, pen_multiplier)
    else:
        trace = selected_lasso(
            dictionary, y, eps, p_max, tol, max_iter, lambda_multiplier, pen_multiplier
        )
    rows = [
        {
            "p": record.p,
            "lambda_p": record.lambda_p,
            "pen_p": record.pen_p,
            "gamma": record.gamma,
            "l1_norm": record.fit.l1_norm,
            "criterion": record.criterion,
            "selected": record.p == trace.p_hat,
        }
        for record in trace.per_level
    ]
    return finish_report("select", SELECT_COLUMNS, rows, [], seed, started, {"p_hat": trace.p_hat})
