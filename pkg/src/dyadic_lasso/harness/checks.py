"""
Comprobaciones numéricas directas de hechos auxiliares de las demostraciones.

- Δ_m: el supremo del proceso isonormal sobre la bola ℓ1 de radio m es
  mε·max_j |W(φ_j)|, con (W(φ_j))_j gaussiano de covarianza la Gram;
  se contrasta su media Monte Carlo con mε√(2 ln 2p).
- Identidades de integración por capas sobre una secuencia a y un umbral γ.
- Empaquetado voraz de los patrones de Heaviside frente a (n+1)^{d+1}(4+t)/t.
"""
from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Optional, Sequence

import numpy as np
from numpy.typing import ArrayLike, NDArray
from pydantic import BaseModel

from dyadic_lasso.config import get_experiment_settings
from dyadic_lasso.dictionaries import Dictionary, heaviside_patterns
from dyadic_lasso.errors import ParameterError
from dyadic_lasso.geometry import Design, derive_stream
from dyadic_lasso.logging import get_logger

from .montecarlo import mean_and_stderr
from .report import ExperimentReport, finish_report

logger = get_logger(__name__)

CHUNK_SIZE = 10_000
IDENTITY_TOL = 1e-12

DELTA_M_COLUMNS = ["p", "m", "eps", "mc_estimate", "mc_stderr", "bound", "pass"]
LEMMA_COLUMNS = ["case", "gamma", "lemma82_lhs", "lemma82_rhs", "lemma83_lhs", "lemma83_rhs", "pass"]
PACKING_COLUMNS = ["t", "greedy_packing_count", "bound", "pass"]


# ==========================================
# SUPREMO GAUSSIANO Δ_m
# ==========================================

class DeltaMCheck(BaseModel):
    """Media Monte Carlo de sup_{S_m} εW frente a su cota."""
    p: int
    m: float
    eps: float
    mc_estimate: float
    mc_stderr: float
    bound: float
    passed: bool


def gram_square_root(gram: ArrayLike) -> NDArray[np.float64]:
    """Raíz simétrica de una Gram semidefinida; autovalores negativos por redondeo a 0."""
    matrix = np.asarray(gram, dtype=float)
    eigenvalues, eigenvectors = np.linalg.eigh((matrix + matrix.T) / 2.0)
    return (eigenvectors * np.sqrt(np.clip(eigenvalues, 0.0, None))) @ eigenvectors.T


def delta_m_check(
    dictionary: Dictionary,
    m: float,
    eps: float,
    n_rep: Optional[int] = None,
    seed: int = 0,
    max_workers: Optional[int] = None,
    stream_key: tuple[int, ...] = (),
) -> DeltaMCheck:
    """
    Contraste E[sup_{S_m} εW] ≤ mε√(2 ln 2p).

    Las extracciones se hacen por bloques de CHUNK_SIZE con flujos derivados
    del índice de bloque: el resultado no depende de max_workers.
    """
    settings = get_experiment_settings()
    n_rep = settings.DELTA_M_N_REP if n_rep is None else n_rep
    max_workers = settings.THREADS if max_workers is None else max_workers
    if not dictionary.normalized:
        raise ParameterError("delta_m_check requiere un diccionario normalizado")
    if not m > 0 or not eps > 0:
        raise ParameterError(f"m y eps deben ser > 0, recibido m={m}, eps={eps}")
    if n_rep < 2:
        raise ParameterError(f"n_rep debe ser ≥ 2, recibido {n_rep}")

    root = gram_square_root(dictionary.gram)
    p = dictionary.p
    n_chunks = math.ceil(n_rep / CHUNK_SIZE)

    def chunk(index: int) -> NDArray[np.float64]:
        size = min(CHUNK_SIZE, n_rep - index * CHUNK_SIZE)
        rng = derive_stream(seed, *stream_key, index)
        draws = rng.standard_normal((size, p)) @ root
        return np.abs(draws).max(axis=1)

    indices = range(n_chunks)
    if max_workers > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            maxima = list(pool.map(chunk, indices))
    else:
        maxima = [chunk(index) for index in indices]

    estimate, stderr = mean_and_stderr(m * eps * np.concatenate(maxima))
    bound = m * eps * math.sqrt(2.0 * math.log(2.0 * p))
    logger.debug(f"Δ_m p={p} m={m}: {estimate:.4g} ± {stderr:.2g} frente a {bound:.4g}")
    return DeltaMCheck(
        p=p,
        m=m,
        eps=eps,
        mc_estimate=estimate,
        mc_stderr=stderr,
        bound=bound,
        passed=estimate - 3.0 * stderr <= bound,
    )


def delta_m_experiment(
    dictionaries: Sequence[Dictionary],
    m_grid: Sequence[float],
    eps: float,
    n_rep: Optional[int] = None,
    seed: int = 0,
    max_workers: Optional[int] = None,
) -> ExperimentReport:
    """delta_m_check para cada diccionario y cada m."""
    started = time.perf_counter()
    rows, stderr = [], []
    for dictionary in dictionaries:
        for m in m_grid:
            check = delta_m_check(
                dictionary, m, eps, n_rep, seed, max_workers, stream_key=(0, len(rows))
            )
            rows.append({
                "p": check.p,
                "m": check.m,
                "eps": check.eps,
                "mc_estimate": check.mc_estimate,
                "mc_stderr": check.mc_stderr,
                "bound": check.bound,
                "pass": check.passed,
            })
            stderr.append(check.mc_stderr)
    return finish_report("delta-m", DELTA_M_COLUMNS, rows, stderr, seed, started)


# ==========================================
# IDENTIDADES DE INTEGRACIÓN POR CAPAS
# ==========================================

class LemmaCheck(BaseModel):
    """Los dos lados de cada relación y su veredicto."""
    gamma: float
    lemma82_lhs: float
    lemma82_rhs: float
    lemma83_lhs: float
    lemma83_rhs: float
    passed: bool


def lemma_identity_checks(a: ArrayLike, gamma: float) -> LemmaCheck:
    """
    Σ a_j² 1{|a_j| ≤ γ} ≤ 2Σ ∫_0^γ t 1{|a_j| > t} dt = Σ min(|a_j|, γ)²  (desigualdad)
    Σ |a_j| 1{|a_j| > γ} = γ #{|a_j| > γ} + Σ ∫_γ^∞ 1{|a_j| > t} dt      (igualdad)

    Las integrales se evalúan en forma cerrada.
    """
    if not gamma > 0:
        raise ParameterError(f"gamma debe ser > 0, recibido {gamma}")
    magnitudes = np.abs(np.asarray(a, dtype=float).ravel())
    above = magnitudes > gamma

    lhs82 = float(np.sum(magnitudes[~above] ** 2))
    rhs82 = float(np.sum(np.minimum(magnitudes, gamma) ** 2))
    lhs83 = float(np.sum(magnitudes[above]))
    rhs83 = float(gamma * np.count_nonzero(above) + np.sum(np.maximum(magnitudes - gamma, 0.0)))

    scale = max(1.0, abs(rhs82), abs(rhs83))
    passed = lhs82 <= rhs82 + IDENTITY_TOL * scale and abs(lhs83 - rhs83) <= IDENTITY_TOL * scale
    return LemmaCheck(
        gamma=gamma,
        lemma82_lhs=lhs82,
        lemma82_rhs=rhs82,
        lemma83_lhs=lhs83,
        lemma83_rhs=rhs83,
        passed=passed,
    )


def lemma_checks_experiment(n_cases: int = 1000, seed: int = 0) -> ExperimentReport:
    """Barrido aleatorio de (a, γ) sobre ambas relaciones."""
    started = time.perf_counter()
    if n_cases < 1:
        raise ParameterError(f"n_cases debe ser ≥ 1, recibido {n_cases}")
    rows = []
    for case in range(n_cases):
        rng = derive_stream(seed, case)
        a = rng.normal(0.0, 2.0, size=int(rng.integers(1, 64)))
        gamma = float(rng.uniform(0.01, 4.0))
        check = lemma_identity_checks(a, gamma)
        rows.append({
            "case": case,
            "gamma": check.gamma,
            "lemma82_lhs": check.lemma82_lhs,
            "lemma82_rhs": check.lemma82_rhs,
            "lemma83_lhs": check.lemma83_lhs,
            "lemma83_rhs": check.lemma83_rhs,
            "pass": check.passed,
        })
    summary = {"all_pass": all(row["pass"] for row in rows)}
    return finish_report("lemma-checks", LEMMA_COLUMNS, rows, [], seed, started, summary)


# ==========================================
# EMPAQUETADO DE LOS PATRONES DE HEAVISIDE
# ==========================================

def greedy_packing(patterns: NDArray[np.float64], t: float) -> int:
    """
    Empaquetado voraz maximal: se conserva cada columna a distancia empírica > t
    de todas las ya conservadas. Da una cota inferior de N(t).
    """
    if not t > 0:
        raise ParameterError(f"t debe ser > 0, recibido {t}")
    n = patterns.shape[0]
    kept: list[NDArray[np.float64]] = []
    for column in patterns.T:
        if kept:
            distances = np.sqrt(np.sum((np.array(kept) - column) ** 2, axis=1) / n)
            if np.any(distances <= t):
                continue
        kept.append(column)
    return len(kept)


def packing_bound(n: int, d: int, t: float) -> float:
    """(n+1)^{d+1}(4+t)/t."""
    return float((n + 1) ** (d + 1) * (4.0 + t) / t)


def packing_check(design: Design, t_grid: Sequence[float]) -> ExperimentReport:
    """Empaquetado voraz de los patrones 0/1 (antes de normalizar) para cada t."""
    started = time.perf_counter()
    patterns = heaviside_patterns(design)
    rows = []
    for t in t_grid:
        count = greedy_packing(patterns, t)
        bound = packing_bound(design.n, design.d, t)
        rows.append({"t": t, "greedy_packing_count": count, "bound": bound, "pass": count <= bound})
    summary = {"n_patterns": int(patterns.shape[1]), "all_pass": all(row["pass"] for row in rows)}
    return finish_report("packing", PACKING_COLUMNS, rows, [], None, started, summary)
