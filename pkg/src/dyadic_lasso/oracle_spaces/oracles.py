"""
Lasso determinista, encuadre por el K-funcional y cotas de referencia.

El Lasso determinista sustituye las observaciones y por el objetivo f sin
ruido; su valor óptimo

    L_D(f, λ) = inf_θ ‖f − Φθ‖² + λ‖θ‖₁

es el término de sesgo de las desigualdades oráculo. En representación
ortonormal se encuadra con el K-funcional:

    ½ inf_δ (K(f, δ)² + λ²/(2δ²)) ≤ L_D(f, λ) ≤ inf_δ (K(f, δ)² + λ²/(4δ²))

Las cotas de tasa se devuelven sin sus constantes absolutas desconocidas.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence

import numpy as np
from numpy.typing import ArrayLike, NDArray
from pydantic import BaseModel

from dyadic_lasso.config import get_experiment_settings
from dyadic_lasso.dictionaries import Dictionary, make_orthonormal_sequence
from dyadic_lasso.errors import ParameterError, SandwichBracketError
from dyadic_lasso.geometry import SampleVector
from dyadic_lasso.logging import get_logger
from dyadic_lasso.solver import LassoFit, k_functional_orthonormal, lasso_cd, soft_threshold_fit

from .regimes import check_interpolation_index

logger = get_logger(__name__)

INITIAL_EXPONENT = 10
WIDEN_EXPONENT = 4


# ==========================================
# LASSO DETERMINISTA
# ==========================================

def deterministic_lasso(
    dictionary: Dictionary,
    f_on_design: ArrayLike,
    lam: float,
    tol: Optional[float] = None,
    max_iter: Optional[int] = None,
    theta0: Optional[ArrayLike] = None,
) -> tuple[float, LassoFit]:
    """
    L_D(f, λ) y el ajuste que lo alcanza.

    Mismo contrato que lasso_cd con y = f (sin ruido).
    """
    fit = lasso_cd(dictionary, f_on_design, lam, tol, max_iter, theta0)
    return fit.objective, fit


def deterministic_lasso_sequence(
    theta_star: ArrayLike,
    p: int,
    lam: float,
) -> tuple[float, NDArray[np.float64]]:
    """
    Lasso determinista sobre las p primeras coordenadas ortonormales, en forma cerrada.

    La cola Σ_{j>p} θ*_j² entra como sesgo.

    Examples:
        >>> value, theta = deterministic_lasso_sequence([1.0, 0.2], 2, 1.0)
        >>> round(value, 12), theta.tolist()
        (0.79, [0.5, 0.0])
    """
    if p < 1:
        raise ParameterError(f"p debe ser ≥ 1, recibido {p}")
    source = np.asarray(theta_star, dtype=float).ravel()
    head = np.zeros(p)
    head[: min(p, source.shape[0])] = source[:p]
    tail = float(np.sum(source[p:] ** 2))
    theta = soft_threshold_fit(head, lam)
    value = float(np.sum((head - theta) ** 2) + tail + lam * np.sum(np.abs(theta)))
    return value, theta


@dataclass(frozen=True, eq=False)
class OracleCurve:
    """Valores L_D(f, λ) a lo largo de una rejilla de λ."""

    grid: NDArray[np.float64]
    values: NDArray[np.float64]
    minimizers: tuple[NDArray[np.float64], ...]


def oracle_curve(
    dictionary: Dictionary,
    f_on_design: ArrayLike,
    lambdas: Sequence[float],
    tol: Optional[float] = None,
) -> OracleCurve:
    """L_D(f, λ) para cada λ de la rejilla, con arranque en caliente entre puntos."""
    grid = np.asarray(lambdas, dtype=float)
    values = []
    minimizers = []
    previous = None
    for lam in grid:
        value, fit = deterministic_lasso(dictionary, f_on_design, float(lam), tol, theta0=previous)
        values.append(value)
        minimizers.append(fit.theta)
        previous = fit.theta
    return OracleCurve(grid, np.array(values), tuple(minimizers))


# ==========================================
# ENCUADRE POR EL K-FUNCIONAL
# ==========================================

class SandwichCheck(BaseModel):
    """Resultado del encuadre de L_D(f, λ)."""
    lower: float
    L: float
    upper: float
    delta_lower: float
    delta_upper: float
    passed: bool


def _infimum_on_grid(
    objective,
    exponents: tuple[float, float],
    ratio: float,
    tol: float,
    max_exponent: float,
) -> tuple[float, float]:
    """Mínimo sobre δ = 2^e, ensanchando la rejilla mientras el mínimo quede en un extremo."""
    low, high = exponents
    step = math.log2(ratio)
    while True:
        deltas = 2.0 ** np.arange(low, high + step / 2, step)
        values = np.array([objective(delta) for delta in deltas])
        index = int(np.argmin(values))
        interior = 0 < index < deltas.size - 1
        if interior:
            return float(values[index]), float(deltas[index])
        at_low = index == 0
        if (at_low and low <= -max_exponent) or (not at_low and high >= max_exponent):
            # Ínfimo en el borde de la rejilla máxima: aceptable si es despreciable o si
            # el objetivo ya es plano (K saturado en ‖f‖ cuando δ → ∞)
            neighbour = values[1] if at_low else values[-2]
            if values[index] <= tol or abs(neighbour - values[index]) <= tol:
                return float(values[index]), float(deltas[index])
            raise SandwichBracketError((float(deltas[0]), float(deltas[-1])))
        if at_low:
            low = max(low - WIDEN_EXPONENT, -max_exponent)
        else:
            high = min(high + WIDEN_EXPONENT, max_exponent)
        logger.warning(f"Rejilla en δ ensanchada a [2^{low:g}, 2^{high:g}]")


def k_sandwich_check(
    f_coeffs: ArrayLike,
    lam: float,
    delta_grid: Optional[tuple[float, float]] = None,
    tol: float = 1e-4,
) -> SandwichCheck:
    """
    Comprueba el encuadre de L_D(f, λ) por el K-funcional en la base ortonormal.

    L se obtiene con el Lasso determinista sobre el diccionario ortonormal de
    secuencia; los ínfimos en δ se evalúan sobre una rejilla geométrica.

    Args:
        f_coeffs: Coeficientes de f
        lam: λ > 0
        delta_grid: Extremos iniciales (δ_min, δ_max); por defecto 2^{±10}
        tol: Holgura conjunta de solver y rejilla

    Raises:
        SandwichBracketError: si el ínfimo no queda interior tras ensanchar al máximo
    """
    if not lam > 0:
        raise ParameterError(f"lambda debe ser > 0, recibido {lam}")
    settings = get_experiment_settings()
    f = np.asarray(f_coeffs, dtype=float).ravel()
    if f.size == 0:
        raise ParameterError("f_coeffs no puede estar vacío")

    if delta_grid is None:
        exponents = (-float(INITIAL_EXPONENT), float(INITIAL_EXPONENT))
    else:
        if not 0 < delta_grid[0] < delta_grid[1]:
            raise ParameterError(f"delta_grid debe cumplir 0 < δ_min < δ_max, recibido {delta_grid}")
        exponents = (math.log2(delta_grid[0]), math.log2(delta_grid[1]))

    dictionary = make_orthonormal_sequence(f.size)
    value, _ = deterministic_lasso(dictionary, dictionary.synthesize(f), lam)

    def k_squared(delta: float) -> float:
        return k_functional_orthonormal(f, delta)[0] ** 2

    lower, delta_lower = _infimum_on_grid(
        lambda d: 0.5 * (k_squared(d) + lam ** 2 / (2.0 * d ** 2)),
        exponents,
        settings.SANDWICH_GRID_RATIO,
        tol,
        settings.SANDWICH_MAX_EXPONENT,
    )
    upper, delta_upper = _infimum_on_grid(
        lambda d: k_squared(d) + lam ** 2 / (4.0 * d ** 2),
        exponents,
        settings.SANDWICH_GRID_RATIO,
        tol,
        settings.SANDWICH_MAX_EXPONENT,
    )
    passed = lower <= value + tol and value <= upper + tol
    if not passed:
        logger.warning(f"Encuadre incumplido: {lower:.6g} ≤ {value:.6g} ≤ {upper:.6g} (λ={lam})")
    return SandwichCheck(
        lower=lower,
        L=value,
        upper=upper,
        delta_lower=delta_lower,
        delta_upper=delta_upper,
        passed=passed,
    )


# ==========================================
# COTAS DE TASA (SIN CONSTANTES)
# ==========================================

class RateRegime(str, Enum):
    """Régimen de la cota de riesgo del Lasso a p fijo."""
    NOISE = "noise"
    INTERPOLATION = "interpolation"
    TRUNCATION = "truncation"


def interp_rate_bound(p: int, lam: float, R: float, q: float, r: float) -> float:
    """max(R^q λ^{2−q}, (R p^{−r})^{2q/(2−q)} λ^{4(1−q)/(2−q)})."""
    check_interpolation_index(q)
    if p < 1 or not lam > 0 or R < 0 or not r > 0:
        raise ParameterError(f"Se requiere p ≥ 1, λ > 0, R ≥ 0, r > 0; recibido p={p}, λ={lam}, R={R}, r={r}")
    first = R ** q * lam ** (2.0 - q)
    second = (R * p ** (-r)) ** (2.0 * q / (2.0 - q)) * lam ** (4.0 * (1.0 - q) / (2.0 - q))
    return max(first, second)


def lasso_rate_regime(p: int, eps: float, R: float, q: float, r: float) -> tuple[RateRegime, float]:
    """
    Régimen y cota de E‖f − f̂_p‖² para el Lasso a p fijo sobre B_{q,r}(R).

        R/ε < (√ln p + 1)^{(q−1)/q}             → ruido:         ε²(√ln p + 1)
        R/ε > p^{2r/q}(√ln p + 1)               → truncación:    (R p^{−r})^{2q/(2−q)} (ε(√ln p + 1))^{4(1−q)/(2−q)}
        en otro caso                            → interpolación: R^q (ε(√ln p + 1))^{2−q}
    """
    check_interpolation_index(q)
    if p < 1 or not eps > 0 or not R > 0 or not r > 0:
        raise ParameterError(f"Se requiere p ≥ 1 y eps, R, r > 0; recibido p={p}, eps={eps}, R={R}, r={r}")
    level = math.sqrt(math.log(p)) + 1.0
    snr = R / eps
    if snr < level ** ((q - 1.0) / q):
        return RateRegime.NOISE, eps ** 2 * level
    if snr > p ** (2.0 * r / q) * level:
        bound = (R * p ** (-r)) ** (2.0 * q / (2.0 - q)) * (eps * level) ** (4.0 * (1.0 - q) / (2.0 - q))
        return RateRegime.TRUNCATION, bound
    return RateRegime.INTERPOLATION, R ** q * (eps * level) ** (2.0 - q)


def selected_rate_bound(eps: float, R: float, q: float) -> float:
    """R^q (ε√ln(R/ε))^{2−q}: tasa adaptativa del Lasso seleccionado."""
    if not eps > 0 or not R > eps:
        raise ParameterError(f"Se requiere 0 < eps < R, recibido eps={eps}, R={R}")
    return R ** q * (eps * math.sqrt(math.log(R / eps))) ** (2.0 - q)
