"""
Calendarios de regularización.

    λ_p   = 4ε(√ln p + 1)                      Lasso sobre D_p
    pen(p) = 5ε² ln p                           penalización ℓ0 del nivel p
    λ_nn  = 28σ/√n (√((d+1) ln(n+1)) + 4)       crestas de Heaviside en R^d

Se usa el caso de igualdad de cada hipótesis.
"""
import math

from dyadic_lasso.errors import ParameterError


def lambda_p(p: int, eps: float) -> float:
    """λ_p = 4ε(√ln p + 1), logaritmo natural."""
    if p < 1:
        raise ParameterError(f"p debe ser ≥ 1, recibido {p}")
    if not eps > 0:
        raise ParameterError(f"eps debe ser > 0, recibido {eps}")
    return 4.0 * eps * (math.sqrt(math.log(p)) + 1.0)


def pen_p(p: int, eps: float) -> float:
    """pen(p) = 5ε² ln p."""
    if p < 1:
        raise ParameterError(f"p debe ser ≥ 1, recibido {p}")
    if not eps > 0:
        raise ParameterError(f"eps debe ser > 0, recibido {eps}")
    return 5.0 * eps ** 2 * math.log(p)


def lambda_nn(n: int, d: int, sigma: float) -> float:
    """λ = 28σ/√n·(√(ln((n+1)^{d+1})) + 4)."""
    if n < 1 or d < 1:
        raise ParameterError(f"n y d deben ser ≥ 1, recibido n={n}, d={d}")
    if not sigma > 0:
        raise ParameterError(f"sigma debe ser > 0, recibido {sigma}")
    return 28.0 * sigma / math.sqrt(n) * (math.sqrt((d + 1) * math.log(n + 1)) + 4.0)
