"""
Hipótesis de régimen de los resultados de tasas y de cota inferior minimax.

Cada comprobación lanza RegimeError con la desigualdad incumplida; la CLI
las reutiliza antes de despachar un experimento.
"""
import math

from dyadic_lasso.errors import ParameterError, RegimeError


def u_param(q: float, r: float) -> float:
    """u = 1/r − q(1 + 1/(2r)); positivo si y solo si r < 1/q − 1/2."""
    if not r > 0 or not q > 0:
        raise ParameterError(f"q y r deben ser > 0, recibido q={q}, r={r}")
    return 1.0 / r - q * (1.0 + 1.0 / (2.0 * r))


def check_interpolation_index(q: float) -> None:
    if not 1.0 < q < 2.0:
        raise ParameterError(f"q debe estar en el intervalo abierto (1, 2), recibido {q}")


def check_rates_regime(q: float, r: float, R: float, eps: float) -> None:
    """R/ε ≥ max(e, q/(4r)) para la tasa adaptativa del Lasso seleccionado."""
    check_interpolation_index(q)
    if not r > 0 or not R > 0 or not eps > 0:
        raise ParameterError(f"r, R y eps deben ser > 0, recibido r={r}, R={R}, eps={eps}")
    threshold = max(math.e, q / (4.0 * r))
    if R / eps < threshold:
        raise RegimeError("R/eps ≥ max(e, q/(4r))", f"R/eps={R / eps:.6g} < {threshold:.6g} con eps={eps}")


def check_hypercube_regime(q: float, r: float, R: float, eps: float) -> float:
    """
    Hipótesis de la cota inferior minimax; devuelve u.

    1 < q < 2,  0 < r < 1/q − 1/2 (⇔ u > 0),  R/ε ≥ max(e², u²).
    """
    check_interpolation_index(q)
    if not R > 0 or not eps > 0:
        raise ParameterError(f"R y eps deben ser > 0, recibido R={R}, eps={eps}")
    u = u_param(q, r)
    if not r < 1.0 / q - 0.5 or not u > 0:
        raise RegimeError("0 < r < 1/q − 1/2 (u > 0)", f"r={r}, 1/q − 1/2={1.0 / q - 0.5:.6g}, u={u:.6g}")
    threshold = max(math.e ** 2, u ** 2)
    if R / eps < threshold:
        raise RegimeError("R/eps ≥ max(e², u²)", f"R/eps={R / eps:.6g} < {threshold:.6g}")
    return u
