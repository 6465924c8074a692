"""
Jerarquía de excepciones de dyadic_lasso.

Cada excepción declara el código de salida que usa la CLI cuando llega
hasta el punto de entrada sin ser capturada:

    2  configuración o parámetro inválido
    3  experimento desconocido
    4  fuera del régimen de validez de un resultado teórico
    5  fallo del solver o de una réplica Monte Carlo
"""
from typing import Any, Optional


class DyadicLassoError(Exception):
    """Excepción base del paquete."""

    exit_code: int = 1


# ==========================================
# ERRORES DE ENTRADA
# ==========================================

class DimensionError(DyadicLassoError, ValueError):
    """Longitudes incompatibles con el diseño."""

    exit_code = 2


class ParameterError(DyadicLassoError, ValueError):
    """Argumento fuera de su dominio."""

    exit_code = 2


class DegenerateDictionaryError(ParameterError):
    """Columna idénticamente nula sobre el diseño."""

    def __init__(self, index: int):
        self.index = index
        super().__init__(f"La columna {index} del diccionario es nula sobre el diseño")


class UnsupportedDimensionError(ParameterError):
    """Dimensión del diseño no soportada por la enumeración de Heaviside."""


class ConfigError(DyadicLassoError):
    """Fichero de configuración ilegible o inválido."""

    exit_code = 2


class UnknownExperimentError(DyadicLassoError):
    """Nombre de experimento no registrado."""

    exit_code = 3

    def __init__(self, name: str, known: tuple[str, ...] = ()):
        self.name = name
        message = f"Experimento desconocido: '{name}'"
        if known:
            message += f". Disponibles: {', '.join(known)}"
        super().__init__(message)


# ==========================================
# ERRORES DE RÉGIMEN
# ==========================================

class RegimeError(DyadicLassoError):
    """Hipótesis de un resultado teórico no satisfecha."""

    exit_code = 4

    def __init__(self, inequality: str, detail: str = ""):
        self.inequality = inequality
        message = f"Régimen inválido: no se cumple {inequality}"
        if detail:
            message += f" ({detail})"
        super().__init__(message)


# ==========================================
# ERRORES NUMÉRICOS
# ==========================================

class SolverConvergenceError(DyadicLassoError):
    """El descenso por coordenadas agotó max_iter sin alcanzar tol."""

    exit_code = 5

    def __init__(
        self,
        best_fit: Any,
        kkt_violation: float,
        iterations: int,
        level: Optional[int] = None,
    ):
        self.best_fit = best_fit
        self.kkt_violation = kkt_violation
        self.iterations = iterations
        self.level = level
        message = (
            f"Sin convergencia tras {iterations} iteraciones "
            f"(violación KKT {kkt_violation:.3e})"
        )
        if level is not None:
            message += f" en el nivel p={level}"
        super().__init__(message)

    def at_level(self, level: int) -> "SolverConvergenceError":
        """Copia del error etiquetada con el nivel de truncación."""
        return SolverConvergenceError(self.best_fit, self.kkt_violation, self.iterations, level)


class SandwichBracketError(DyadicLassoError):
    """La rejilla en δ no encuadra el ínfimo tras ensancharla al máximo."""

    exit_code = 5

    def __init__(self, bracket: tuple[float, float]):
        self.bracket = bracket
        super().__init__(
            f"Ínfimo en δ no interior tras ensanchar la rejilla a [{bracket[0]:.3e}, {bracket[1]:.3e}]"
        )


class ReplicationError(DyadicLassoError):
    """Fallo en una réplica Monte Carlo concreta."""

    exit_code = 5

    def __init__(self, replication: int, cause: Exception):
        self.replication = replication
        self.cause = cause
        super().__init__(f"Réplica {replication} abortada: {cause}")
