"""
Valores por defecto de solver y experimentos Monte Carlo.

Extiende BaseSettings con:
- Tolerancias del descenso por coordenadas
- Tamaños de réplica por tipo de experimento
- Rejilla en δ del encuadre de la K-funcional
"""
from functools import lru_cache

from pydantic import Field, field_validator

from .base import BaseSettings


class ExperimentSettings(BaseSettings):
    """
    Settings de cálculo.

    Hereda todas las settings de BaseSettings y añade los defaults que
    RunConfig usa cuando el fichero de configuración no los fija.
    """

    # ==========================================
    # SOLVER
    # ==========================================

    SOLVER_TOL: float = Field(
        default=1e-8,
        gt=0,
        le=1e-2,
        description="Tolerancia del certificado KKT"
    )

    SOLVER_MAX_ITER: int = Field(
        default=100_000,
        ge=1,
        le=10_000_000,
        description="Máximo de pasadas del descenso por coordenadas"
    )

    # ==========================================
    # MONTE CARLO
    # ==========================================

    MC_N_REP: int = Field(
        default=200,
        ge=2,
        le=1_000_000,
        description="Réplicas por defecto de los experimentos de riesgo"
    )

    DELTA_M_N_REP: int = Field(
        default=100_000,
        ge=2,
        le=100_000_000,
        description="Réplicas por defecto de la comprobación de Δ_m"
    )

    THREADS: int = Field(
        default=1,
        ge=1,
        le=256,
        description="Hilos para repartir réplicas"
    )

    # ==========================================
    # K-FUNCTIONAL SANDWICH
    # ==========================================

    SANDWICH_GRID_RATIO: float = Field(
        default=2 ** 0.25,
        gt=1.0,
        le=2.0,
        description="Razón de la rejilla geométrica en δ"
    )

    SANDWICH_MAX_EXPONENT: int = Field(
        default=60,
        ge=10,
        le=500,
        description="Ensanche máximo de la rejilla: δ ∈ [2^-E, 2^E]"
    )

    # ==========================================
    # VALIDATORS
    # ==========================================

    @field_validator("SOLVER_TOL")
    @classmethod
    def validate_solver_tol(cls, v: float) -> float:
        """Tolerancias por debajo del épsilon de máquina no son alcanzables."""
        if v < 1e-14:
            raise ValueError("SOLVER_TOL debe ser al menos 1e-14")
        return v


@lru_cache()
def get_experiment_settings() -> ExperimentSettings:
    """
    Obtiene settings de experimentos cacheados.

    Uso:
        from dyadic_lasso.config import get_experiment_settings

        settings = get_experiment_settings()
        fit = lasso_cd(dictionary, y, lam, tol=settings.SOLVER_TOL)
    """
    return ExperimentSettings()
