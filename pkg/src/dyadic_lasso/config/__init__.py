"""
Sistema de configuración centralizado para dyadic_lasso.

Este módulo proporciona configuración basada en Pydantic Settings.
Los esquemas de fichero de ejecución (RunConfig) viven en
dyadic_lasso.config.run_config y se importan desde allí.

Uso:
    from dyadic_lasso.config import get_experiment_settings

    settings = get_experiment_settings()
    print(settings.SOLVER_TOL)
"""
from .base import BaseSettings, get_base_settings
from .experiments import ExperimentSettings, get_experiment_settings

__all__ = [
    "BaseSettings",
    "ExperimentSettings",
    "get_base_settings",
    "get_experiment_settings",
]
