"""CLI por lotes: configuración, registro de experimentos y escritura de informes."""
from .main import build_parser, list_experiments, main, run
from .registry import EXPERIMENTS, ExperimentEntry, get_experiment

__all__ = [
    "EXPERIMENTS",
    "ExperimentEntry",
    "build_parser",
    "get_experiment",
    "list_experiments",
    "main",
    "run",
]
