"""Calendarios de regularización y Lasso seleccionado."""
from .schedules import lambda_nn, lambda_p, pen_p
from .selected import LevelRecord, SelectionTrace, selected_lasso, selected_soft_threshold

__all__ = [
    "LevelRecord",
    "SelectionTrace",
    "lambda_nn",
    "lambda_p",
    "pen_p",
    "selected_lasso",
    "selected_soft_threshold",
]
