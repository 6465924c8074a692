"""Minimización del criterio de mínimos cuadrados penalizado en ℓ1."""
from .closed_form import k_functional_orthonormal, soft_threshold, soft_threshold_fit
from .lasso import LassoFit, kkt_residual, kkt_violation, lasso_cd

__all__ = [
    "LassoFit",
    "k_functional_orthonormal",
    "kkt_residual",
    "kkt_violation",
    "lasso_cd",
    "soft_threshold",
    "soft_threshold_fit",
]
