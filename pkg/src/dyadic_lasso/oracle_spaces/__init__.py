"""Oráculos deterministas, normas de secuencia, objetivos sintéticos y regímenes."""
from .norms import besov_norm, strong_lq_norm, weak_lq_norm
from .oracles import (
    OracleCurve,
    RateRegime,
    SandwichCheck,
    deterministic_lasso,
    deterministic_lasso_sequence,
    interp_rate_bound,
    k_sandwich_check,
    lasso_rate_regime,
    oracle_curve,
    selected_rate_bound,
)
from .regimes import check_hypercube_regime, check_interpolation_index, check_rates_regime, u_param
from .targets import (
    TargetCertificates,
    TargetKind,
    TargetSpec,
    hypercube_target,
    make_power_law_target,
    make_sparse_target,
    make_step_target,
)

__all__ = [
    "OracleCurve",
    "RateRegime",
    "SandwichCheck",
    "TargetCertificates",
    "TargetKind",
    "TargetSpec",
    "besov_norm",
    "check_hypercube_regime",
    "check_interpolation_index",
    "check_rates_regime",
    "deterministic_lasso",
    "deterministic_lasso_sequence",
    "hypercube_target",
    "interp_rate_bound",
    "k_sandwich_check",
    "lasso_rate_regime",
    "make_power_law_target",
    "make_sparse_target",
    "make_step_target",
    "oracle_curve",
    "selected_rate_bound",
    "strong_lq_norm",
    "u_param",
    "weak_lq_norm",
]
