"""Experimentos Monte Carlo, comprobaciones numéricas e informes."""
from .checks import (
    DeltaMCheck,
    LemmaCheck,
    delta_m_check,
    delta_m_experiment,
    gram_square_root,
    greedy_packing,
    lemma_checks_experiment,
    lemma_identity_checks,
    packing_bound,
    packing_check,
)
from .experiments import (
    STREAM_DESIGNS,
    STREAM_REPLICATIONS,
    STREAM_TARGETS,
    fit_experiment,
    fit_loglog_slope,
    heaviside_oracle_experiment,
    lasso_rates_experiment,
    minimax_hypercube_experiment,
    oracle_ratio_experiment,
    rates_experiment,
    select_experiment,
    selected_oracle_experiment,
)
from .montecarlo import Estimator, Replication, RiskEstimate, mc_risk, mean_and_stderr
from .report import ExperimentReport, finish_report, format_value

__all__ = [
    "DeltaMCheck",
    "Estimator",
    "ExperimentReport",
    "LemmaCheck",
    "Replication",
    "RiskEstimate",
    "STREAM_DESIGNS",
    "STREAM_REPLICATIONS",
    "STREAM_TARGETS",
    "delta_m_check",
    "delta_m_experiment",
    "finish_report",
    "fit_experiment",
    "fit_loglog_slope",
    "format_value",
    "gram_square_root",
    "greedy_packing",
    "heaviside_oracle_experiment",
    "lasso_rates_experiment",
    "lemma_checks_experiment",
    "lemma_identity_checks",
    "mc_risk",
    "mean_and_stderr",
    "minimax_hypercube_experiment",
    "oracle_ratio_experiment",
    "packing_bound",
    "packing_check",
    "rates_experiment",
    "select_experiment",
    "selected_oracle_experiment",
]
