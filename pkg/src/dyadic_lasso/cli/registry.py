"""
Registro de experimentos de la CLI.

Cada entrada traduce un RunConfig validado a la llamada del arnés
correspondiente y devuelve su ExperimentReport.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from dyadic_lasso.config.run_config import RunConfig
from dyadic_lasso.dictionaries import (
    Dictionary,
    DictionaryFamily,
    dyadic_levels,
    enumerate_heaviside,
    make_dictionary,
)
from dyadic_lasso.errors import ConfigError, UnknownExperimentError
from dyadic_lasso.geometry import Design, NoiseLevel, derive_stream
from dyadic_lasso.harness import (
    STREAM_DESIGNS,
    STREAM_TARGETS,
    ExperimentReport,
    delta_m_experiment,
    fit_experiment,
    heaviside_oracle_experiment,
    lasso_rates_experiment,
    lemma_checks_experiment,
    minimax_hypercube_experiment,
    oracle_ratio_experiment,
    packing_check,
    rates_experiment,
    select_experiment,
    selected_oracle_experiment,
)
from dyadic_lasso.logging import get_logger
from dyadic_lasso.oracle_spaces import (
    TargetKind,
    TargetSpec,
    hypercube_target,
    make_power_law_target,
    make_sparse_target,
    make_step_target,
)
from dyadic_lasso.selection import lambda_p

logger = get_logger(__name__)

DEFAULT_LENGTH = 8192

Runner = Callable[[RunConfig, int], ExperimentReport]


@dataclass(frozen=True)
class ExperimentEntry:
    """Experimento registrado: descripción, resultado que contrasta y ejecutor."""
    name: str
    description: str
    verifies: str
    runner: Runner


# ==========================================
# CONSTRUCCIÓN DEL ESCENARIO
# ==========================================

def build_design(config: RunConfig, index: int = 0, n: Optional[int] = None) -> Design:
    """Diseño de regresión de model.n puntos (o n)."""
    model = config.model
    size = model.n if n is None else n
    if size is None:
        raise ConfigError("El experimento necesita un diseño: fije model.n")
    if model.design == "grid":
        if model.d != 1:
            raise ConfigError("model.design = grid solo admite model.d = 1")
        return Design.grid(size)
    return Design.uniform(size, model.d, derive_stream(config.experiment.seed, STREAM_DESIGNS, index))


def build_dictionary(config: RunConfig, p: Optional[int] = None) -> Optional[Dictionary]:
    """
    Diccionario del marco de regresión truncado a p (por defecto dictionary.p_max).

    En el modelo de secuencia devuelve None: el arnés usa las formas cerradas.
    """
    if config.model.kind == "sequence":
        if config.dictionary.family is not DictionaryFamily.ORTHONORMAL:
            raise ConfigError("model.kind = sequence solo admite dictionary.family = orthonormal")
        return None
    size = config.dictionary.p_max if p is None else p
    design = build_design(config)
    dictionary = make_dictionary(
        config.dictionary.family,
        design.n,
        size,
        rng=derive_stream(config.experiment.seed, STREAM_DESIGNS, 1),
        design=design,
    )
    logger.debug(f"Diccionario {dictionary.family.value}: n={dictionary.n}, p={dictionary.p}")
    return dictionary


def _sequence_dictionary(config: RunConfig, p: int) -> Dictionary:
    if config.model.kind == "sequence":
        return make_dictionary(DictionaryFamily.ORTHONORMAL, p, p)
    dictionary = build_dictionary(config, p)
    assert dictionary is not None
    return dictionary


def _target_length(config: RunConfig, dictionary: Optional[Dictionary]) -> int:
    if config.target.length is not None:
        return config.target.length
    if dictionary is not None:
        return dictionary.p
    if config.dictionary.p_max is not None:
        return config.dictionary.p_max
    if config.experiment.p_grid:
        return max(config.experiment.p_grid)
    return DEFAULT_LENGTH


def build_target(
    config: RunConfig,
    dictionary: Optional[Dictionary] = None,
    design: Optional[Design] = None,
) -> TargetSpec:
    """Objetivo descrito en la sección target."""
    target = config.target
    if target.kind is TargetKind.POWER_LAW:
        return make_power_law_target(target.q, target.r, target.R, _target_length(config, dictionary))
    if target.kind is TargetKind.SPARSE:
        return make_sparse_target(target.support, target.values, _target_length(config, dictionary))
    if target.kind is TargetKind.HYPERCUBE:
        rng = derive_stream(config.experiment.seed, STREAM_TARGETS, 0)
        return hypercube_target(target.q, target.r, target.R, config.eps_values()[0], rng)
    if design is None:
        if dictionary is None:
            raise ConfigError("target.kind = custom necesita model.kind = regression")
        design = dictionary.design
    return make_step_target(design, target.jumps, target.heights)


def _p_max(config: RunConfig, dictionary: Optional[Dictionary], target: TargetSpec) -> int:
    if dictionary is not None:
        return dictionary.p
    return config.dictionary.p_max or target.length


# ==========================================
# EJECUTORES
# ==========================================

def run_fit(config: RunConfig, threads: int) -> ExperimentReport:
    dictionary = build_dictionary(config)
    target = build_target(config, dictionary)
    eps = config.eps_values()[0]
    p = _p_max(config, dictionary, target)
    return fit_experiment(
        target, eps, p, config.experiment.seed, dictionary,
        lam=config.solver.lambda_multiplier * lambda_p(p, eps),
        tol=config.solver.tol, max_iter=config.solver.max_iter,
    )


def run_select(config: RunConfig, threads: int) -> ExperimentReport:
    dictionary = build_dictionary(config)
    target = build_target(config, dictionary)
    return select_experiment(
        target, config.eps_values()[0], _p_max(config, dictionary, target),
        config.experiment.seed, dictionary,
        config.solver.lambda_multiplier, config.solver.pen_multiplier,
        config.solver.tol, config.solver.max_iter,
    )


def run_oracle_ratio(config: RunConfig, threads: int) -> ExperimentReport:
    dictionary = build_dictionary(config)
    target = build_target(config, dictionary)
    p_grid = config.experiment.p_grid or list(dyadic_levels(_p_max(config, dictionary, target)))
    return oracle_ratio_experiment(
        target, p_grid, config.eps_values(), config.experiment.n_rep, config.experiment.seed,
        dictionary, config.solver.lambda_multiplier, config.solver.tol, config.solver.max_iter,
        max_workers=threads,
    )


def run_selected_oracle(config: RunConfig, threads: int) -> ExperimentReport:
    dictionary = build_dictionary(config)
    target = build_target(config, dictionary)
    return selected_oracle_experiment(
        target, _p_max(config, dictionary, target), config.eps_values(),
        config.experiment.n_rep, config.experiment.seed, dictionary,
        config.solver.lambda_multiplier, config.solver.pen_multiplier,
        config.solver.tol, config.solver.max_iter, max_workers=threads,
    )


def run_rates(config: RunConfig, threads: int) -> ExperimentReport:
    target = config.target
    return rates_experiment(
        target.q, target.r, target.R, config.eps_values(),
        config.experiment.n_rep, config.experiment.seed,
        length=target.length or DEFAULT_LENGTH,
        lambda_multiplier=config.solver.lambda_multiplier,
        pen_multiplier=config.solver.pen_multiplier,
        max_workers=threads,
    )


def run_lasso_rates(config: RunConfig, threads: int) -> ExperimentReport:
    if not config.experiment.p_grid:
        raise ConfigError("lasso-rates necesita experiment.p_grid")
    target = config.target
    return lasso_rates_experiment(
        target.q, target.r, target.R, config.eps_values(), config.experiment.p_grid,
        config.experiment.n_rep, config.experiment.seed,
        length=target.length or DEFAULT_LENGTH, max_workers=threads,
    )


def run_delta_m(config: RunConfig, threads: int) -> ExperimentReport:
    if config.experiment.p_grid:
        dictionaries = [_sequence_dictionary(config, p) for p in config.experiment.p_grid]
    else:
        dictionary = build_dictionary(config)
        if dictionary is None:
            raise ConfigError("delta-m en el modelo de secuencia necesita experiment.p_grid")
        dictionaries = [dictionary]
    return delta_m_experiment(
        dictionaries, config.experiment.m_grid or [1.0], config.eps_values()[0],
        config.experiment.n_rep, config.experiment.seed, max_workers=threads,
    )


def run_lemma_checks(config: RunConfig, threads: int) -> ExperimentReport:
    return lemma_checks_experiment(config.experiment.n_cases, config.experiment.seed)


def run_packing(config: RunConfig, threads: int) -> ExperimentReport:
    if not config.experiment.t_grid:
        raise ConfigError("packing necesita experiment.t_grid")
    return packing_check(build_design(config), config.experiment.t_grid)


def run_minimax_hypercube(config: RunConfig, threads: int) -> ExperimentReport:
    target = config.target
    return minimax_hypercube_experiment(
        target.q, target.r, target.R, config.eps_values()[0], config.experiment.n_targets,
        config.experiment.n_rep, config.experiment.seed, max_workers=threads,
    )


def run_heaviside_oracle(config: RunConfig, threads: int) -> ExperimentReport:
    n_grid = config.experiment.n_grid or ([config.model.n] if config.model.n else [])
    if not n_grid:
        raise ConfigError("heaviside-oracle necesita experiment.n_grid o model.n")
    reports = []
    for index, n in enumerate(n_grid):
        design = build_design(config, index, n)
        if config.target.kind is TargetKind.CUSTOM:
            target = build_target(config, design=design)
        else:
            target = build_target(config, enumerate_heaviside(design), design)
        sigma = config.model.sigma or NoiseLevel(config.eps_values()[0]).sigma(n)
        reports.append(heaviside_oracle_experiment(
            design, target, sigma, config.experiment.n_rep, config.experiment.seed,
            config.solver.tol, config.solver.max_iter, max_workers=threads,
        ))
    return ExperimentReport.concat(reports)


EXPERIMENTS: dict[str, ExperimentEntry] = {
    entry.name: entry
    for entry in (
        ExperimentEntry("fit", "Un ajuste Lasso a p fijo sobre una observación", "Eq. (3.2)", run_fit),
        ExperimentEntry("select", "Traza del criterio del Lasso seleccionado", "Eq. (4.2)", run_select),
        ExperimentEntry(
            "oracle-ratio", "Cociente oráculo del Lasso a p fijo", "Theorem 3.1", run_oracle_ratio
        ),
        ExperimentEntry(
            "selected-oracle", "Cociente oráculo del Lasso seleccionado", "Theorem 4.1",
            run_selected_oracle,
        ),
        ExperimentEntry(
            "rates", "Pendiente log-log del riesgo del Lasso seleccionado", "Proposition 5.6",
            run_rates,
        ),
        ExperimentEntry(
            "delta-m", "Supremo gaussiano sobre la bola ℓ1 frente a mε√(2 ln 2p)", "Theorem 3.1 (Eq. 8.4)",
            run_delta_m,
        ),
        ExperimentEntry(
            "lemma-checks", "Identidades de integración por capas", "Lemma 8.2 / Lemma 8.3",
            run_lemma_checks,
        ),
        ExperimentEntry(
            "packing", "Empaquetado voraz de los patrones de Heaviside", "Lemma 8.1", run_packing
        ),
        ExperimentEntry(
            "minimax-hypercube", "Riesgo sobre vértices del hipercubo frente a la tasa minimax",
            "Proposition 5.8", run_minimax_hypercube,
        ),
        ExperimentEntry(
            "heaviside-oracle", "Cociente oráculo sobre el diccionario de Heaviside",
            "Theorem 6.1", run_heaviside_oracle,
        ),
        ExperimentEntry(
            "lasso-rates", "Riesgo del Lasso a p fijo frente al seleccionado por régimen",
            "Proposition 5.5", run_lasso_rates,
        ),
    )
}


def get_experiment(name: str) -> ExperimentEntry:
    """Entrada registrada para name."""
    try:
        return EXPERIMENTS[name]
    except KeyError:
        raise UnknownExperimentError(name, tuple(EXPERIMENTS)) from None
