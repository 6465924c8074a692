"""
Schemas Pydantic del fichero de ejecución de la CLI.

Gramática del fichero (una clave por línea, secciones con punto):

    # comentario
    model.kind = sequence
    target.q = 1.5
    experiment.eps_grid = 0.125, 0.0625, 0.03125

Se lee con python-dotenv sin interpolación; las listas van separadas por
comas. Un manifest.json de una ejecución previa también es una fuente
válida: se reutiliza su objeto "config".
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Annotated, Any, Literal, Optional

from dotenv import dotenv_values
from pydantic import BaseModel, BeforeValidator, ConfigDict, Field, field_validator, model_validator

from dyadic_lasso.dictionaries import DictionaryFamily
from dyadic_lasso.errors import ConfigError
from dyadic_lasso.geometry import NoiseLevel
from dyadic_lasso.oracle_spaces import (
    TargetKind,
    check_hypercube_regime,
    check_interpolation_index,
    check_rates_regime,
)

SECTIONS = ("model", "dictionary", "target", "solver", "experiment")
RATES_EXPERIMENTS = ("rates", "lasso-rates")
HYPERCUBE_EXPERIMENTS = ("minimax-hypercube",)


def _split_list(value: Any) -> Any:
    """'a, b, c' → ['a', 'b', 'c']; el resto se deja a Pydantic."""
    if isinstance(value, str):
        return [item.strip() for item in value.split(",") if item.strip()]
    return value


IntList = Annotated[list[int], BeforeValidator(_split_list)]
FloatList = Annotated[list[float], BeforeValidator(_split_list)]


class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid")


# ==========================================
# SECCIONES
# ==========================================

class ModelSection(_Section):
    """Marco estadístico: modelo de secuencia o regresión de diseño fijo."""
    kind: Literal["sequence", "regression"] = "sequence"
    n: Optional[int] = Field(None, ge=1, le=1_000_000)
    sigma: Optional[float] = Field(None, gt=0)
    eps: Optional[float] = Field(None, gt=0)
    design: Literal["grid", "uniform"] = "grid"
    d: int = Field(default=1, ge=1, le=2)

    @model_validator(mode="after")
    def validate_noise(self) -> "ModelSection":
        if self.sigma is not None and self.eps is not None:
            raise ValueError("model.sigma y model.eps son excluyentes: ε = σ/√n")
        if self.kind == "sequence" and self.sigma is not None:
            raise ValueError("model.sigma solo aplica a model.kind = regression; use model.eps")
        return self

    def noise_eps(self) -> Optional[float]:
        """ε del marco general; en regresión ε = σ/√n."""
        if self.eps is not None:
            return self.eps
        if self.sigma is not None and self.n is not None:
            return NoiseLevel.from_regression(self.sigma, self.n).eps
        return None


class DictionarySection(_Section):
    """Familia del diccionario y truncación máxima."""
    family: DictionaryFamily = DictionaryFamily.ORTHONORMAL
    p_max: Optional[int] = Field(None, ge=1)


class TargetSection(_Section):
    """Objetivo sintético."""
    kind: TargetKind = TargetKind.POWER_LAW
    q: float = 1.5
    r: float = Field(default=0.1, gt=0)
    R: float = Field(default=1.0, gt=0)
    length: Optional[int] = Field(None, ge=1)
    support: IntList = Field(default_factory=list)
    values: FloatList = Field(default_factory=list)
    jumps: FloatList = Field(default_factory=list)
    heights: FloatList = Field(default_factory=list)

    @field_validator("q")
    @classmethod
    def validate_q(cls, v: float) -> float:
        """Índice de interpolación en (1, 2)."""
        if not 1.0 < v < 2.0:
            raise ValueError(f"target.q debe estar en el intervalo abierto (1, 2), recibido {v}")
        return v


class SolverSection(_Section):
    """Parámetros del descenso por coordenadas y de los calendarios."""
    tol: Optional[float] = Field(None, gt=0, le=1e-2)
    max_iter: Optional[int] = Field(None, ge=1)
    lambda_multiplier: float = Field(default=1.0, ge=0)
    pen_multiplier: float = Field(default=1.0, ge=0)


class ExperimentSection(_Section):
    """Experimento a ejecutar y sus rejillas."""
    name: str = Field(..., min_length=1)
    n_rep: Optional[int] = Field(None, ge=2)
    seed: int = Field(default=0, ge=0)
    eps_grid: FloatList = Field(default_factory=list)
    p_grid: IntList = Field(default_factory=list)
    t_grid: FloatList = Field(default_factory=list)
    n_grid: IntList = Field(default_factory=list)
    m_grid: FloatList = Field(default_factory=list)
    n_targets: int = Field(default=4, ge=1)
    n_cases: int = Field(default=1000, ge=1)

    @field_validator("eps_grid", "t_grid", "m_grid")
    @classmethod
    def validate_positive(cls, v: list[float]) -> list[float]:
        if any(not value > 0 for value in v):
            raise ValueError("Las rejillas eps_grid, t_grid y m_grid solo admiten valores > 0")
        return v

    @field_validator("p_grid", "n_grid")
    @classmethod
    def validate_sizes(cls, v: list[int]) -> list[int]:
        if any(value < 1 for value in v):
            raise ValueError("Las rejillas p_grid y n_grid solo admiten enteros ≥ 1")
        return v


class RunConfig(_Section):
    """Configuración completa de una ejecución."""
    model: ModelSection = Field(default_factory=ModelSection)
    dictionary: DictionarySection = Field(default_factory=DictionarySection)
    target: TargetSection = Field(default_factory=TargetSection)
    solver: SolverSection = Field(default_factory=SolverSection)
    experiment: ExperimentSection

    def eps_values(self) -> list[float]:
        """experiment.eps_grid, o el ε del modelo como rejilla de un punto."""
        if self.experiment.eps_grid:
            return list(self.experiment.eps_grid)
        eps = self.model.noise_eps()
        if eps is None:
            raise ConfigError("Falta el nivel de ruido: fije experiment.eps_grid, model.eps o model.sigma")
        return [eps]

    def check_regime(self) -> None:
        """
        Hipótesis de los resultados teóricos del experimento elegido.

        Raises:
            RegimeError: con la desigualdad incumplida
        """
        target = self.target
        check_interpolation_index(target.q)
        if self.experiment.name in RATES_EXPERIMENTS:
            for eps in self.eps_values():
                check_rates_regime(target.q, target.r, target.R, eps)
        elif self.experiment.name in HYPERCUBE_EXPERIMENTS:
            for eps in self.eps_values():
                check_hypercube_regime(target.q, target.r, target.R, eps)

    def with_overrides(self, seed: Optional[int] = None) -> "RunConfig":
        if seed is None:
            return self
        experiment = self.experiment.model_copy(update={"seed": seed})
        return self.model_copy(update={"experiment": experiment})


# ==========================================
# CARGA
# ==========================================

def _from_manifest(path: Path) -> RunConfig:
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"Manifest ilegible {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"El manifest {path} debe ser un objeto JSON")
    return RunConfig.model_validate(data.get("config", data))


def load_run_config(path: Path | str) -> RunConfig:
    """
    Lee un fichero de ejecución (gramática clave = valor) o un manifest.json.

    Raises:
        ConfigError: fichero ausente o ilegible, clave fuera de sección, clave sin valor
        pydantic.ValidationError: valores fuera de dominio
    """
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"No se encuentra el fichero de configuración: {path}")
    if path.suffix == ".json":
        return _from_manifest(path)

    try:
        raw = dotenv_values(path, interpolate=False)
    except (OSError, UnicodeDecodeError) as exc:
        raise ConfigError(f"Fichero de configuración ilegible {path}: {exc}") from exc

    sections: dict[str, dict[str, str]] = {}
    for key, value in raw.items():
        section, _, field = key.partition(".")
        if not field or section not in SECTIONS:
            raise ConfigError(f"Clave '{key}' fuera de las secciones {', '.join(SECTIONS)}")
        if value is None or value == "":
            raise ConfigError(f"La clave '{key}' no tiene valor")
        sections.setdefault(section, {})[field] = value
    if "experiment" not in sections:
        raise ConfigError(f"{path} no define la sección experiment (experiment.name)")
    return RunConfig.model_validate(sections)
