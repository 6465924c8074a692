"""
Informe de experimento y su serialización CSV.

Las cabeceras y el orden de columnas forman parte del contrato público; los
reales se escriben con 17 cifras significativas para que dos ejecuciones con
la misma configuración y semilla produzcan ficheros idénticos byte a byte.
"""
from __future__ import annotations

import csv
import math
import time
from pathlib import Path
from typing import Any, Iterable, Optional

import numpy as np
from pydantic import BaseModel, Field

from dyadic_lasso.logging import get_logger

logger = get_logger(__name__)


def format_value(value: Any) -> str:
    """Representación CSV estable de un valor escalar."""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        number = float(value)
        if math.isnan(number):
            return "nan"
        if math.isinf(number):
            return "inf" if number > 0 else "-inf"
        return format(number, ".17g")
    if value is None:
        return ""
    return str(getattr(value, "value", value))


class ExperimentReport(BaseModel):
    """Filas de resultados de un experimento más su contexto de reproducción."""

    name: str
    columns: list[str]
    rows: list[dict[str, Any]] = Field(default_factory=list)
    mc_stderr: list[Optional[float]] = Field(default_factory=list)
    config_echo: dict[str, Any] = Field(default_factory=dict)
    seed: Optional[int] = None
    wall_time: float = 0.0
    summary: dict[str, Any] = Field(default_factory=dict)

    def column(self, name: str) -> list[Any]:
        """Valores de una columna en orden de fila."""
        return [row[name] for row in self.rows]

    def write_csv(self, path: Path) -> Path:
        """Escribe <path> con la cabecera fija y una línea por fila."""
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", encoding="utf-8", newline="") as handle:
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow(self.columns)
            for row in self.rows:
                writer.writerow([format_value(row.get(column)) for column in self.columns])
        return path

    @classmethod
    def concat(cls, reports: Iterable["ExperimentReport"]) -> "ExperimentReport":
        """Une informes del mismo experimento fila a fila."""
        reports = list(reports)
        if not reports:
            raise ValueError("No hay informes que unir")
        first = reports[0]
        if any(report.columns != first.columns for report in reports):
            raise ValueError("Los informes a unir deben compartir columnas")
        return cls(
            name=first.name,
            columns=first.columns,
            rows=[row for report in reports for row in report.rows],
            mc_stderr=[value for report in reports for value in report.mc_stderr],
            config_echo=first.config_echo,
            seed=first.seed,
            wall_time=sum(report.wall_time for report in reports),
            summary={f"{index}": report.summary for index, report in enumerate(reports)},
        )


def finish_report(
    name: str,
    columns: list[str],
    rows: list[dict[str, Any]],
    stderr: list[Optional[float]],
    seed: Optional[int],
    started: float,
    summary: Optional[dict[str, Any]] = None,
) -> ExperimentReport:
    """Cierra un experimento iniciado en started (time.perf_counter)."""
    wall_time = time.perf_counter() - started
    logger.info(f"Experimento {name}: {len(rows)} filas en {wall_time:.2f} s")
    return ExperimentReport(
        name=name,
        columns=columns,
        rows=rows,
        mc_stderr=stderr,
        seed=seed,
        wall_time=wall_time,
        summary=summary or {},
    )
