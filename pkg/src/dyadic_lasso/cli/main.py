"""
Punto de entrada de la CLI dyadic-lasso.

Uso:
    dyadic-lasso run configs/rates.cfg out/ --seed 7 --threads 4
    dyadic-lasso list-experiments
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path
from typing import Any, Optional, Sequence

import numpy as np
from pydantic import ValidationError

from dyadic_lasso import __version__
from dyadic_lasso.config import get_experiment_settings
from dyadic_lasso.config.run_config import RunConfig, load_run_config
from dyadic_lasso.errors import DyadicLassoError
from dyadic_lasso.harness import ExperimentReport
from dyadic_lasso.logging import get_logger

from .registry import EXPERIMENTS, get_experiment

logger = get_logger(__name__)

EXIT_CODES = """\
códigos de salida:
  0  ejecución correcta
  1  fallo de E/S (fichero ilegible, directorio de salida no escribible)
  2  configuración o parámetro inválido (p. ej. q fuera de (1, 2))
  3  experimento desconocido
  4  fuera del régimen de validez del resultado contrastado
  5  fallo del solver o de una réplica Monte Carlo
"""

MANIFEST_NAME = "manifest.json"


def _json_default(value: Any) -> Any:
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    return str(value)


def write_manifest(report: ExperimentReport, config: RunConfig, out_dir: Path) -> Path:
    """Manifest de reproducción: con su config, run reproduce los CSV byte a byte."""
    manifest = {
        "version": __version__,
        "experiment": report.name,
        "seed": config.experiment.seed,
        "config": config.model_dump(mode="json"),
        "wall_time": report.wall_time,
        "rows": len(report.rows),
        "summary": report.summary,
    }
    path = out_dir / MANIFEST_NAME
    path.write_text(
        json.dumps(manifest, indent=2, ensure_ascii=False, default=_json_default) + "\n",
        encoding="utf-8",
    )
    return path


def run(
    config_path: Path | str,
    out_dir: Path | str,
    seed: Optional[int] = None,
    threads: Optional[int] = None,
) -> ExperimentReport:
    """
    Valida la configuración, ejecuta el experimento y escribe <name>.csv y manifest.json.

    Raises:
        DyadicLassoError: con el código de salida correspondiente
        pydantic.ValidationError: configuración fuera de dominio
    """
    started = time.perf_counter()
    config = load_run_config(config_path).with_overrides(seed=seed)
    entry = get_experiment(config.experiment.name)
    config.check_regime()
    threads = get_experiment_settings().THREADS if threads is None else threads

    logger.info(f"Ejecutando {entry.name} (seed={config.experiment.seed}, threads={threads})")
    report = entry.runner(config, threads)
    report.config_echo = config.model_dump(mode="json")

    out_dir = Path(out_dir)
    csv_path = report.write_csv(out_dir / f"{entry.name}.csv")
    write_manifest(report, config, out_dir)
    logger.info(f"{csv_path} escrito en {time.perf_counter() - started:.2f} s")
    return report


def list_experiments() -> str:
    """Una línea por experimento: nombre, descripción y resultado que contrasta."""
    width = max(len(name) for name in EXPERIMENTS)
    return "\n".join(
        f"{entry.name:<{width}}  {entry.description} [{entry.verifies}]"
        for entry in EXPERIMENTS.values()
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dyadic-lasso",
        description="Lasso y Lasso seleccionado sobre truncaciones diádicas: experimentos de verificación",
        epilog=EXIT_CODES,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser(
        "run",
        help="Ejecuta el experimento descrito en un fichero de configuración",
        epilog=EXIT_CODES,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    p_run.add_argument("config", type=Path, help="Fichero section.key = value o manifest.json previo")
    p_run.add_argument("out_dir", type=Path, help="Directorio de salida (CSV y manifest.json)")
    p_run.add_argument("--seed", type=int, default=None, help="Sustituye experiment.seed")
    p_run.add_argument("--threads", type=int, default=None, help="Hilos para las réplicas Monte Carlo")

    sub.add_parser("list-experiments", help="Lista los experimentos registrados")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)

    if args.command == "list-experiments":
        print(list_experiments())
        return 0

    if args.threads is not None and args.threads < 1:
        print("error: --threads debe ser ≥ 1", file=sys.stderr)
        return 2
    if args.seed is not None and args.seed < 0:
        print("error: --seed debe ser ≥ 0", file=sys.stderr)
        return 2

    try:
        run(args.config, args.out_dir, seed=args.seed, threads=args.threads)
    except DyadicLassoError as exc:
        logger.debug("Traza del error", exc_info=True)
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except ValidationError as exc:
        print(f"error: configuración inválida\n{exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error de E/S: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
