#!/usr/bin/env python3
"""Script manual para ejecutar todas las configuraciones de configs/ en un directorio de salida."""

import sys
from pathlib import Path

# Añadir src al path
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from dyadic_lasso.cli import main as cli_main


def main(argv: list[str] | None = None) -> int:
    """Ejecuta cada configs/*.cfg en <out_dir>/<nombre>/ y devuelve el peor código de salida."""
    argv = sys.argv[1:] if argv is None else argv
    out_root = Path(argv[0]) if argv else Path("out")
    extra = argv[1:]
    configs_dir = Path(__file__).parent.parent / "configs"

    print(f"🚀 Ejecutando la batería de {configs_dir} en {out_root}...")
    worst = 0
    for config in sorted(configs_dir.glob("*.cfg")):
        code = cli_main(["run", str(config), str(out_root / config.stem), *extra])
        status = "✅" if code == 0 else f"❌ (código {code})"
        print(f"  {config.stem}: {status}")
        worst = max(worst, code)

    print("📊 Batería completada" if worst == 0 else "⚠️ Batería con errores")
    return worst


if __name__ == "__main__":
    sys.exit(main())
