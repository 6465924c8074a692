"""Fixtures compartidas de la batería de tests."""
from pathlib import Path
from typing import Callable

import pytest

from dyadic_lasso.config import get_base_settings, get_experiment_settings
from dyadic_lasso.dictionaries import (
    Dictionary,
    make_gaussian_design,
    make_haar_grid,
    make_orthonormal_sequence,
)
from dyadic_lasso.geometry import RandomStream, derive_stream


@pytest.fixture
def rng() -> RandomStream:
    return derive_stream(1234)


@pytest.fixture
def orthonormal8() -> Dictionary:
    return make_orthonormal_sequence(8)


@pytest.fixture
def haar16() -> Dictionary:
    return make_haar_grid(16)


@pytest.fixture
def gaussian_dictionary() -> Dictionary:
    """n = 40 puntos, p = 24 columnas correlacionadas, semilla fija."""
    return make_gaussian_design(40, 24, derive_stream(7, 2, 0))


@pytest.fixture
def clean_settings():
    """Vacía las cachés de settings antes y después del test."""
    get_experiment_settings.cache_clear()
    get_base_settings.cache_clear()
    yield
    get_experiment_settings.cache_clear()
    get_base_settings.cache_clear()


@pytest.fixture
def write_config(tmp_path: Path) -> Callable[..., Path]:
    """Escribe un fichero de ejecución en tmp_path y devuelve su ruta."""

    def _write(text: str, name: str = "run.cfg") -> Path:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path

    return _write
