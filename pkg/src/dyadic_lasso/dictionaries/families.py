"""
Familias concretas de diccionarios para los experimentos.

Convenciones de orden (el estimador depende de ellas):
- orthonormal: e_1, e_2, … (coordenadas del modelo de secuencia)
- haar: constante, luego ψ_{j,k} de escala gruesa a fina y, dentro de cada escala, de izquierda a derecha
- fourier: constante, luego cos/sen por frecuencia creciente
- gaussian: columnas i.i.d. N(0, 1) en el orden de extracción
"""
from __future__ import annotations

import math
from typing import Optional

import numpy as np

from dyadic_lasso.errors import ParameterError
from dyadic_lasso.geometry import Design, RandomStream

from .base import Dictionary, DictionaryFamily, normalize, truncate
from .heaviside import enumerate_heaviside


def make_orthonormal_sequence(p: int) -> Dictionary:
    """
    Base ortonormal del modelo de secuencia: n = p, φ_j = √n·e_j.

    Con el producto escalar empírico, ⟨φ_j, φ_k⟩ = δ_jk.
    """
    if p < 1:
        raise ParameterError(f"p debe ser ≥ 1, recibido {p}")
    matrix = math.sqrt(p) * np.eye(p)
    return Dictionary(matrix, Design.sequence(p), DictionaryFamily.ORTHONORMAL, normalized=True)


def make_haar_grid(n: int) -> Dictionary:
    """Base de Haar discreta sobre la rejilla regular de n = 2^K puntos."""
    if n < 1 or n & (n - 1):
        raise ParameterError(f"La base de Haar necesita n potencia de dos, recibido {n}")
    design = Design.grid(n)
    x = design.points[:, 0]
    columns = [np.ones(n)]
    for scale in range(int(math.log2(n))):
        width = 2.0 ** -scale
        for shift in range(2 ** scale):
            left = shift * width
            mid = left + width / 2
            right = left + width
            psi = np.where((x >= left) & (x < mid), 1.0, 0.0) - np.where((x >= mid) & (x < right), 1.0, 0.0)
            columns.append(2.0 ** (scale / 2) * psi)
    return normalize(Dictionary(np.column_stack(columns), design, DictionaryFamily.HAAR))


def make_fourier_grid(n: int, p: int) -> Dictionary:
    """
    Sistema trigonométrico 1, √2 cos(2πkx), √2 sen(2πkx) sobre la rejilla regular.

    Las columnas nulas en la rejilla (seno de Nyquist) se omiten; p ≤ n.
    """
    if n < 1 or not 1 <= p <= n:
        raise ParameterError(f"Fourier necesita 1 ≤ p ≤ n, recibido n={n}, p={p}")
    design = Design.grid(n)
    x = design.points[:, 0]
    columns = [np.ones(n)]
    frequency = 1
    while len(columns) < p and frequency <= n // 2:
        for wave in (np.cos, np.sin):
            column = math.sqrt(2.0) * wave(2.0 * math.pi * frequency * x)
            if len(columns) < p and np.max(np.abs(column)) > 1e-12:
                columns.append(column)
        frequency += 1
    return normalize(Dictionary(np.column_stack(columns), design, DictionaryFamily.FOURIER))


def make_gaussian_design(n: int, p: int, rng: RandomStream) -> Dictionary:
    """Diccionario de entradas i.i.d. N(0, 1), normalizado columna a columna."""
    if n < 1 or p < 1:
        raise ParameterError(f"n y p deben ser ≥ 1, recibido n={n}, p={p}")
    matrix = rng.standard_normal((n, p))
    return normalize(Dictionary(matrix, Design.grid(n), DictionaryFamily.GAUSSIAN))


def make_dictionary(
    family: DictionaryFamily,
    n: int,
    p: Optional[int] = None,
    rng: Optional[RandomStream] = None,
    design: Optional[Design] = None,
) -> Dictionary:
    """
    Construye un diccionario normalizado de la familia indicada.

    Args:
        family: Familia del diccionario
        n: Tamaño del diseño (ignorado en orthonormal, donde n = p)
        p: Número de columnas; por defecto todas las disponibles
        rng: Flujo aleatorio (solo gaussian)
        design: Diseño sobre el que enumerar (solo heaviside)
    """
    family = DictionaryFamily(family)
    if family is DictionaryFamily.ORTHONORMAL:
        return make_orthonormal_sequence(n if p is None else p)
    if family is DictionaryFamily.HAAR:
        dictionary = make_haar_grid(n)
    elif family is DictionaryFamily.FOURIER:
        return make_fourier_grid(n, n if p is None else p)
    elif family is DictionaryFamily.GAUSSIAN:
        if rng is None:
            raise ParameterError("El diccionario gaussiano necesita un flujo aleatorio")
        return make_gaussian_design(n, n if p is None else p, rng)
    elif family is DictionaryFamily.HEAVISIDE:
        if design is None:
            raise ParameterError("El diccionario de Heaviside necesita un diseño")
        dictionary = enumerate_heaviside(design)
        # El número de patrones depende del diseño: p actúa como cota
        p = None if p is None else min(p, dictionary.p)
    else:
        raise ParameterError(f"La familia '{family.value}' no tiene constructor")
    return dictionary if p is None else truncate(dictionary, p)
