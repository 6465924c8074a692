"""
Constructores de objetivos sintéticos con certificados de pertenencia.

- power_law: θ*_j = c·j^{−1/q}, con c tal que el máximo de las normas ℓq débil y
  Besov es exactamente R (cadena de inclusiones Lq ∩ B ⊂ wLq ∩ B ⊂ B_{q,r}).
- hypercube: d coeficientes iguales a M entre las p primeras coordenadas, la
  familia menos favorable de la cota inferior minimax.
- sparse: soporte y valores explícitos.
- custom: función dada directamente sobre el diseño (p. ej. escalones).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Sequence

import numpy as np
from numpy.typing import ArrayLike, NDArray
from pydantic import BaseModel

from dyadic_lasso.dictionaries import Dictionary
from dyadic_lasso.errors import ParameterError, RegimeError
from dyadic_lasso.geometry import Design, RandomStream, SampleVector
from dyadic_lasso.logging import get_logger

from .norms import besov_norm, strong_lq_norm, weak_lq_norm
from .regimes import check_hypercube_regime, check_interpolation_index

logger = get_logger(__name__)


class TargetKind(str, Enum):
    """Tipos de objetivo."""
    POWER_LAW = "power_law"
    SPARSE = "sparse"
    HYPERCUBE = "hypercube"
    CUSTOM = "custom"


class TargetCertificates(BaseModel):
    """Normas calculadas sobre los coeficientes materializados."""
    weak_lq: Optional[float] = None
    strong_lq: Optional[float] = None
    besov: Optional[float] = None


@dataclass(frozen=True, eq=False)
class TargetSpec:
    """Objetivo f = Σ θ*_j φ_j, o valores sobre el diseño si kind = custom."""

    kind: TargetKind
    coefficients: NDArray[np.float64]
    q: Optional[float] = None
    r: Optional[float] = None
    R: Optional[float] = None
    certificates: TargetCertificates = field(default_factory=TargetCertificates)
    values: Optional[SampleVector] = None
    extras: dict = field(default_factory=dict)

    @property
    def length(self) -> int:
        return int(self.coefficients.shape[0])

    def on_design(self, dictionary: Dictionary) -> SampleVector:
        """f evaluada en el diseño del diccionario."""
        if self.values is not None:
            return dictionary.design.check(self.values, "target.values")
        if self.length > dictionary.p:
            raise ParameterError(
                f"El objetivo tiene {self.length} coeficientes y el diccionario solo {dictionary.p}"
            )
        padded = np.zeros(dictionary.p)
        padded[: self.length] = self.coefficients
        return dictionary.synthesize(padded)

    def padded(self, size: int) -> NDArray[np.float64]:
        """Coeficientes completados con ceros (o recortados) a longitud size."""
        out = np.zeros(size)
        head = self.coefficients[:size]
        out[: head.shape[0]] = head
        return out


def _certify(theta: NDArray[np.float64], q: Optional[float], r: Optional[float]) -> TargetCertificates:
    return TargetCertificates(
        weak_lq=weak_lq_norm(theta, q) if q else None,
        strong_lq=strong_lq_norm(theta, q) if q else None,
        besov=besov_norm(theta, r) if r else None,
    )


# ==========================================
# CONSTRUCTORES
# ==========================================

def make_power_law_target(q: float, r: float, R: float, length: int) -> TargetSpec:
    """
    θ*_j = c·j^{−1/q}, j = 1..length, con max(‖θ*‖_{wℓq}, ‖θ*‖_{Besov}) = R.

    Avisa cuando r ≥ 1/q − 1/2 (fuera del régimen minimax).
    """
    check_interpolation_index(q)
    if not r > 0 or not R > 0:
        raise ParameterError(f"r y R deben ser > 0, recibido r={r}, R={R}")
    if length < 1:
        raise ParameterError(f"length debe ser ≥ 1, recibido {length}")
    if r >= 1.0 / q - 0.5:
        logger.warning(
            f"r={r} ≥ 1/q − 1/2={1.0 / q - 0.5:.4f}: objetivo fuera del régimen minimax "
            "(la intersección wLq ∩ Besov degenera en Besov)"
        )

    base = np.arange(1, length + 1, dtype=float) ** (-1.0 / q)
    scale = R / max(weak_lq_norm(base, q), besov_norm(base, r))
    theta = scale * base
    return TargetSpec(
        kind=TargetKind.POWER_LAW,
        coefficients=theta,
        q=q,
        r=r,
        R=R,
        certificates=_certify(theta, q, r),
    )


def make_sparse_target(support: Sequence[int], values: Sequence[float], length: int) -> TargetSpec:
    """Objetivo con soporte explícito (índices base cero)."""
    if len(support) != len(values):
        raise ParameterError("support y values deben tener la misma longitud")
    if length < 1 or any(not 0 <= j < length for j in support):
        raise ParameterError(f"Índices de soporte fuera de [0, {length})")
    theta = np.zeros(length)
    theta[list(support)] = values
    return TargetSpec(kind=TargetKind.SPARSE, coefficients=theta)


def make_step_target(design: Design, jumps: Sequence[float], heights: Sequence[float]) -> TargetSpec:
    """f(x) = Σ_k h_k·1{x_1 > t_k} sobre el diseño (primera coordenada)."""
    if len(jumps) != len(heights):
        raise ParameterError("jumps y heights deben tener la misma longitud")
    x = design.points[:, 0]
    values = np.zeros(design.n)
    for jump, height in zip(jumps, heights):
        values += height * (x > jump)
    return TargetSpec(kind=TargetKind.CUSTOM, coefficients=np.zeros(0), values=values)


def hypercube_target(q: float, r: float, R: float, eps: float, rng: RandomStream) -> TargetSpec:
    """
    Vértice aleatorio del hipercubo Θ(p, d, M).

        M = ε√(u ln(R/ε)),  p = 2^J,  d = 2^K,
        J = ⌊(2−q)/(2r)·log₂(R/M)⌋,  K = ⌊q·log₂(R/M)⌋.

    Raises:
        RegimeError: si no se cumplen las hipótesis (se nombra la desigualdad)
    """
    u = check_hypercube_regime(q, r, R, eps)
    magnitude = eps * math.sqrt(u * math.log(R / eps))
    ratio = math.log2(R / magnitude)
    big_j = math.floor((2.0 - q) / (2.0 * r) * ratio)
    big_k = math.floor(q * ratio)
    p, d = 2 ** big_j, 2 ** big_k
    if d > p:
        raise RegimeError("d ≤ p", f"d=2^{big_k} > p=2^{big_j}")

    theta = np.zeros(p)
    support = np.sort(rng.choice(p, size=d, replace=False))
    theta[support] = magnitude
    certificates = _certify(theta, q, r)
    # Las dos pertenencias de la construcción: Σ|θ_j|^q ≤ R^q y Besov ≤ R
    if certificates.strong_lq > R * (1 + 1e-12) or certificates.besov > R * (1 + 1e-12):
        raise RegimeError("Θ(p, d, M) ⊂ Lq(R) ∩ B(R)", f"certificados {certificates.model_dump()}")

    return TargetSpec(
        kind=TargetKind.HYPERCUBE,
        coefficients=theta,
        q=q,
        r=r,
        R=R,
        certificates=certificates,
        extras={"p": p, "d": d, "M": magnitude, "u": u},
    )
