"""Problem definition and the map from physical to Heun parameters.

All energies are dimensionless, in units of hbar^2 / (2 M R^2).  A problem
instance is fixed by three numbers: the half flux ``S = R^2 / l_B^2`` of the
monopole, the azimuthal quantum number ``m`` and the Coulomb ratio
``coulomb = R / l_0``.
"""
from __future__ import annotations

import math
import numbers
from dataclasses import dataclass

from .exceptions import ValidationError

__all__ = [
    "PhysicalConfig",
    "Exponents",
    "HeunParams",
    "make_config",
    "exponents",
    "heun_params",
    "alphabeta",
]


@dataclass(frozen=True)
class PhysicalConfig:
    S: float
    m: int
    coulomb: float

    def __post_init__(self):
        _check_nonnegative("S", self.S)
        _check_nonnegative("coulomb", self.coulomb)
        if isinstance(self.m, bool) or not isinstance(self.m, numbers.Integral):
            raise ValidationError(f"m must be an integer, got {self.m!r}")
        object.__setattr__(self, "S", float(self.S))
        object.__setattr__(self, "m", int(self.m))
        object.__setattr__(self, "coulomb", float(self.coulomb))


@dataclass(frozen=True)
class Exponents:
    """Characteristic exponents at the north (``a``) and south (``b``) poles."""

    a: float
    b: float


@dataclass(frozen=True)
class HeunParams:
    aprime: float
    gamma: float
    delta: float
    epsprime: float
    w: float
    alpha_plus_beta: float
    alphabeta_h: float
    exponents: Exponents


def _check_nonnegative(name, value):
    try:
        v = float(value)
    except (TypeError, ValueError):
        raise ValidationError(f"{name} must be a real number, got {value!r}") from None
    if not math.isfinite(v):
        raise ValidationError(f"{name} must be finite, got {value!r}")
    if v < 0:
        raise ValidationError(f"{name} must be non-negative, got {value!r}")


def make_config(S, m, coulomb) -> PhysicalConfig:
    """Validated problem instance; ``m`` may be given as an integral float."""
    if isinstance(m, float) and m.is_integer():
        m = int(m)
    return PhysicalConfig(S, m, coulomb)


def exponents(config: PhysicalConfig) -> Exponents:
    # the positive roots keep F regular at both poles
    return Exponents(a=abs(config.S - config.m), b=abs(config.S + config.m))


def heun_params(config: PhysicalConfig) -> HeunParams:
    ex = exponents(config)
    gamma = 2.0 * ex.a + 1.0
    delta = ex.b + 1.0
    epsprime = delta
    w = gamma + delta - 1.0
    return HeunParams(
        aprime=-1.0,
        gamma=gamma,
        delta=delta,
        epsprime=epsprime,
        w=w,
        alpha_plus_beta=gamma + delta + epsprime - 1.0,
        alphabeta_h=-4.0 * config.coulomb,
        exponents=ex,
    )


def alphabeta(params: HeunParams, config: PhysicalConfig, epsilon: float) -> float:
    """The energy-dependent Heun product ``alpha * beta``."""
    s = params.exponents.a + params.exponents.b
    return s * (s + 2.0) - 4.0 * (epsilon + config.S**2)
