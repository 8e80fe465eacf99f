"""Three-term recursion for the hypergeometric expansion of the local Heun function.

Writing ``P(x) = sum_nu c_nu y_nu(x)`` with
``y_nu = F(-nu, nu + w; gamma; x)`` the coefficients obey

    K_nu c_{nu-1} + L_nu c_nu + M_nu c_{nu+1} = 0 .

The individual Heun exponents alpha and beta are never formed; the two
products that need them are expanded in ``alpha + beta`` and ``alpha * beta``,
so everything stays real even when alpha and beta are complex.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .exceptions import DegenerateDenominator, InvalidAPrime
from .params import HeunParams, PhysicalConfig, alphabeta

__all__ = [
    "RecursionCoeffs",
    "AsymptoticRoots",
    "recursion_coeffs",
    "asymptotic_roots",
    "hypergeometric_ratio_limit",
    "in_convergence_region",
]


@dataclass(frozen=True)
class RecursionCoeffs:
    K: float
    L: float
    M: float
    nu: int


@dataclass(frozen=True)
class AsymptoticRoots:
    rho1_abs: float
    rho2_abs: float
    A: complex


def _klm(nu, p: HeunParams, ab):
    """(K, L, M) at order ``nu`` for a given ``alpha * beta``; hot path of the solver."""
    w = p.w
    g = p.gamma
    n = float(nu)
    nw = n * (n + w)
    if nu == 0:
        # the (w - 1) factor cancels analytically; it vanishes for S = m = 0
        K = 0.0
        L = p.alphabeta_h - ab * g / (w + 1.0)
    else:
        d1 = (2 * n + w - 1.0) * (2 * n + w - 2.0)
        d2 = (2 * n + w - 1.0) * (2 * n + w + 1.0)
        if d1 == 0.0 or d2 == 0.0:
            raise DegenerateDenominator(f"vanishing denominator at nu={nu}, w={w}")
        t = n - 1.0
        K = (t * t + t * p.alpha_plus_beta + ab) * (n + g - 1.0) * (n + w - 1.0) / d1
        L = (
            p.alphabeta_h
            + p.aprime * nw
            - (p.epsprime * nw * (g - p.delta) + (nw + ab) * (2.0 * nw + g * (w - 1.0))) / d2
        )
    return K, L, _m_coeff(nu, p, ab)


def _m_coeff(nu, p: HeunParams, ab):
    n = float(nu)
    d3 = (2 * n + p.w + 1.0) * (2 * n + p.w + 2.0)
    if d3 == 0.0:
        raise DegenerateDenominator(f"vanishing denominator at nu={nu}, w={p.w}")
    u = n + p.w + 1.0
    return (n + 1.0) * (u * u - u * p.alpha_plus_beta + ab) * (n + p.delta) / d3


def recursion_coeffs(params: HeunParams, config: PhysicalConfig, epsilon: float, nu: int) -> RecursionCoeffs:
    """Recursion coefficients at order ``nu`` and energy ``epsilon``.

    At ``nu = 0`` the coefficient K multiplies the non-existent ``c_{-1}`` and
    is reported as 0.
    """
    if nu < 0:
        raise ValueError("nu must be non-negative")
    K, L, M = _klm(nu, params, alphabeta(params, config, epsilon))
    return RecursionCoeffs(K=K, L=L, M=M, nu=nu)


def asymptotic_roots(aprime: float) -> AsymptoticRoots:
    """Moduli of the roots of the limiting characteristic equation of the recursion."""
    if aprime == 0:
        raise InvalidAPrime("aprime must be non-zero")
    A = cmath.sqrt(1.0 - 1.0 / aprime)
    rho1 = abs((1.0 - A) / (1.0 + A))
    rho2 = math.inf if rho1 == 0.0 else 1.0 / rho1
    return AsymptoticRoots(rho1_abs=rho1, rho2_abs=rho2, A=A)


def hypergeometric_ratio_limit(x: float) -> float:
    """Large-nu limit of |y_{nu+1}(x) / y_nu(x)|.

    Equals 1 on the whole closed segment [0, 1] (X is imaginary there) and
    grows off the segment; level sets are ellipses with foci 0 and 1.
    """
    if x == 0:
        return 1.0
    X = cmath.sqrt(1.0 - 1.0 / x)
    if X == 1.0:
        return math.inf
    return abs((1.0 + X) / (1.0 - X))


def in_convergence_region(x: float, roots: AsymptoticRoots) -> bool:
    return hypergeometric_ratio_limit(x) < roots.rho2_abs
