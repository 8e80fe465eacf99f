"""Classical theta-motion: effective potential, turning points, action, Bohr-Sommerfeld levels.

The effective potential uses the same sign convention for ``m`` as the
quantum angular equation,

    V(theta) = (m - S cos theta)^2 / sin^2 theta + coulomb / sin(theta / 2),

so that ``min V`` is a rigorous lower bound for the quantum levels and the
semiclassical levels are comparable with them.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy import optimize

from .exceptions import BelowMinimum, MultipleWells, NotBracketed, OutOfDomain
from .params import PhysicalConfig

__all__ = [
    "ClassicalOrbit",
    "PotentialMinimum",
    "effective_potential",
    "potential_minimum",
    "turning_points",
    "action",
    "one_way_integral",
    "classical_orbit",
    "bohr_sommerfeld_level",
]

GRID_POINTS = 2048
ACTION_NODES = 256


@dataclass(frozen=True)
class ClassicalOrbit:
    epsilon: float
    theta1: float
    theta2: float
    action: float


class PotentialMinimum(NamedTuple):
    theta_star: float
    eps0: float
    boundary_infimum: bool = False


def _potential(config, theta):
    s = np.sin(theta)
    return (config.m - config.S * np.cos(theta)) ** 2 / (s * s) + config.coulomb / np.sin(0.5 * theta)


def effective_potential(config: PhysicalConfig, theta):
    theta_arr = np.asarray(theta, dtype=float)
    if np.any(~(theta_arr > 0.0)) or np.any(~(theta_arr < math.pi)):
        raise OutOfDomain("theta must lie strictly between 0 and pi")
    v = _potential(config, theta_arr)
    return float(v) if np.ndim(v) == 0 else v


def _grid():
    return np.linspace(0.0, math.pi, GRID_POINTS + 2)[1:-1]


def potential_minimum(config: PhysicalConfig) -> PotentialMinimum:
    """Global minimum of the effective potential on (0, pi).

    A dense scan picks the basin, a bounded Brent search polishes it.  When
    the infimum is only approached at a pole (north: ``m = S`` without a
    Coulomb charge; south: ``m = -S``) the limiting value is returned with
    ``boundary_infimum`` set.
    """
    theta = _grid()
    v = _potential(config, theta)
    if np.ptp(v) == 0.0:
        return PotentialMinimum(0.5 * math.pi, float(v[0]))
    i = int(np.argmin(v))
    last = len(theta) - 1
    if i == 0 and config.m == config.S and config.coulomb == 0.0:
        return PotentialMinimum(0.0, 0.0, True)
    if i == last and config.m == -config.S:
        # V -> coulomb / sin(pi / 2) at the south pole
        return PotentialMinimum(math.pi, config.coulomb, True)
    i = min(max(i, 1), last - 1)
    res = optimize.minimize_scalar(
        lambda t: float(_potential(config, t)),
        bounds=(theta[i - 1], theta[i + 1]),
        method="bounded",
        options={"xatol": 1e-12},
    )
    if res.fun <= v[i]:
        return PotentialMinimum(float(res.x), float(res.fun))
    return PotentialMinimum(float(theta[i]), float(v[i]))


def turning_points(config: PhysicalConfig, epsilon: float):
    """Roots of ``V(theta) = epsilon`` on either side of the potential minimum."""
    pm = potential_minimum(config)
    if not epsilon > pm.eps0:
        raise BelowMinimum(f"epsilon={epsilon!r} is not above the potential minimum {pm.eps0!r}")
    theta = _grid()
    g = epsilon - _potential(config, theta)
    allowed = g > 0
    if np.count_nonzero(allowed[1:] != allowed[:-1]) > 2:
        raise MultipleWells(f"more than two turning points at epsilon={epsilon!r}")

    def gap(t):
        return epsilon - float(_potential(config, t))

    # keep the inner point strictly inside (0, pi) when the infimum sits on a pole
    inner = min(max(pm.theta_star, 1e-12), math.pi * (1.0 - 1e-12))
    left = np.flatnonzero((theta < inner) & ~allowed)
    right = np.flatnonzero((theta > inner) & ~allowed)
    if left.size:
        t1 = optimize.brentq(gap, theta[left[-1]], inner, xtol=1e-13)
    else:
        t1 = 0.0
    if right.size:
        t2 = optimize.brentq(gap, inner, theta[right[0]], xtol=1e-13)
    else:
        t2 = math.pi
    return float(t1), float(t2)


def one_way_integral(config: PhysicalConfig, epsilon: float) -> float:
    """``int_{theta1}^{theta2} sqrt(epsilon - V) dtheta``.

    The substitution ``theta = mid + half * sin(u)`` removes the square-root
    endpoint singularities, after which Gauss-Legendre converges quickly.
    """
    t1, t2 = turning_points(config, epsilon)
    mid = 0.5 * (t1 + t2)
    half = 0.5 * (t2 - t1)
    u, w = np.polynomial.legendre.leggauss(ACTION_NODES)
    u = 0.5 * math.pi * u
    w = 0.5 * math.pi * w
    theta = mid + half * np.sin(u)
    g = np.clip(epsilon - _potential(config, theta), 0.0, None)
    return float(np.sum(w * np.sqrt(g) * half * np.cos(u)))


def action(config: PhysicalConfig, epsilon: float) -> float:
    """Action over a complete cycle, in units of hbar."""
    return 2.0 * one_way_integral(config, epsilon)


def classical_orbit(config: PhysicalConfig, epsilon: float) -> ClassicalOrbit:
    t1, t2 = turning_points(config, epsilon)
    return ClassicalOrbit(epsilon=epsilon, theta1=t1, theta2=t2, action=action(config, epsilon))


def bohr_sommerfeld_level(config: PhysicalConfig, n: int) -> float:
    """Energy with ``int sqrt(epsilon - V) dtheta = pi (n + 1/2)`` over the allowed interval."""
    if n < 0:
        raise ValueError("n must be non-negative")
    target = math.pi * (n + 0.5)
    eps0 = potential_minimum(config).eps0
    lo = eps0 + 1e-12 * max(1.0, abs(eps0))
    width = 1.0
    for _ in range(80):
        hi = eps0 + width
        if one_way_integral(config, hi) > target:
            break
        lo = hi
        width *= 2.0
    else:
        raise NotBracketed(f"no Bohr-Sommerfeld level n={n} below epsilon={hi!r}")
    return float(optimize.brentq(lambda e: one_way_integral(config, e) - target, lo, hi, xtol=1e-12, rtol=1e-15))
