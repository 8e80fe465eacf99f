"""Analytic limits: Landau levels on the sphere and the large-sphere (planar) trend."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence, Tuple

import numpy as np

from .params import exponents, make_config

__all__ = [
    "LimitReport",
    "landau_level",
    "vanishing_coulomb_level",
    "planar_coordinates",
    "planar_limit_check",
]

ZERO_SHIFT_ATOL = 1e-8


@dataclass(frozen=True)
class LimitReport:
    """Coulomb shifts of the ground level along a sequence of growing spheres.

    Attributes
    ----------
    shifts : list of float
        ``epsilon_ground - vanishing_coulomb_level`` in units of hbar^2/(2 M R^2).
    scaled_levels : list of float
        The same shifts divided by ``2 S``, i.e. in units of the cyclotron
        energy.  The sphere-radius unit shrinks to zero as S grows at fixed
        magnetic length, so only this scaled sequence can settle down.
    converged : bool
        Successive differences of ``scaled_levels`` shrink strictly in
        magnitude (or all shifts vanish).
    """

    S_sequence: list
    shifts: list
    scaled_levels: list
    converged: bool


def _half_sum(S, m):
    ex = exponents(make_config(S, m, 0.0))
    return 0.5 * (ex.a + ex.b)


def landau_level(S: float, m: int, n: int) -> float:
    """``(n + k)(n + k + 1) - S^2`` with ``k = (a + b) / 2``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    k = _half_sum(S, m)
    return (n + k) * (n + k + 1.0) - S * S


def vanishing_coulomb_level(S: float, m: int) -> float:
    k = _half_sum(S, m)
    return k * (k + 1.0) - S * S


def planar_coordinates(S: float, theta) -> Tuple[np.ndarray, np.ndarray]:
    """``chi = 2 S (1 - cos theta)`` and ``xi = sqrt(chi / 2)``, the near-pole planar variables."""
    theta = np.asarray(theta, dtype=float)
    chi = 2.0 * S * (1.0 - np.cos(theta))
    return chi, np.sqrt(0.5 * chi)


def planar_limit_check(m: int, coulomb_of_S: Callable[[float], float],
                       S_sequence: Sequence[float]) -> LimitReport:
    """Ground-level Coulomb shift for each S, with a Cauchy-trend verdict.

    ``coulomb_of_S`` sets the Coulomb ratio for each sphere; a scaling like
    ``c * sqrt(S)`` keeps the planar Coulomb coupling fixed.
    """
    from .spectrum import spectrum

    S_seq = [float(S) for S in S_sequence]
    if len(S_seq) < 3:
        raise ValueError("need at least three values of S")
    if any(b <= a for a, b in zip(S_seq, S_seq[1:])):
        raise ValueError("S_sequence must be strictly increasing")

    shifts = []
    for S in S_seq:
        ground = spectrum(make_config(S, m, coulomb_of_S(S)), 1)[0].epsilon
        shifts.append(ground - vanishing_coulomb_level(S, m))
    scaled = [sh / (2.0 * S) if S > 0 else math.nan for sh, S in zip(shifts, S_seq)]

    if all(abs(sh) <= ZERO_SHIFT_ATOL for sh in shifts):
        converged = True
    else:
        steps = np.abs(np.diff(scaled))
        converged = bool(np.all(np.isfinite(steps)) and np.all(steps[1:] < steps[:-1]))
    return LimitReport(S_sequence=S_seq, shifts=shifts, scaled_levels=scaled, converged=converged)
