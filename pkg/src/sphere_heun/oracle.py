"""Finite-difference eigenvalue oracle for the angular equation.

The equation is discretized in self-adjoint (flux) form,

    -(1/sin) d/dtheta (sin dF/dtheta) + V(theta) F = epsilon F,
    V(theta) = (m - S cos theta)^2 / sin^2 theta + coulomb / sin(theta / 2),

on the cell-centred grid ``theta_i = (i + 1/2) h``, ``h = pi / N``.

Near the poles F behaves like ``sin(theta/2)^a`` and ``cos(theta/2)^b``.
When an exponent is not an integer the plain scheme converges only like
``h^(2a)``, so the fractional parts ``fa``, ``fb`` are factored out first:
``F = sin(theta/2)^fa cos(theta/2)^fb G``.  G obeys an equation of the same
flux form with weight ``W = sin(theta) sin(theta/2)^(2 fa) cos(theta/2)^(2 fb)``
and potential

    (a^2 - fa^2) / (4 sin^2(theta/2)) + (b^2 - fb^2) / (4 cos^2(theta/2))
    - S^2 + ((fa + fb)^2 + 2 (fa + fb)) / 4 + coulomb / sin(theta / 2).

For integer exponents this is the plain scheme.  The weight is symmetrized
away with ``u_i = sqrt(W_i) G_i``, which gives a symmetric tridiagonal
matrix.  No boundary rows are needed: the flux ``W dG/dtheta`` vanishes at
both poles, which selects the regular solution.  The scheme is second order,
so Richardson extrapolation from ``N/2`` and ``N`` removes the leading error.

This module shares nothing with the continued-fraction solver beyond the
problem parameters and the pole exponents.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .params import PhysicalConfig, exponents

__all__ = [
    "Discretization",
    "discretize",
    "sturm_count",
    "lowest_eigenvalues",
    "oracle_spectrum",
]

MIN_POINTS = 100
EIG_TOL = 1e-10


@dataclass(frozen=True)
class Discretization:
    N: int
    thetas: np.ndarray
    diag: np.ndarray
    offdiag: np.ndarray


def discretize(config: PhysicalConfig, N: int) -> Discretization:
    if N < MIN_POINTS:
        raise ValueError(f"N must be at least {MIN_POINTS}")
    ex = exponents(config)
    a, b = ex.a, ex.b
    fa, fb = a - math.floor(a), b - math.floor(b)
    h = math.pi / N
    theta = (np.arange(N) + 0.5) * h
    faces = np.arange(1, N) * h

    # log weights; only ratios enter the matrix
    def log_w(t):
        return np.log(np.sin(t)) + 2.0 * fa * np.log(np.sin(0.5 * t)) + 2.0 * fb * np.log(np.cos(0.5 * t))

    lc = log_w(theta)
    lf = log_w(faces)
    # the outer faces sit on the poles and carry no flux
    left = np.concatenate(([0.0], np.exp(lf - lc[1:])))
    right = np.concatenate((np.exp(lf - lc[:-1]), [0.0]))
    sn = np.sin(0.5 * theta)
    cs = np.cos(0.5 * theta)
    f = fa + fb
    V = ((a * a - fa * fa) / (4.0 * sn * sn) + (b * b - fb * fb) / (4.0 * cs * cs)
         - config.S ** 2 + 0.25 * (f * f + 2.0 * f) + config.coulomb / sn)
    diag = (left + right) / (h * h) + V
    offdiag = -np.exp(lf - 0.5 * (lc[:-1] + lc[1:])) / (h * h)
    return Discretization(N=N, thetas=theta, diag=diag, offdiag=offdiag)


def sturm_count(disc: Discretization, shifts) -> np.ndarray:
    """Number of eigenvalues strictly below each shift, from the LDL^T pivots of ``T - shift``."""
    x = np.atleast_1d(np.asarray(shifts, dtype=float))
    e2 = disc.offdiag ** 2
    tiny = np.finfo(float).tiny
    count = np.zeros(x.shape, dtype=int)
    q = disc.diag[0] - x
    q = np.where(q == 0.0, -tiny, q)
    count += q < 0
    for i in range(1, len(disc.diag)):
        q = disc.diag[i] - x - e2[i - 1] / q
        q = np.where(q == 0.0, -tiny, q)
        count += q < 0
    return count


def lowest_eigenvalues(disc: Discretization, k: int) -> List[float]:
    """The ``k`` smallest eigenvalues by Sturm bisection (LAPACK ``stebz``)."""
    if not 1 <= k <= len(disc.diag):
        raise ValueError("k must lie in [1, N]")
    w = eigh_tridiagonal(disc.diag, disc.offdiag, eigvals_only=True, select="i",
                         select_range=(0, k - 1), lapack_driver="stebz", tol=EIG_TOL)
    return [float(v) for v in w]


def oracle_spectrum(config: PhysicalConfig, k: int, N: int = 8000, richardson: bool = False) -> List[float]:
    """``k`` lowest eigenvalue estimates on an ``N``-point grid.

    With ``richardson=True`` the ``N/2`` result is combined as
    ``(4 e_N - e_{N/2}) / 3``.
    """
    fine = np.array(lowest_eigenvalues(discretize(config, N), k))
    if not richardson:
        return fine.tolist()
    coarse = np.array(lowest_eigenvalues(discretize(config, N // 2), k))
    return ((4.0 * fine - coarse) / 3.0).tolist()
