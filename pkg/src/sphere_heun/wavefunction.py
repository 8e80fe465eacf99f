"""Eigenfunctions from the hypergeometric expansion of the local Heun function.

For a level with energy ``epsilon`` the angular wavefunction is

    Psi(theta, phi) = exp(i m phi) F(theta),
    F(theta) = (1 - cos theta)^(a/2) (1 + cos theta)^(b/2) P(sin(theta/2)),
    P(x) = sum_nu c_nu F(-nu, nu + w; gamma; x),

where ``c_nu`` is the minimal (decaying) solution of the three-term recursion.
It is obtained by running the recursion downwards in ratio form, which is
stable; upward recursion would pick up the dominant solution.
"""
from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from .exceptions import GammaPole, NotMinimal, OutOfDomain, ZeroNorm
from .params import PhysicalConfig, alphabeta, exponents, heun_params
from .recursion import _klm, asymptotic_roots, in_convergence_region

if TYPE_CHECKING:
    from .spectrum import EnergyLevel

__all__ = [
    "WaveFunctionRep",
    "hyp_poly",
    "hyp_basis",
    "minimal_ratios",
    "minimal_solution",
    "coefficients",
    "build_wavefunction",
    "eval_P",
    "eval_F",
    "eval_Psi",
    "normalize",
    "norm_integral",
    "ode_residual",
    "count_nodes",
]

DEFAULT_TRUNCATION = 400
MAX_TRUNCATION = 6400
TAIL_TOL = 1e-12


@dataclass(frozen=True)
class WaveFunctionRep:
    config: PhysicalConfig
    level: "EnergyLevel"
    coeffs: np.ndarray
    truncation: int
    norm_constant: float = 1.0

    @property
    def epsilon(self) -> float:
        return self.level.epsilon


def hyp_poly(nu: int, gamma: float, delta: float, x: float) -> float:
    """Terminating series ``F(-nu, nu + delta + gamma - 1; gamma; x)``, summed term by term."""
    if nu < 0:
        raise ValueError("nu must be non-negative")
    b = nu + delta + gamma - 1.0
    term = 1.0
    total = 1.0
    for k in range(nu):
        den = (k + gamma) * (k + 1.0)
        if den == 0.0:
            raise GammaPole(f"gamma={gamma} hits a pole at k={k}")
        term *= (k - nu) * (k + b) / den * x
        total += term
    return total


def _basis_iter(n_max, gamma, delta, x):
    """Yield ``y_n(x)`` for n = 0..n_max through the Jacobi three-term recurrence.

    ``y_n = P_n^(al, be)(1 - 2x) / P_n^(al, be)(1)`` with ``al = gamma - 1``
    and ``be = delta - 1``.
    """
    al = gamma - 1.0
    be = delta - 1.0
    ab = al + be
    t = 1.0 - 2.0 * x
    y_prev = np.ones_like(x)
    yield y_prev
    if n_max == 0:
        return
    if gamma == 0.0:
        raise GammaPole("gamma = 0")
    y = 1.0 - (ab + 2.0) * x / (al + 1.0)
    yield y
    for n in range(2, n_max + 1):
        s = 2.0 * n + ab
        c_lead = 2.0 * n * (n + ab) * (s - 2.0)
        c1 = (s - 1.0) * (s * (s - 2.0) * t + al * al - be * be) * (n / (n + al))
        c2 = 2.0 * (n + al - 1.0) * (n + be - 1.0) * s * (n * (n - 1.0) / ((n + al) * (n + al - 1.0)))
        y_prev, y = y, (c1 * y - c2 * y_prev) / c_lead
        yield y


def hyp_basis(n_max: int, gamma: float, delta: float, x) -> np.ndarray:
    """Array of shape ``(n_max + 1, len(x))`` holding ``y_0 .. y_{n_max}``."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    return np.array(list(_basis_iter(n_max, gamma, delta, x)))


def minimal_ratios(config: PhysicalConfig, epsilon: float, N: int) -> np.ndarray:
    """Ratios ``r_nu = c_nu / c_{nu-1}`` for nu = 1..N (index 0 unused), seeded with ``c_{N+1} = 0``.

    This is backward recurrence from ``c_N = 1`` carried out on ratios, so a
    vanishing ``K_nu`` is harmless and nothing underflows.
    """
    p = heun_params(config)
    ab = alphabeta(p, config, epsilon)
    ratios = np.zeros(N + 1)
    r_next = 0.0
    for nu in range(N, 0, -1):
        K, L, M = _klm(nu, p, ab)
        den = L + M * r_next
        if den == 0.0:
            raise NotMinimal(f"recursion denominator vanished at nu={nu}")
        r_next = -K / den
        ratios[nu] = r_next
    return ratios


def minimal_solution(config: PhysicalConfig, epsilon: float, N: int) -> np.ndarray:
    """Recursion coefficients ``c_0 .. c_N`` of the minimal solution, scaled to ``c_0 = 1``."""
    ratios = minimal_ratios(config, epsilon, N)
    ratios[0] = 1.0
    with np.errstate(under="ignore"):
        return np.cumprod(ratios)


def coefficients(config: PhysicalConfig, level, N: int = DEFAULT_TRUNCATION) -> np.ndarray:
    """Minimal-solution coefficients at ``level.epsilon``, doubling ``N`` until the tail has decayed."""
    eps = level.epsilon if hasattr(level, "epsilon") else float(level)
    while True:
        c = minimal_solution(config, eps, N)
        peak = np.max(np.abs(c))
        if np.isfinite(peak) and abs(c[-1]) < TAIL_TOL * peak:
            return c
        if 2 * N > MAX_TRUNCATION:
            raise NotMinimal(
                f"coefficients did not decay up to N={N} at epsilon={eps!r}")
        N *= 2


def build_wavefunction(config: PhysicalConfig, level, N: int = DEFAULT_TRUNCATION,
                       quadrature_points: int = 512) -> WaveFunctionRep:
    """Coefficients plus normalization in one call."""
    c = coefficients(config, level, N)
    wf = WaveFunctionRep(config=config, level=level, coeffs=c, truncation=len(c) - 1)
    return normalize(wf, quadrature_points)


def eval_P(wf: WaveFunctionRep, x) -> np.ndarray:
    p = heun_params(wf.config)
    x = np.atleast_1d(np.asarray(x, dtype=float))
    out = np.zeros_like(x)
    nz = np.flatnonzero(wf.coeffs)
    last = int(nz[-1]) if nz.size else 0
    for c, y in zip(wf.coeffs[:last + 1], _basis_iter(last, p.gamma, p.delta, x)):
        out += c * y
    return out


def _check_theta(theta):
    theta = np.asarray(theta, dtype=float)
    if np.any(~(theta > 0.0)) or np.any(~(theta < math.pi)):
        raise OutOfDomain("theta must lie strictly between 0 and pi")
    return theta


def eval_F(wf: WaveFunctionRep, theta):
    """Real angular part ``F(theta)``, including the normalization constant."""
    scalar = np.ndim(theta) == 0
    theta = np.atleast_1d(_check_theta(theta))
    ex = exponents(wf.config)
    x = np.sin(0.5 * theta)
    roots = asymptotic_roots(heun_params(wf.config).aprime)
    if not (in_convergence_region(float(x.min()), roots) and in_convergence_region(float(x.max()), roots)):
        raise OutOfDomain("sin(theta/2) left the convergence region")
    # (1 - cos)^(a/2) (1 + cos)^(b/2) written with half angles to avoid cancellation
    log_pref = 0.5 * (ex.a + ex.b) * math.log(2.0)
    with np.errstate(divide="ignore"):
        if ex.a:
            log_pref = log_pref + ex.a * np.log(x)
        if ex.b:
            log_pref = log_pref + ex.b * np.log(np.cos(0.5 * theta))
    F = wf.norm_constant * np.exp(log_pref) * eval_P(wf, x)
    return float(F[0]) if scalar else F


def eval_Psi(wf: WaveFunctionRep, theta, phi):
    return np.exp(1j * wf.config.m * np.asarray(phi, dtype=float)) * eval_F(wf, theta)


def _gauss_legendre_theta(points, panels=16):
    per_panel = max(4, points // panels)
    u, w = np.polynomial.legendre.leggauss(per_panel)
    edges = np.linspace(0.0, math.pi, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    theta = (mid[:, None] + half[:, None] * u[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return theta, weights


def norm_integral(wf: WaveFunctionRep, quadrature_points: int = 512) -> float:
    """``2 pi * int_0^pi F^2 sin(theta) dtheta`` by composite Gauss-Legendre."""
    theta, weights = _gauss_legendre_theta(quadrature_points)
    F = eval_F(wf, theta)
    return float(2.0 * math.pi * np.sum(weights * F * F * np.sin(theta)))


def normalize(wf: WaveFunctionRep, quadrature_points: int = 512) -> WaveFunctionRep:
    integral = norm_integral(wf, quadrature_points)
    if not (integral > 0.0 and math.isfinite(integral)):
        raise ZeroNorm(f"norm integral is {integral!r}")
    return dataclasses.replace(wf, norm_constant=wf.norm_constant / math.sqrt(integral))


def ode_residual(wf: WaveFunctionRep, grid, h: float = 1e-4) -> float:
    """Scaled max residual of the angular equation on ``grid``.

    Derivatives come from 5-point central differences with step ``h``; the
    result is divided by ``max|F| * (|epsilon| + S^2 + 1)``.
    """
    theta = np.atleast_1d(_check_theta(grid))
    if theta.min() - 2 * h <= 0.0 or theta.max() + 2 * h >= math.pi:
        raise OutOfDomain("grid too close to the poles for the difference stencil")
    cfg = wf.config
    S, m, eps = cfg.S, cfg.m, wf.epsilon
    fm2, fm1, f0, fp1, fp2 = (eval_F(wf, theta + k * h) for k in (-2, -1, 0, 1, 2))
    d1 = (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h)
    # differences against f0 first: exact for constants, less roundoff in general
    d2 = (16.0 * ((fm1 - f0) + (fp1 - f0)) - ((fm2 - f0) + (fp2 - f0))) / (12.0 * h * h)
    s = np.sin(theta)
    pot = (-(m * m + S * S - 2.0 * m * S * np.cos(theta)) / (s * s)
           - cfg.coulomb / np.sin(0.5 * theta) + eps + S * S)
    res = d2 + (np.cos(theta) / s) * d1 + pot * f0
    scale = np.max(np.abs(f0)) * (abs(eps) + S * S + 1.0)
    return float(np.max(np.abs(res)) / scale)


def count_nodes(config: PhysicalConfig, epsilon: float, samples: int = 2000) -> int:
    """Number of sign changes of ``F`` on (0, pi) for the minimal solution at ``epsilon``."""
    c = coefficients(config, epsilon)
    wf = WaveFunctionRep(config=config, level=None, coeffs=c, truncation=len(c) - 1)
    theta = (np.arange(samples) + 0.5) * (math.pi / samples)
    P = eval_P(wf, np.sin(0.5 * theta))
    signs = np.sign(P[P != 0.0])
    return int(np.count_nonzero(signs[1:] != signs[:-1]))
