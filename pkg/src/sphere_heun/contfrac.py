"""Continued-fraction eigencondition, evaluated with the modified Lentz method.

Eliminating the minimal-solution ratios ``c_nu / c_{nu-1}`` from the
recursion turns its ``nu = 0`` row into the condition

    B_0 + A_1 / (B_1 + A_2 / (B_2 + ...)) = 0,
    A_nu = -K_nu / M_nu,   B_nu = L_nu / M_nu .

``cf_value`` evaluates the equivalent fraction obtained by multiplying
through by ``M_0`` (see :func:`scaled_coefficients`).  It has the same
zeros, but no removable singularities where some ``M_nu`` vanishes; one of
those sits exactly on the ground state of the free sphere.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Tuple

from .exceptions import CoefficientError
from .params import PhysicalConfig, alphabeta, heun_params
from .recursion import _klm, _m_coeff

__all__ = [
    "CFEvaluation",
    "TINY",
    "POLE_GUARD",
    "lentz_eval",
    "truncated_eval",
    "normalized_coefficients",
    "scaled_coefficients",
    "cf_value",
]

TINY = 1e-300
POLE_GUARD = 1e12
DEFAULT_TOL = 1e-14
DEFAULT_MAX_ITER = 100_000

CoeffSource = Callable[[int], Tuple[float, float]]


@dataclass(frozen=True)
class CFEvaluation:
    value: float
    iterations: int
    converged: bool
    suspected_pole: bool


def lentz_eval(coeff_source: CoeffSource, tol: float = DEFAULT_TOL,
               max_iter: int = DEFAULT_MAX_ITER, tiny: float = TINY) -> CFEvaluation:
    """Evaluate ``b_0 + a_1/(b_1 + a_2/(b_2 + ...))`` by modified Lentz.

    Parameters
    ----------
    coeff_source : callable
        ``coeff_source(j)`` returns ``(a_j, b_j)``; ``a_0`` is ignored.
    tol : float
        Stop once the multiplicative update satisfies ``|delta - 1| < tol``.
    max_iter : int
        Number of partial denominators to try before giving up.  Not
        converging is reported through ``converged=False``, never raised.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if max_iter < 1:
        raise ValueError("max_iter must be >= 1")

    _, b0 = coeff_source(0)
    f = b0 if b0 != 0.0 else tiny
    C = f
    D = 0.0
    converged = False
    j = 0
    for j in range(1, max_iter + 1):
        a, b = coeff_source(j)
        D = b + a * D
        if abs(D) < tiny:
            D = tiny
        C = b + a / C
        if abs(C) < tiny:
            C = tiny
        D = 1.0 / D
        delta = C * D
        f *= delta
        if abs(delta - 1.0) < tol:
            converged = True
            break
    return CFEvaluation(value=f, iterations=j, converged=converged,
                        suspected_pole=not abs(f) <= POLE_GUARD)


def truncated_eval(coeff_source: CoeffSource, depth: int) -> float:
    """Bottom-up evaluation of the fraction cut after ``depth`` partial denominators."""
    tail = 0.0
    for j in range(depth, 0, -1):
        a, b = coeff_source(j)
        tail = a / (b + tail)
    return coeff_source(0)[1] + tail


def normalized_coefficients(config: PhysicalConfig, epsilon: float) -> CoeffSource:
    """Source of ``(A_nu, B_nu)`` with ``A_nu = -K_nu/M_nu``, ``B_nu = L_nu/M_nu``."""
    p = heun_params(config)
    ab = alphabeta(p, config, epsilon)

    def source(nu):
        K, L, M = _klm(nu, p, ab)
        if M == 0.0:
            raise CoefficientError(f"M_{nu} vanishes at epsilon={epsilon!r}")
        return -K / M, L / M

    return source


def scaled_coefficients(config: PhysicalConfig, epsilon: float) -> CoeffSource:
    """Source of the division-free fraction ``L_0 - K_1 M_0/(L_1 - K_2 M_1/(L_2 - ...))``.

    Its value is ``M_0`` times the normalized fraction.
    """
    p = heun_params(config)
    ab = alphabeta(p, config, epsilon)

    def source(nu):
        K, L, _ = _klm(nu, p, ab)
        if nu == 0:
            return 0.0, L
        return -K * _m_coeff(nu - 1, p, ab), L

    return source


def cf_value(config: PhysicalConfig, epsilon: float, tol: float = DEFAULT_TOL,
             max_iter: int = DEFAULT_MAX_ITER) -> CFEvaluation:
    """Eigencondition function at ``epsilon``; its zeros are the energy levels."""
    return lentz_eval(scaled_coefficients(config, epsilon), tol=tol, max_iter=max_iter)
