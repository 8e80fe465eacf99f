"""Energy levels as zeros of the continued-fraction eigencondition.

The eigencondition has poles interleaved with its zeros, so every sign
change found on the scan grid is classified: near a zero ``|f|`` shrinks
under bisection, near a pole it blows up.  Levels are indexed n = 1, 2, ...
in ascending energy; in the weak-Coulomb limit level ``n`` is the Landau
level with index ``n - 1``.

A missed root (a zero and a pole falling in one grid cell) is caught by
oscillation counting: the n-th eigenfunction has exactly ``n - 1`` nodes.
On a mismatch the scan step is halved and the window rescanned.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np
from scipy import optimize

from .classical import potential_minimum
from .contfrac import cf_value
from .exceptions import BracketInvalid, InsufficientRoots, NotMinimal, PoleAtLandauFloor, PoleDetected
from .params import PhysicalConfig, exponents

__all__ = [
    "EnergyLevel",
    "ScanSettings",
    "eigencondition",
    "h_of_epsilon",
    "default_step",
    "bracket_roots",
    "refine_root",
    "spectrum",
]

log = logging.getLogger(__name__)

NARROWING_STEPS = 12


@dataclass(frozen=True)
class EnergyLevel:
    n: int
    m: int
    epsilon: float
    h_n: Optional[float]
    cf_residual: float


@dataclass(frozen=True)
class ScanSettings:
    """Root-scan controls.

    ``eps_min`` defaults to just below the classical potential minimum,
    ``step`` to ``(a + b + 1) / 10``.  With ``eps_max=None`` the window grows
    chunk by chunk until enough levels are found or ``max_chunks`` is hit.
    """

    eps_min: Optional[float] = None
    eps_max: Optional[float] = None
    step: Optional[float] = None
    tol: float = 1e-10
    chunk_steps: int = 64
    max_chunks: int = 200
    max_halvings: int = 5
    check_nodes: bool = True


def eigencondition(config: PhysicalConfig, epsilon: float) -> float:
    return cf_value(config, epsilon).value


def h_of_epsilon(config: PhysicalConfig, epsilon: float) -> float:
    """Accessory parameter of the Heun equation at this energy."""
    ex = exponents(config)
    s = ex.a + ex.b
    den = 4.0 * (epsilon + config.S**2) - s * (s + 2.0)
    if abs(den) <= 8.0 * np.finfo(float).eps * (4.0 * (abs(epsilon) + config.S**2) + s * (s + 2.0)):
        raise PoleAtLandauFloor(
            f"h is singular at epsilon={epsilon!r} (vanishing-Coulomb level)")
    return 4.0 * config.coulomb / den


def default_step(config: PhysicalConfig) -> float:
    ex = exponents(config)
    return (ex.a + ex.b + 1.0) / 10.0


def _sample(config, grid, min_width):
    """CF evaluations on ``grid``, with cells where the function decreases bisected.

    Between poles the eigencondition increases with epsilon, so a decreasing
    cell holds a pole and possibly a zero right next to it that produces no
    sign change at the coarse resolution.
    """
    pts = [(float(e), cf_value(config, e)) for e in grid]
    out = [pts[0]]
    for right in pts[1:]:
        stack = [right]
        while stack:
            left = out[-1]
            cur = stack[-1]
            if cur[1].value < left[1].value and cur[0] - left[0] > min_width:
                mid = 0.5 * (left[0] + cur[0])
                stack.append((mid, cf_value(config, mid)))
            else:
                out.append(stack.pop())
    return out


def _sign_changes(samples):
    out = []
    for (x0, e0), (x1, e1) in zip(samples[:-1], samples[1:]):
        if e0.value == 0.0:
            if not out or out[-1][1] != x0:
                out.append((x0, x0, e0, e0))
            continue
        if e1.value == 0.0:
            continue
        if (e0.value < 0.0) != (e1.value < 0.0):
            out.append((x0, x1, e0, e1))
    x_last, e_last = samples[-1]
    if e_last.value == 0.0:
        out.append((x_last, x_last, e_last, e_last))
    return out


def _narrow(config, lo, hi, f_lo, f_hi, steps):
    for _ in range(steps):
        mid = 0.5 * (lo + hi)
        f_mid = eigencondition(config, mid)
        if f_mid == 0.0:
            return mid, mid, 0.0, 0.0
        if (f_mid < 0.0) == (f_lo < 0.0):
            lo, f_lo = mid, f_mid
        else:
            hi, f_hi = mid, f_mid
    return lo, hi, f_lo, f_hi


def bracket_roots(config: PhysicalConfig, eps_min: float, eps_max: float, step: float) -> List[Tuple[float, float]]:
    """Sign-change brackets of the eigencondition that enclose zeros rather than poles.

    Cells in which the function decreases are bisected down to ``1e-6 * step``
    to separate poles from zeros lying next to them.  Every sign change is
    then narrowed by a few bisections; it is kept when the
    function magnitude at the narrowed midpoint is below the larger original
    endpoint magnitude (near a pole it grows instead).  The returned brackets are the narrowed ones.
    """
    if step <= 0:
        raise ValueError("step must be positive")
    if eps_max <= eps_min:
        return []
    num = int(math.ceil((eps_max - eps_min) / step)) + 1
    grid = np.linspace(eps_min, eps_max, num)
    min_width = 1e-6 * step
    brackets = []
    for lo, hi, e_lo, e_hi in _sign_changes(_sample(config, grid, min_width)):
        if lo == hi:
            brackets.append((float(lo), float(hi)))
            continue
        if e_lo.suspected_pole or e_hi.suspected_pole:
            continue
        a, b, fa, fb = _narrow(config, lo, hi, e_lo.value, e_hi.value, NARROWING_STEPS)
        if a == b:
            brackets.append((float(a), float(b)))
            continue
        f_mid = eigencondition(config, 0.5 * (a + b))
        if abs(f_mid) < max(abs(e_lo.value), abs(e_hi.value)):
            brackets.append((float(a), float(b)))
    return brackets


def refine_root(config: PhysicalConfig, bracket: Tuple[float, float], tol: float = 1e-10, n: int = 1) -> EnergyLevel:
    """Solve the eigencondition inside a sign-change bracket (Brent: bisection plus secant steps)."""
    lo, hi = bracket
    if lo == hi:
        root = float(lo)
        f_lo = f_hi = eigencondition(config, root)
        if f_lo != 0.0:
            raise BracketInvalid(f"degenerate bracket at {lo!r} is not a root")
    else:
        f_lo = eigencondition(config, lo)
        f_hi = eigencondition(config, hi)
        if f_lo == 0.0:
            root = float(lo)
        elif f_hi == 0.0:
            root = float(hi)
        elif (f_lo < 0.0) == (f_hi < 0.0):
            raise BracketInvalid(f"no sign change on [{lo!r}, {hi!r}]")
        else:
            root = float(optimize.brentq(lambda e: eigencondition(config, e), lo, hi,
                                         xtol=tol, rtol=4 * np.finfo(float).eps))
    ev = cf_value(config, root)
    if ev.suspected_pole or abs(ev.value) > max(abs(f_lo), abs(f_hi)):
        raise PoleDetected(f"refinement converged onto a pole near epsilon={root!r}")
    try:
        h = h_of_epsilon(config, root)
    except PoleAtLandauFloor:
        h = None
    return EnergyLevel(n=n, m=config.m, epsilon=root, h_n=h, cf_residual=abs(ev.value))


def _scan(config, lo, hi, step, tol):
    levels = []
    for br in bracket_roots(config, lo, hi, step):
        try:
            levels.append(refine_root(config, br, tol))
        except PoleDetected:
            continue
    return levels


def _nodes_consistent(config, levels):
    from .wavefunction import count_nodes

    for k, lv in enumerate(levels):
        try:
            if count_nodes(config, lv.epsilon) != k:
                return False
        except NotMinimal:
            return False
    return True


def _collect(config, n_levels, lo, step, scan):
    levels = []
    start = stop = lo
    for _ in range(scan.max_chunks):
        stop = start + scan.chunk_steps * step
        if scan.eps_max is not None:
            stop = min(stop, scan.eps_max)
        for lv in _scan(config, start, stop, step, scan.tol):
            if not levels or lv.epsilon > levels[-1].epsilon:
                levels.append(lv)
        if len(levels) >= n_levels or (scan.eps_max is not None and stop >= scan.eps_max):
            break
        start = stop
    return levels[:n_levels], stop


def spectrum(config: PhysicalConfig, n_levels: int, scan: Optional[ScanSettings] = None) -> List[EnergyLevel]:
    """The ``n_levels`` lowest energy levels, indexed from n = 1."""
    if n_levels < 1:
        raise ValueError("n_levels must be >= 1")
    scan = scan or ScanSettings()
    step = scan.step or default_step(config)
    lo = scan.eps_min
    if lo is None:
        # the floor is only attained for the free sphere, whose ground state sits on it
        lo = potential_minimum(config).eps0 - 0.5 * step

    for _ in range(scan.max_halvings + 1):
        levels, stop = _collect(config, n_levels, lo, step, scan)
        if len(levels) == n_levels and (not scan.check_nodes or _nodes_consistent(config, levels)):
            break
        log.info("missed or spurious roots for %s at step %g; halving", config, step)
        step *= 0.5
    else:
        if len(levels) < n_levels:
            raise InsufficientRoots(
                f"found {len(levels)} of {n_levels} levels in [{lo!r}, {stop!r}]",
                found=len(levels), window=(lo, stop))
        log.warning("node counts still inconsistent for %s after %d halvings", config, scan.max_halvings)

    return [EnergyLevel(n=k + 1, m=lv.m, epsilon=lv.epsilon, h_n=lv.h_n, cf_residual=lv.cf_residual)
            for k, lv in enumerate(levels)]
