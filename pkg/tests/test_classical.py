import importlib
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate

from sphere_heun.classical import (
    action,
    bohr_sommerfeld_level,
    classical_orbit,
    effective_potential,
    one_way_integral,
    potential_minimum,
    turning_points,
)
from sphere_heun.exceptions import BelowMinimum, MultipleWells, OutOfDomain
from sphere_heun.params import make_config
from sphere_heun.spectrum import spectrum

classical_mod = importlib.import_module("sphere_heun.classical")


@pytest.mark.parametrize("S", [0.0, 1.0, 7.5])
def test_potential_zero_at_equator(S):
    assert effective_potential(make_config(S, 0, 0), math.pi / 2) == pytest.approx(0.0, abs=1e-28)


def test_potential_examples():
    assert effective_potential(make_config(2, 1, 0), math.pi / 2) == pytest.approx(1.0)
    assert effective_potential(make_config(2, 1, 10), math.pi / 2) == pytest.approx(1 + 10 * math.sqrt(2))
    with pytest.raises(OutOfDomain):
        effective_potential(make_config(2, 1, 10), 0.0)
    with pytest.raises(OutOfDomain):
        effective_potential(make_config(2, 1, 10), [0.5, math.pi])


def test_potential_sign_convention():
    # the magnetic term vanishes where cos(theta) = m / S
    cfg = make_config(2, 1, 0)
    assert effective_potential(cfg, math.acos(0.5)) == pytest.approx(0.0, abs=1e-28)


def test_minimum_examples():
    pm = potential_minimum(make_config(3, 0, 0))
    assert pm.theta_star == pytest.approx(math.pi / 2, abs=1e-6)
    assert pm.eps0 == pytest.approx(0.0, abs=1e-12)
    pm = potential_minimum(make_config(2, -2, 0))
    assert pm.eps0 == 0.0 and pm.boundary_infimum
    pm = potential_minimum(make_config(2, 2, 0))
    assert pm.eps0 == 0.0 and pm.boundary_infimum
    assert potential_minimum(make_config(5, 2, 100)).eps0 > 100
    # a south-pole infimum with a Coulomb charge approaches the charge's value there
    pm = potential_minimum(make_config(2, -2, 10))
    assert pm.boundary_infimum and pm.eps0 == 10.0


@settings(max_examples=40, deadline=None)
@given(st.floats(0, 30), st.integers(-8, 8), st.floats(0, 200))
def test_minimum_is_grid_lower_bound(S, m, c):
    cfg = make_config(S, m, c)
    pm = potential_minimum(cfg)
    theta = np.linspace(1e-3, math.pi - 1e-3, 5001)
    assert pm.eps0 <= np.min(effective_potential(cfg, theta)) + 1e-9 * (1 + pm.eps0)


def test_turning_points_symmetric():
    t1, t2 = turning_points(make_config(2, 0, 0), 4.0)
    assert t1 == pytest.approx(math.pi / 4, abs=1e-12)
    assert t2 == pytest.approx(3 * math.pi / 4, abs=1e-12)


def test_turning_points_near_minimum():
    cfg = make_config(5, 2, 100)
    pm = potential_minimum(cfg)
    t1, t2 = turning_points(cfg, pm.eps0 + 1e-9)
    assert t1 == pytest.approx(pm.theta_star, abs=1e-3)
    assert t2 == pytest.approx(pm.theta_star, abs=1e-3)


def test_turning_points_solve_v_equals_eps():
    cfg = make_config(5, 2, 100)
    eps = potential_minimum(cfg).eps0 + 10
    orbit = classical_orbit(cfg, eps)
    assert 0 < orbit.theta1 < orbit.theta2 < math.pi
    for t in (orbit.theta1, orbit.theta2):
        assert effective_potential(cfg, t) == pytest.approx(eps, abs=1e-9)
    inside = np.linspace(orbit.theta1, orbit.theta2, 50)[1:-1]
    assert np.all(effective_potential(cfg, inside) < eps)
    assert effective_potential(cfg, orbit.theta1 - 1e-3) > eps
    assert effective_potential(cfg, orbit.theta2 + 1e-3) > eps


def test_below_minimum():
    cfg = make_config(5, 2, 100)
    with pytest.raises(BelowMinimum):
        turning_points(cfg, potential_minimum(cfg).eps0 - 1)


def test_multiple_wells(monkeypatch):
    def double_well(config, theta):
        return np.cos(4 * theta) + 2.0

    monkeypatch.setattr(classical_mod, "_potential", double_well)
    with pytest.raises(MultipleWells):
        turning_points(make_config(1, 0, 0), 2.5)


def test_action_against_adaptive_quadrature():
    cfg = make_config(2, 0, 0)
    ref, _ = integrate.quad(lambda t: math.sqrt(max(0.0, 4 - 4 / math.tan(t) ** 2)), math.pi / 4, 3 * math.pi / 4,
                            epsabs=1e-13, epsrel=1e-13)
    assert one_way_integral(cfg, 4.0) == pytest.approx(ref, abs=1e-8)
    assert action(cfg, 4.0) == pytest.approx(2 * ref, abs=1e-8)


def test_action_limits_and_monotone():
    cfg = make_config(5, 2, 100)
    e0 = potential_minimum(cfg).eps0
    assert action(cfg, e0 + 1e-8) < 1e-3
    eps = e0 + np.array([0.5, 1, 5, 20, 80, 200])
    vals = [action(cfg, e) for e in eps]
    assert all(b > a for a, b in zip(vals, vals[1:]))


def test_bohr_sommerfeld_consistency():
    cfg = make_config(5, 2, 100)
    levels = [bohr_sommerfeld_level(cfg, n) for n in range(5)]
    assert all(b > a for a, b in zip(levels, levels[1:]))
    for n, e in enumerate(levels):
        assert action(cfg, e) == pytest.approx(2 * math.pi * (n + 0.5), abs=1e-8)
    with pytest.raises(ValueError):
        bohr_sommerfeld_level(cfg, -1)


def test_bohr_sommerfeld_against_quantum():
    cfg = make_config(5, 2, 100)
    eps_bs = bohr_sommerfeld_level(cfg, 7)
    eps_q = spectrum(cfg, 8)[7].epsilon
    assert abs(eps_bs - eps_q) / eps_q < 0.05
    assert eps_bs == pytest.approx(324.3959037, abs=1e-6)


@settings(max_examples=15, deadline=None)
@given(st.floats(0.5, 20), st.integers(-5, 5), st.floats(1, 150), st.floats(0.5, 300))
def test_action_and_level_are_inverse(S, m, c, de):
    cfg = make_config(S, m, c)
    eps = potential_minimum(cfg).eps0 + de
    J = one_way_integral(cfg, eps)
    n = J / math.pi - 0.5
    if n < 0:
        return
    # invert through the quantization condition at non-integer n
    target = math.pi * (n + 0.5)
    from scipy import optimize

    back = optimize.brentq(lambda e: one_way_integral(cfg, e) - target, eps - de * 0.999, eps + de + 10)
    assert back == pytest.approx(eps, abs=1e-6 * max(1, eps))


@settings(max_examples=15, deadline=None)
@given(st.floats(0, 15), st.integers(-4, 4), st.floats(0, 150))
def test_classical_floor_below_quantum_ground(S, m, c):
    cfg = make_config(S, m, c)
    assert spectrum(cfg, 1)[0].epsilon >= potential_minimum(cfg).eps0 - 1e-9
