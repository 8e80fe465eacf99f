import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from sphere_heun.limits import landau_level
from sphere_heun.oracle import Discretization, discretize, lowest_eigenvalues, oracle_spectrum, sturm_count
from sphere_heun.params import make_config


def dense(disc):
    return np.diag(disc.diag) + np.diag(disc.offdiag, 1) + np.diag(disc.offdiag, -1)


def test_two_by_two():
    disc = Discretization(N=2, thetas=np.zeros(2), diag=np.array([2.0, 2.0]), offdiag=np.array([-1.0]))
    assert lowest_eigenvalues(disc, 2) == pytest.approx([1.0, 3.0], abs=1e-10)
    assert list(sturm_count(disc, [0.5, 2.0, 3.5])) == [0, 1, 2]


def test_discretization_shape():
    disc = discretize(make_config(2, -3, 10), 200)
    assert disc.diag.shape == (200,) and disc.offdiag.shape == (199,)
    assert np.all(np.isfinite(disc.diag)) and np.all(disc.offdiag < 0)
    with pytest.raises(ValueError):
        discretize(make_config(0, 0, 0), 50)
    with pytest.raises(ValueError):
        lowest_eigenvalues(disc, 0)


def test_sturm_count_against_leading_minors():
    rng = np.random.default_rng(7)
    d = rng.normal(size=10) * 3
    e = rng.normal(size=9)
    disc = Discretization(N=10, thetas=np.zeros(10), diag=d, offdiag=e)
    T = dense(disc)
    for x in rng.uniform(-8, 8, size=20):
        minors = [1.0] + [np.linalg.det(T[:k, :k] - x * np.eye(k)) for k in range(1, 11)]
        changes = sum((a > 0) != (b > 0) for a, b in zip(minors, minors[1:]))
        assert sturm_count(disc, x)[0] == changes


def test_bisection_matches_dense_solver():
    disc = discretize(make_config(5, 2, 100), 300)
    ref = np.linalg.eigvalsh(dense(disc))[:6]
    assert lowest_eigenvalues(disc, 6) == pytest.approx(ref, rel=1e-10)


def test_free_sphere():
    assert oracle_spectrum(make_config(0, 0, 0), 3, 4000) == pytest.approx([0, 2, 6], abs=1e-3)
    assert oracle_spectrum(make_config(0, 1, 0), 3, 4000) == pytest.approx([2, 6, 12], abs=1e-3)


@pytest.mark.parametrize("m", [0, 1, 2, 3])
def test_spherical_harmonics(m):
    cfg = make_config(0, m, 0)
    ell = np.arange(m, m + 4)
    assert oracle_spectrum(cfg, 4, 4000) == pytest.approx(ell * (ell + 1), abs=2e-3)


@pytest.mark.parametrize("m", [0, 1, 2])
def test_landau_levels(m):
    got = oracle_spectrum(make_config(5, m, 0), 3, 8000)
    assert got == pytest.approx([landau_level(5, m, n) for n in range(3)], abs=2e-3)


def test_weak_coulomb_ground():
    assert oracle_spectrum(make_config(5, 2, 1e-8), 1, 8000)[0] == pytest.approx(5.0, abs=1e-3)


@pytest.mark.parametrize("key", [(5, 2, 100), (2, -3, 10), (1.5, 1, 0), (30, -2, 100)])
def test_second_order_convergence(key):
    cfg = make_config(*key)
    e = [np.array(oracle_spectrum(cfg, 3, N)) for N in (1000, 2000, 4000)]
    ratio = (e[0] - e[1]) / (e[1] - e[2])
    assert ratio == pytest.approx([4, 4, 4], rel=0.1)
    # this scheme approaches from below
    assert np.all(e[0] <= e[1]) and np.all(e[1] <= e[2])


def test_reference_values():
    # frozen Richardson estimates, consistent with the continued fraction to ~1e-9
    got = oracle_spectrum(make_config(5, 2, 100), 3, 8000, richardson=True)
    assert got == pytest.approx([146.98666008, 167.64251658, 189.78911664], abs=1e-7)
    got = oracle_spectrum(make_config(2, -3, 10), 2, 8000, richardson=True)
    assert got == pytest.approx([19.55600106, 28.86235342], abs=1e-7)


@settings(max_examples=10, deadline=None)
@given(st.floats(0, 20), st.integers(-5, 5), st.floats(0, 100))
def test_sturm_count_consistent_with_eigenvalues(S, m, c):
    disc = discretize(make_config(S, m, c), 400)
    ev = lowest_eigenvalues(disc, 5)
    gaps = np.diff(ev)
    shifts = np.array(ev[:-1]) + 0.5 * gaps
    assert list(sturm_count(disc, shifts)) == [1, 2, 3, 4]
