import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.pipeline import make_pipeline
from sklearn.preprocessing import FunctionTransformer

from sphere_heun.estimators import SpectrumTransformer
from sphere_heun.exceptions import ValidationError
from sphere_heun.validation import check_config_array, configs_from_array

X = np.array([[0, 0, 0], [5, 2, 1e-8], [5, 2, 100]])


def test_cf_levels():
    out = SpectrumTransformer(n_levels=2).fit_transform(X)
    assert out.shape == (3, 2)
    assert out[0] == pytest.approx([0, 2], abs=1e-9)
    assert out[1] == pytest.approx([5, 17], abs=1e-3)
    assert out[2] == pytest.approx([146.98666008, 167.64251658], abs=1e-7)


def test_methods_agree_roughly():
    row = [[5, 2, 100]]
    cf = SpectrumTransformer("cf", 2).fit_transform(row)
    fd = SpectrumTransformer("oracle", 2, grid_points=4000).fit_transform(row)
    bs = SpectrumTransformer("bohr_sommerfeld", 2).fit_transform(row)
    assert fd == pytest.approx(cf, rel=1e-5)
    assert bs == pytest.approx(cf, rel=0.01)
    assert SpectrumTransformer("landau", 2).fit_transform(row)[0] == pytest.approx([5, 17])


def test_params_roundtrip():
    est = SpectrumTransformer(method="oracle", n_levels=4)
    assert est.get_params() == {"method": "oracle", "n_levels": 4, "grid_points": 8000}
    assert clone(est).set_params(n_levels=2).n_levels == 2


def test_not_fitted():
    with pytest.raises(NotFittedError):
        SpectrumTransformer().transform(X)


@pytest.mark.parametrize("params", [{"method": "nope"}, {"n_levels": 0}, {"n_levels": 1.5}, {"grid_points": -3}])
def test_bad_params(params):
    with pytest.raises(ValidationError):
        SpectrumTransformer(**params).fit(X)


def test_in_pipeline():
    pipe = make_pipeline(SpectrumTransformer(n_levels=2), FunctionTransformer(np.diff))
    gaps = pipe.fit_transform(X[:1])
    assert gaps.ravel() == pytest.approx([2.0], abs=1e-9)


@pytest.mark.parametrize("bad", [
    [[1, 2]],
    [[-1, 0, 0]],
    [[1, 0.5, 0]],
    [[1, 0, np.nan]],
    np.zeros((0, 3)),
    [[[1, 2, 3]]],
])
def test_check_config_array_rejects(bad):
    with pytest.raises(ValidationError):
        check_config_array(bad)


def test_single_row_and_configs():
    assert check_config_array([1, 2, 3]).shape == (1, 3)
    cfgs = configs_from_array([[1, -2, 3], [0, 0, 0]])
    assert [c.m for c in cfgs] == [-2, 0]
    assert isinstance(cfgs[0].m, int)
