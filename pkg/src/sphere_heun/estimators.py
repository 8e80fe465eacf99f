"""scikit-learn style wrapper: map rows ``[S, m, coulomb]`` to their lowest energy levels."""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .classical import bohr_sommerfeld_level
from .exceptions import ValidationError
from .limits import landau_level
from .oracle import oracle_spectrum
from .spectrum import spectrum
from .validation import check_config_array, check_positive_int, configs_from_array

__all__ = ["SpectrumTransformer", "METHODS"]

METHODS = ("cf", "oracle", "bohr_sommerfeld", "landau")


class SpectrumTransformer(TransformerMixin, BaseEstimator):
    """Lowest ``n_levels`` energies for each problem instance.

    Parameters
    ----------
    method : {"cf", "oracle", "bohr_sommerfeld", "landau"}
        Continued-fraction solver, finite-difference oracle, semiclassical
        quantization, or the Coulomb-free Landau formula (which ignores the
        third column).
    n_levels : int
        Number of levels per row; output has shape (n_samples, n_levels).
    grid_points : int
        Grid size for ``method="oracle"``.

    Examples
    --------
    >>> SpectrumTransformer(n_levels=3).fit_transform([[0, 0, 0]]).round(6)
    array([[0., 2., 6.]])
    """

    def __init__(self, method="cf", n_levels=1, grid_points=8000):
        self.method = method
        self.n_levels = n_levels
        self.grid_points = grid_points

    def _check_params(self):
        if self.method not in METHODS:
            raise ValidationError(f"method must be one of {METHODS}, got {self.method!r}")
        check_positive_int("n_levels", self.n_levels)
        check_positive_int("grid_points", self.grid_points)

    def fit(self, X, y=None):
        self._check_params()
        X = check_config_array(X)
        self.n_features_in_ = X.shape[1]
        return self

    def _levels(self, cfg):
        k = self.n_levels
        if self.method == "cf":
            return [lv.epsilon for lv in spectrum(cfg, k)]
        if self.method == "oracle":
            return oracle_spectrum(cfg, k, self.grid_points)
        if self.method == "bohr_sommerfeld":
            return [bohr_sommerfeld_level(cfg, n) for n in range(k)]
        return [landau_level(cfg.S, cfg.m, n) for n in range(k)]

    def transform(self, X):
        check_is_fitted(self, "n_features_in_")
        self._check_params()
        return np.array([self._levels(cfg) for cfg in configs_from_array(X)], dtype=float)
