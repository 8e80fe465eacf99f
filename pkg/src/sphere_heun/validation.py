"""Input checks shared by the estimator and the command line."""
from __future__ import annotations

import numpy as np

from .exceptions import ValidationError
from .params import PhysicalConfig, make_config

__all__ = ["check_config_array", "configs_from_array", "check_positive_int"]


def check_positive_int(name, value):
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)) or value < 1:
        raise ValidationError(f"{name} must be a positive integer, got {value!r}")
    return int(value)


def check_config_array(X) -> np.ndarray:
    """Coerce ``X`` to a float array of shape (n_samples, 3) holding rows ``[S, m, coulomb]``.

    A single row may be passed as a flat sequence of length 3.
    """
    arr = np.asarray(X, dtype=float)
    if arr.ndim == 1 and arr.shape[0] == 3:
        arr = arr[None, :]
    if arr.ndim != 2 or arr.shape[1] != 3:
        raise ValidationError(f"expected shape (n_samples, 3), got {arr.shape}")
    if arr.shape[0] == 0:
        raise ValidationError("need at least one sample")
    if not np.all(np.isfinite(arr)):
        raise ValidationError("input contains NaN or infinity")
    if np.any(arr[:, 0] < 0) or np.any(arr[:, 2] < 0):
        raise ValidationError("S and coulomb must be non-negative")
    if np.any(arr[:, 1] != np.round(arr[:, 1])):
        raise ValidationError("m must be integral")
    return arr


def configs_from_array(X) -> list[PhysicalConfig]:
    return [make_config(S, int(m), c) for S, m, c in check_config_array(X)]
