"""Small input checks shared across modules."""
from __future__ import annotations

import math

import numpy as np
from sklearn.utils.validation import check_array


def check_positive(name: str, value) -> float:
    value = float(value)
    if not (math.isfinite(value) and value > 0):
        raise ValueError(f"{name} must be a finite positive number, got {value!r}")
    return value


def check_finite(name: str, value) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value!r}")
    return value


def check_count(name: str, value, minimum: int = 1) -> int:
    if isinstance(value, bool) or int(value) != value or value < minimum:
        raise ValueError(f"{name} must be an integer >= {minimum}, got {value!r}")
    return int(value)


def check_param_matrix(X, n_features: int) -> np.ndarray:
    """Validate a 2-D float array with exactly ``n_features`` columns."""
    X = check_array(X, dtype=np.float64, ensure_2d=True)
    if X.shape[1] != n_features:
        raise ValueError(f"expected {n_features} columns, got {X.shape[1]}")
    return X
