"""Input checks shared by the estimator layer."""

import math
import numbers

import numpy as np
from sklearn.utils.validation import check_array

from . import maps
from .exceptions import DomainError, UsageError


def check_nonnegative_int(value, name, upper=None):
    if isinstance(value, bool) or not isinstance(value, numbers.Integral) or value < 0:
        raise UsageError(f"{name} must be a nonnegative integer, got {value!r}")
    if upper is not None and value > upper:
        raise UsageError(f"{name} must be at most {upper}, got {value}")
    return int(value)


def check_positive_int(value, name):
    if isinstance(value, bool) or not isinstance(value, numbers.Integral) or value < 1:
        raise UsageError(f"{name} must be a positive integer, got {value!r}")
    return int(value)


def check_positive_finite(value, name):
    if isinstance(value, bool) or not isinstance(value, numbers.Real) or not (math.isfinite(value) and value > 0):
        raise UsageError(f"{name} must be a positive finite number, got {value!r}")
    return float(value)


def check_map(value):
    """Accept a :class:`~sincderiv.maps.MapId` or a string such as ``'IMP2'``."""
    if isinstance(value, maps.MapSpec):
        return value.id
    if isinstance(value, (maps.MapId, str)):
        return maps.MapId.parse(value)
    raise UsageError(f"map must be a MapId or a string, got {type(value).__name__}")


def check_points(X, map_id):
    """Evaluation points as a 1-d float array strictly inside the map's interval.

    ``X`` may be 1-d or a single-column 2-d array.
    """
    X = check_array(X, ensure_2d=False, dtype=np.float64, ensure_all_finite=True)
    if X.ndim == 2:
        if X.shape[1] != 1:
            raise UsageError(f"expected a single column of points, got shape {X.shape}")
        X = X[:, 0]
    elif X.ndim != 1:
        raise UsageError(f"expected 1-d points, got shape {X.shape}")
    a, b = map_id.interval
    bad = ~((X > a) & (X < b))
    if bad.any():
        value = float(X[bad][0])
        raise DomainError(f"t = {value!r} is not inside the open interval ({a}, {b})", value=value)
    return X
