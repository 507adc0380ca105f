"""Input checks shared by the estimators and the command line."""

from __future__ import annotations

import numpy as np
from sklearn.utils.validation import check_array

from ._errors import DomainError
from .grid import Trajectory


def check_series(times, values) -> Trajectory:
    """Validate an observed series and return it as a :class:`Trajectory`.

    ``times`` may be 1-d or a single column.
    """
    t = check_array(times, ensure_2d=False, dtype=float)
    if t.ndim == 2:
        if t.shape[1] != 1:
            raise DomainError(f"times must be a single column, got shape {t.shape}")
        t = t[:, 0]
    v = check_array(values, ensure_2d=False, dtype=float).reshape(-1)
    if v.shape != t.shape:
        raise DomainError(f"got {t.size} times but {v.size} values")
    return Trajectory(t, v)


def check_level_pairs(X) -> np.ndarray:
    X = check_array(X, dtype=float)
    if X.shape[1] != 2:
        raise DomainError(f"expected columns (L, K), got {X.shape[1]} columns")
    return X
