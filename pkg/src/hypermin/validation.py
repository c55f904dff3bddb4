"""Argument checks shared by the estimators and the command line."""

from __future__ import annotations

import math
import numbers

import numpy as np
from sklearn.utils.validation import check_array

from .errors import DomainError, UsageError


def check_incidence(X, *, name: str = "X", allow_empty: bool = False) -> np.ndarray:
    """Return ``X`` as a 2-D boolean incidence matrix, rejecting non-0/1 entries."""
    arr = check_array(
        X,
        dtype=None,
        ensure_2d=True,
        ensure_min_samples=0 if allow_empty else 1,
        input_name=name,
    )
    if arr.dtype == bool:
        return arr
    if not np.isin(arr, (0, 1)).all():
        raise UsageError(f"{name} must contain only 0/1 entries")
    return arr.astype(bool)


def check_probability(p, *, name: str = "p", open_interval: bool = False) -> float:
    if isinstance(p, bool) or not isinstance(p, numbers.Real):
        raise UsageError(f"{name} must be a real number, got {p!r}")
    p = float(p)
    if math.isnan(p) or not 0.0 <= p <= 1.0:
        raise DomainError(f"{name} must lie in [0, 1], got {p}")
    if open_interval and p in (0.0, 1.0):
        raise DomainError(f"{name} must lie strictly between 0 and 1, got {p}")
    return p


def check_positive_int(v, *, name: str, minimum: int = 1) -> int:
    if isinstance(v, bool) or not isinstance(v, numbers.Integral):
        raise UsageError(f"{name} must be an integer, got {v!r}")
    if v < minimum:
        raise UsageError(f"{name} must be >= {minimum}, got {v}")
    return int(v)


def check_margin(v, *, name: str) -> float:
    if isinstance(v, bool) or not isinstance(v, numbers.Real) or not v > 0:
        raise DomainError(f"{name} must be a positive real, got {v!r}")
    return float(v)
