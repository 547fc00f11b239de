"""Input validation helpers shared by the estimator-facing API."""

import numpy as np

from .exceptions import EmptySampleError, SampleValidationError


def check_sample(X, *, min_samples=2):
    """Validate and canonicalize a sample matrix.

    Accepts anything array-like; a 1-d array is treated as n points in one
    dimension. Returns a C-contiguous float64 array of shape (n, d).

    Raises
    ------
    SampleValidationError
        If the array is ragged, empty along the feature axis, or contains
        non-finite values.
    EmptySampleError
        If fewer than ``min_samples`` points are present.
    """
    try:
        X = np.asarray(X, dtype=np.float64)
    except (TypeError, ValueError) as exc:
        raise SampleValidationError(f"sample is not numeric: {exc}") from None
    if X.ndim == 1:
        X = X.reshape(-1, 1)
    if X.ndim != 2:
        raise SampleValidationError(
            f"sample must be a 2-d (n_points, n_dims) matrix, got ndim={X.ndim}"
        )
    if X.shape[1] < 1:
        raise SampleValidationError("sample must have at least one coordinate")
    if X.shape[0] < min_samples:
        raise EmptySampleError(
            f"need at least {min_samples} points, got {X.shape[0]}"
        )
    if not np.isfinite(X).all():
        bad = np.argwhere(~np.isfinite(X))[0]
        raise SampleValidationError(
            f"sample contains a non-finite value at row {bad[0]}, column {bad[1]}"
        )
    return np.ascontiguousarray(X)


def check_engine(engine):
    """Validate the nearest-neighbor engine name."""
    if engine not in ("tree", "brute"):
        raise ValueError(f"engine must be 'tree' or 'brute', got {engine!r}")
    return engine
