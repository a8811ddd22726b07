"""Input validation for the estimator API."""
from __future__ import annotations

import numpy as np

from .errors import ValidationError
from .qmat import DensityMatrix


def check_states(X, dims: tuple[int, ...]) -> list[DensityMatrix]:
    """Coerce ``X`` into a list of validated density matrices with subsystem ``dims``.

    Accepts a single ``DensityMatrix`` or ``(d, d)`` array, a sequence of either,
    or an ``(n, d, d)`` array.
    """
    d = int(np.prod(dims))
    if isinstance(X, DensityMatrix):
        X = [X]
    elif isinstance(X, np.ndarray) and X.ndim == 2:
        X = [X]
    elif isinstance(X, np.ndarray) and X.ndim != 3:
        raise ValidationError(f"expected an array of shape (n, {d}, {d}), got {X.shape}")
    states = []
    for i, x in enumerate(X):
        if isinstance(x, DensityMatrix):
            if x.dims != tuple(dims):
                raise ValidationError(f"state {i} has dims {x.dims}, expected {tuple(dims)}")
            states.append(x)
            continue
        arr = np.asarray(x)
        if arr.shape != (d, d):
            raise ValidationError(f"state {i} has shape {arr.shape}, expected ({d}, {d})")
        if not np.all(np.isfinite(arr)):
            raise ValidationError(f"state {i} contains NaN or infinite entries")
        try:
            states.append(DensityMatrix(arr, dims))
        except ValidationError as exc:
            raise ValidationError(f"state {i}: {exc}") from None
    if not states:
        raise ValidationError("no states given")
    return states
