"""JSON state files: ``{"dims": [...], "re": [[...]], "im": [[...]]}``, row-major."""
from __future__ import annotations

import json

import numpy as np

from .errors import ValidationError
from .qmat import DensityMatrix


def state_to_dict(rho: DensityMatrix) -> dict:
    return {"dims": list(rho.dims), "re": rho.mat.real.tolist(), "im": rho.mat.imag.tolist()}


def state_from_dict(doc) -> DensityMatrix:
    if not isinstance(doc, dict) or not {"dims", "re"} <= set(doc):
        raise ValidationError("state file must be a JSON object with keys 'dims', 're' and optionally 'im'")
    try:
        re = np.asarray(doc["re"], dtype=float)
        im = np.asarray(doc.get("im", np.zeros_like(re)), dtype=float)
    except (TypeError, ValueError):
        raise ValidationError("state file entries must be numeric arrays") from None
    if re.shape != im.shape:
        raise ValidationError(f"'re' shape {re.shape} differs from 'im' shape {im.shape}")
    return DensityMatrix(re + 1j * im, tuple(doc["dims"]))


def load_state(path) -> DensityMatrix:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ValidationError(f"cannot read state file {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ValidationError(f"state file {path} is not valid JSON: {exc}") from None
    return state_from_dict(doc)


def save_state(rho: DensityMatrix, path) -> None:
    with open(path, "w") as fh:
        json.dump(state_to_dict(rho), fh)
