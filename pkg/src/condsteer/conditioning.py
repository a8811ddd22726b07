"""Von Neumann measurements on one qubit and the conditional states they leave behind."""
from __future__ import annotations

from dataclasses import dataclass
from math import cos, pi, sin

import numpy as np

from .errors import NumericalError, ValidationError
from .qmat import I2, SIGMA_X, SIGMA_Y, SIGMA_Z, DensityMatrix, embed, is_hermitian

#: Outcomes with smaller probability are treated as impossible.
ZERO_PROBABILITY = 1e-12


@dataclass(frozen=True)
class BlochDirection:
    """Measurement axis ``(sin t cos f, sin t sin f, cos t)``."""

    theta: float
    phi: float = 0.0

    @property
    def vector(self) -> np.ndarray:
        t, f = self.theta, self.phi
        return np.array([sin(t) * cos(f), sin(t) * sin(f), cos(t)])

    def observable(self) -> np.ndarray:
        x, y, z = self.vector
        return x * SIGMA_X + y * SIGMA_Y + z * SIGMA_Z

    @classmethod
    def named(cls, name: str) -> "BlochDirection":
        """``"x"``, ``"y"`` or ``"z"``."""
        try:
            return {"x": cls(pi / 2, 0.0), "y": cls(pi / 2, pi / 2), "z": cls(0.0, 0.0)}[name]
        except KeyError:
            raise ValidationError(f"unknown axis {name!r}") from None


def projector(direction: BlochDirection, outcome: int) -> np.ndarray:
    """``(I + outcome * n.sigma) / 2`` for outcome +1 (up) or -1 (down)."""
    if outcome not in (1, -1):
        raise ValidationError(f"outcome must be +1 or -1, got {outcome}")
    return (I2 + outcome * direction.observable()) / 2


def _check_rank_one_projector(proj: np.ndarray, atol: float = 1e-10) -> np.ndarray:
    proj = np.asarray(proj, dtype=complex)
    if proj.shape != (2, 2):
        raise ValidationError(f"projector must be 2x2, got shape {proj.shape}")
    if not is_hermitian(proj, atol) or np.max(np.abs(proj @ proj - proj)) > atol:
        raise ValidationError("measurement operator is not an orthogonal projector")
    if abs(np.trace(proj) - 1) > atol:
        raise ValidationError("measurement projector must have rank 1")
    return proj


@dataclass(frozen=True)
class ConditionalOutcome:
    """Normalized two-qubit state left after ``party`` measured, with its probability.

    ``remaining`` lists the unmeasured parties in tensor order.
    """

    state: DensityMatrix
    probability: float
    party: int
    outcome: int | None
    remaining: tuple[int, int]


def condition(
    rho: DensityMatrix, party: int, proj: np.ndarray, outcome: int | None = None
) -> ConditionalOutcome:
    """Project qubit ``party`` of a three-qubit state and trace it out.

    Raises ``NumericalError`` if the outcome probability is below 1e-12.
    """
    if rho.dims != (2, 2, 2):
        raise ValidationError(f"expected a three-qubit state, got dims {rho.dims}")
    if party not in (0, 1, 2):
        raise ValidationError("subsystem out of range")
    P = embed(_check_rank_one_projector(proj), party, rho.dims)
    projected = P @ rho.mat @ P
    prob = float(np.real(np.trace(projected)))
    if prob < ZERO_PROBABILITY:
        raise NumericalError("outcome has (near-)zero probability; conditional state undefined")
    t = projected.reshape((2,) * 6)
    reduced = np.trace(t, axis1=party, axis2=party + 3).reshape(4, 4) / prob
    # restore exact Hermiticity lost to round-off
    reduced = (reduced + reduced.conj().T) / 2
    remaining = tuple(i for i in range(3) if i != party)
    return ConditionalOutcome(DensityMatrix(reduced, (2, 2)), prob, party, outcome, remaining)


def measure(rho: DensityMatrix, party: int, direction: BlochDirection) -> list[ConditionalOutcome]:
    """Both outcomes (+1 then -1) along ``direction``; impossible outcomes are omitted."""
    results = []
    for outcome in (1, -1):
        try:
            results.append(condition(rho, party, projector(direction, outcome), outcome))
        except NumericalError:
            continue
    return results
