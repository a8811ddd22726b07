"""Global depolarization and per-qubit amplitude damping."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import sqrt

import numpy as np

from .errors import ValidationError
from .qmat import DensityMatrix, kron


def _check_rate(name: str, x: float) -> float:
    x = float(x)
    if not 0.0 <= x <= 1.0:
        raise ValidationError(f"{name} must lie in [0, 1], got {x}")
    return x


def _require_three_qubits(rho: DensityMatrix) -> None:
    if rho.dims != (2, 2, 2):
        raise ValidationError(f"expected a three-qubit state, got dims {rho.dims}")


def depolarize(rho: DensityMatrix, alpha: float) -> DensityMatrix:
    """``alpha * rho + (1 - alpha) I/d`` -- alpha is the visibility."""
    _require_three_qubits(rho)
    alpha = _check_rate("alpha", alpha)
    d = rho.dim
    return DensityMatrix(alpha * rho.mat + (1 - alpha) * np.eye(d) / d, rho.dims)


@dataclass(frozen=True, eq=False)
class KrausPair:
    F0: np.ndarray
    F1: np.ndarray

    def __iter__(self):
        yield self.F0
        yield self.F1

    def completeness_error(self) -> float:
        s = self.F0.conj().T @ self.F0 + self.F1.conj().T @ self.F1
        return float(np.max(np.abs(s - np.eye(2))))


def amp_damp_kraus(gamma: float) -> KrausPair:
    """Amplitude-damping Kraus operators; ``F1`` sends |1> to |0> with amplitude sqrt(gamma)."""
    gamma = _check_rate("gamma", gamma)
    F0 = np.array([[1, 0], [0, sqrt(1 - gamma)]], dtype=complex)
    F1 = np.array([[0, sqrt(gamma)], [0, 0]], dtype=complex)
    return KrausPair(F0, F1)


def amp_damp_all(rho: DensityMatrix, gamma: float) -> DensityMatrix:
    """Damp each of the three qubits independently with the same ``gamma``.

    Sums ``K rho K^dagger`` over all eight products ``K = F_i ⊗ F_j ⊗ F_k``.
    The retained visibility is ``nu = 1 - gamma``.
    """
    _require_three_qubits(rho)
    kraus = amp_damp_kraus(gamma)
    out = np.zeros_like(rho.mat)
    for ops in itertools.product(kraus, repeat=3):
        K = kron(*ops)
        out += K @ rho.mat @ K.conj().T
    return DensityMatrix(out, rho.dims)
