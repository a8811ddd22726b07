"""Three-qubit state families: GHZ, noisy GHZ, GHZ-symmetric, |psi>, biseparable."""
from __future__ import annotations

from dataclasses import dataclass
from math import sqrt

import numpy as np

from .errors import ValidationError
from .qmat import DensityMatrix, projector_from_ket

#: Slack on parameter constraints so rounded boundary values are accepted.
CONSTRAINT_SLACK = 1e-12

THREE_QUBITS = (2, 2, 2)

SQRT3 = sqrt(3.0)
Q_MIN = -1.0 / (4.0 * SQRT3)
Q_MAX = SQRT3 / 4.0


def _basis_ket(*amps: tuple[str, complex]) -> np.ndarray:
    v = np.zeros(8, dtype=complex)
    for bits, amp in amps:
        v[int(bits, 2)] += amp
    return v


def _check_unit_interval(name: str, x: float) -> float:
    x = float(x)
    if not (-CONSTRAINT_SLACK <= x <= 1 + CONSTRAINT_SLACK):
        raise ValidationError(f"{name} must lie in [0, 1], got {x}")
    return min(max(x, 0.0), 1.0)


def maximally_mixed(dims=THREE_QUBITS) -> DensityMatrix:
    d = int(np.prod(dims))
    return DensityMatrix(np.eye(d) / d, dims)


def ghz_plus() -> DensityMatrix:
    """Projector onto (|000> + |111>)/sqrt(2)."""
    return DensityMatrix(projector_from_ket(_basis_ket(("000", 1), ("111", 1))), THREE_QUBITS)


def ghz_minus() -> DensityMatrix:
    """Projector onto (|000> - |111>)/sqrt(2)."""
    return DensityMatrix(projector_from_ket(_basis_ket(("000", 1), ("111", -1))), THREE_QUBITS)


def noisy_ghz(p: float) -> DensityMatrix:
    """``p |GHZ+><GHZ+| + (1 - p) I/8``."""
    p = _check_unit_interval("p_G", p)
    return DensityMatrix(p * ghz_plus().mat + (1 - p) * np.eye(8) / 8, THREE_QUBITS)


@dataclass(frozen=True)
class GhzSymmetricParams:
    """Coordinates (p, q) of the GHZ-symmetric family.

    Positivity of the state restricts ``-1/(4 sqrt3) <= q <= sqrt3/4`` and
    ``|p| <= 1/8 + (sqrt3/2) q``; both are checked on construction.
    """

    p: float
    q: float

    def __post_init__(self):
        p, q = float(self.p), float(self.q)
        if not (Q_MIN - CONSTRAINT_SLACK <= q <= Q_MAX + CONSTRAINT_SLACK):
            raise ValidationError(
                f"q = {q} violates -1/(4*sqrt(3)) <= q <= sqrt(3)/4 "
                f"(i.e. {Q_MIN:.6f} <= q <= {Q_MAX:.6f})"
            )
        bound = 0.125 + SQRT3 / 2 * q
        if abs(p) > bound + CONSTRAINT_SLACK:
            raise ValidationError(
                f"(p, q) = ({p}, {q}) violates |p| <= 1/8 + (sqrt(3)/2)*q (bound {bound:.6f})"
            )
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    @property
    def weights(self) -> tuple[float, float, float]:
        """Weights of |GHZ+><GHZ+|, |GHZ-><GHZ-| and I/8."""
        w = 2 * self.q / SQRT3
        return w + self.p, w - self.p, 1 - 4 * self.q / SQRT3


def is_valid_ghz_symmetric(p: float, q: float) -> bool:
    try:
        GhzSymmetricParams(p, q)
    except ValidationError:
        return False
    return True


def ghz_symmetric(p, q: float | None = None) -> DensityMatrix:
    """GHZ-symmetric state; accepts ``GhzSymmetricParams`` or the pair ``p, q``."""
    params = p if isinstance(p, GhzSymmetricParams) else GhzSymmetricParams(p, q)
    w_plus, w_minus, w_mixed = params.weights
    mat = w_plus * ghz_plus().mat + w_minus * ghz_minus().mat + w_mixed * np.eye(8) / 8
    return DensityMatrix(mat, THREE_QUBITS)


LAMBDA_CONVENTIONS = ("sqrt", "affine")


@dataclass(frozen=True)
class PsiParams:
    """Normalized amplitudes of ``l0|000> + l1|101> + l2|110>``.

    ``convention="sqrt"`` fixes ``l0 = +sqrt(1 - l1^2 - l2^2)`` and keeps l1, l2.
    ``convention="affine"`` sets ``l0 = 1 - l1 - l2`` and rescales the whole
    vector to unit norm, so the stored l1, l2 may differ from the inputs.
    """

    lam0: float
    lam1: float
    lam2: float

    @classmethod
    def from_amplitudes(cls, lam1: float, lam2: float, convention: str = "sqrt") -> "PsiParams":
        lam1, lam2 = float(lam1), float(lam2)
        if convention == "sqrt":
            rest = 1.0 - lam1**2 - lam2**2
            if rest < -CONSTRAINT_SLACK:
                raise ValidationError(
                    f"amplitudes unnormalizable under sqrt convention: "
                    f"lambda1^2 + lambda2^2 = {lam1**2 + lam2**2:.6g} > 1"
                )
            return cls(sqrt(max(rest, 0.0)), lam1, lam2)
        if convention == "affine":
            v = np.array([1.0 - lam1 - lam2, lam1, lam2])
            n = np.linalg.norm(v)
            if n < CONSTRAINT_SLACK:
                raise ValidationError("amplitudes unnormalizable under affine convention: zero vector")
            v /= n
            return cls(*map(float, v))
        raise ValidationError(f"unknown lambda convention {convention!r}; use one of {LAMBDA_CONVENTIONS}")

    def __post_init__(self):
        norm2 = self.lam0**2 + self.lam1**2 + self.lam2**2
        if abs(norm2 - 1) > 1e-12:
            raise ValidationError(f"amplitudes are not normalized (sum of squares {norm2:.15g})")

    def ket(self) -> np.ndarray:
        return _basis_ket(("000", self.lam0), ("101", self.lam1), ("110", self.lam2))


def psi_pure(lam1, lam2: float | None = None, convention: str = "sqrt") -> DensityMatrix:
    """Projector onto ``l0|000> + l1|101> + l2|110>``."""
    params = lam1 if isinstance(lam1, PsiParams) else PsiParams.from_amplitudes(lam1, lam2, convention)
    ket = params.ket()
    return DensityMatrix(np.outer(ket, ket.conj()), THREE_QUBITS)


def biseparable(p: float) -> DensityMatrix:
    """``p |Phi+>|+> <..| + (1 - p) I/8``: AB share |Phi+>, C is in |+>."""
    p = _check_unit_interval("p_B", p)
    phi_plus = np.array([1, 0, 0, 1], dtype=complex) / sqrt(2)
    plus = np.array([1, 1], dtype=complex) / sqrt(2)
    pure = projector_from_ket(np.kron(phi_plus, plus))
    return DensityMatrix(p * pure + (1 - p) * np.eye(8) / 8, THREE_QUBITS)
