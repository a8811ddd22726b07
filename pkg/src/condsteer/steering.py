"""Two-qubit detection criteria: correlation tensor, S1, canonical form, S2, Horodecki CHSH."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import pi, sqrt

import numpy as np

from .errors import ValidationError
from .qmat import PAULIS, DensityMatrix, frobenius_norm, kron, spectral_norm

CYCLIC_PERMUTATIONS = ((0, 1, 2), (1, 2, 0), (2, 0, 1))
ALL_PERMUTATIONS = tuple(itertools.permutations(range(3)))

#: Radicands below ``-RADICAND_TOL`` are clamped *and* flagged; smaller dips are round-off.
RADICAND_TOL = 1e-12

_PAULI_PRODUCTS = np.array([[kron(PAULIS[i], PAULIS[j]) for j in range(4)] for i in range(4)])


@dataclass(frozen=True, eq=False)
class PauliTensor:
    """Local Bloch vectors and 3x3 correlation block of a two-qubit state.

    ``a`` belongs to the steering (untrusted) party, ``b`` to the trusted one,
    and ``T[i, j] = <sigma_i ⊗ sigma_j>`` with the steering party on the left.
    """

    a: np.ndarray
    b: np.ndarray
    T: np.ndarray

    def swapped(self) -> "PauliTensor":
        """Same state with the roles of the two parties exchanged."""
        return PauliTensor(self.b.copy(), self.a.copy(), self.T.T.copy())

    def full(self) -> np.ndarray:
        """The 4x4 array ``t_{ij}`` including ``t_00 = 1``."""
        t = np.empty((4, 4))
        t[0, 0] = 1.0
        t[1:, 0] = self.a
        t[0, 1:] = self.b
        t[1:, 1:] = self.T
        return t


def pauli_tensor(rho: DensityMatrix, steerer: int = 0) -> PauliTensor:
    """Pauli expectations ``Tr[rho sigma_i ⊗ sigma_j]`` of a two-qubit state.

    ``steerer`` (0 or 1) selects which qubit plays the steering party.
    """
    if rho.dims != (2, 2):
        raise ValidationError(f"expected a two-qubit state, got dims {rho.dims}")
    if steerer not in (0, 1):
        raise ValidationError("steerer must be 0 or 1")
    # Tr[rho P] = sum(rho * P^T) elementwise
    t = np.einsum("kl,ijlk->ij", rho.mat, _PAULI_PRODUCTS)
    if np.max(np.abs(t.imag)) > 1e-10:
        raise ValidationError("correlation tensor has a non-negligible imaginary part")
    t = t.real
    pt = PauliTensor(t[1:, 0].copy(), t[0, 1:].copy(), t[1:, 1:].copy())
    return pt.swapped() if steerer == 1 else pt


def s1(pt: PauliTensor) -> float:
    """``||T||_inf - (2/3) ||T||_HS^2``; negative values certify steering."""
    return spectral_norm(pt.T) - 2.0 / 3.0 * frobenius_norm(pt.T) ** 2


@dataclass(frozen=True, eq=False)
class CanonicalForm:
    """``O_A T O_B^T = diag(Tdiag)`` with proper rotations; ``A = O_A a``, ``B = O_B b``."""

    Tdiag: np.ndarray
    A: np.ndarray
    B: np.ndarray
    O_A: np.ndarray
    O_B: np.ndarray


def canonical_form(pt: PauliTensor) -> CanonicalForm:
    """Diagonalize the correlation block by local proper rotations.

    Singular values come out in descending magnitude. A reflection needed to
    make either rotation proper flips the sign of the smallest one.
    """
    U, s, Vt = np.linalg.svd(pt.T)
    V = Vt.T
    s = s.copy()
    # deterministic signs: largest entry of each left singular vector positive
    for j in range(3):
        if U[np.argmax(np.abs(U[:, j])), j] < 0:
            U[:, j] *= -1
            V[:, j] *= -1
    if np.linalg.det(U) < 0:
        U[:, 2] *= -1
        s[2] *= -1
    if np.linalg.det(V) < 0:
        V[:, 2] *= -1
        s[2] *= -1
    O_A, O_B = U.T, V.T
    return CanonicalForm(s, O_A @ pt.a, O_B @ pt.b, O_A, O_B)


@dataclass(frozen=True)
class S2Result:
    value: float
    terms: tuple[float, ...]
    clamped: bool


def _h(cf: CanonicalForm, i: int, j: int, k: int) -> tuple[float, bool]:
    D, A, B = cf.Tdiag, cf.A, cf.B
    r_plus = (1 + A[k]) ** 2 - (D[k] + B[k]) ** 2
    r_minus = (1 - A[k]) ** 2 - (D[k] - B[k]) ** 2
    clamped = min(r_plus, r_minus) < -RADICAND_TOL
    root = sqrt(max(r_plus, 0.0)) + sqrt(max(r_minus, 0.0))
    return abs(D[i]) + abs(D[j]) - 2.0 / pi * root, clamped


def evaluate_s2(cf: CanonicalForm, all_permutations: bool = False) -> S2Result:
    """S2 with the individual ``h`` terms and whether any radicand had to be clamped."""
    perms = ALL_PERMUTATIONS if all_permutations else CYCLIC_PERMUTATIONS
    results = [_h(cf, *perm) for perm in perms]
    terms = tuple(float(v) for v, _ in results)
    return S2Result(max(terms), terms, any(c for _, c in results))


def s2(cf: CanonicalForm, all_permutations: bool = False) -> float:
    """Nonlinear steering measure; positive values certify steering."""
    return evaluate_s2(cf, all_permutations).value


def horodecki_M(pt: PauliTensor) -> float:
    """Sum of the two largest eigenvalues of ``T^T T``; above 1 iff CHSH is violated."""
    ev = np.linalg.eigvalsh(pt.T.T @ pt.T)
    return float(ev[-1] + ev[-2])


@dataclass(frozen=True)
class SteeringReport:
    s1: float
    s2: float
    horodecki_M: float
    steerer: int
    s2_clamped: bool = False

    @property
    def trusted(self) -> int:
        return 1 - self.steerer

    @property
    def s1_detects(self) -> bool:
        return self.s1 < 0

    @property
    def s2_detects(self) -> bool:
        return self.s2 > 0

    @property
    def chsh_nonlocal(self) -> bool:
        return self.horodecki_M > 1

    @property
    def steerable(self) -> bool:
        return self.s1_detects or self.s2_detects


def steering_report(rho: DensityMatrix, steerer: int = 0, all_permutations: bool = False) -> SteeringReport:
    """All criteria for steering from qubit ``steerer`` to the other qubit."""
    pt = pauli_tensor(rho, steerer)
    res = evaluate_s2(canonical_form(pt), all_permutations)
    return SteeringReport(s1(pt), res.value, horodecki_M(pt), steerer, res.clamped)
