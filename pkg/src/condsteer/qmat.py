"""Dense linear algebra for small (2-8 dimensional) quantum systems.

Matrices are plain complex ``numpy`` arrays. Subsystem index 0 is the
leftmost tensor factor, matching the ket ordering ``|abc>``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Sequence

import numpy as np

from .errors import ValidationError

#: Validation tolerance for Hermiticity, unit trace and positivity.
STATE_ATOL = 1e-9

I2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (I2, SIGMA_X, SIGMA_Y, SIGMA_Z)


def kron(*mats: np.ndarray) -> np.ndarray:
    """Kronecker product of any number of matrices, left to right."""
    if not mats:
        raise ValidationError("kron needs at least one matrix")
    return reduce(np.kron, (np.asarray(m) for m in mats))


def _as_square(m) -> np.ndarray:
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValidationError(f"expected a square matrix, got shape {m.shape}")
    return m


def is_hermitian(m: np.ndarray, atol: float = STATE_ATOL) -> bool:
    m = np.asarray(m)
    return m.ndim == 2 and m.shape[0] == m.shape[1] and bool(
        np.max(np.abs(m - m.conj().T), initial=0.0) <= atol
    )


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, positive semidefinite, unit-trace matrix with subsystem dimensions.

    The matrix is copied and made read-only on construction, so instances are
    safe to share between workers.
    """

    mat: np.ndarray
    dims: tuple[int, ...]

    def __post_init__(self):
        mat = np.array(self.mat, dtype=complex)
        dims = tuple(int(d) for d in self.dims)
        if not dims or any(d < 1 for d in dims):
            raise ValidationError(f"invalid subsystem dimensions {dims}")
        d = int(np.prod(dims))
        if mat.shape != (d, d):
            raise ValidationError(
                f"matrix shape {mat.shape} does not match dims {dims} (expected {d}x{d})"
            )
        if not is_hermitian(mat):
            raise ValidationError("density matrix is not Hermitian")
        tr = np.trace(mat)
        if abs(tr - 1) > STATE_ATOL:
            raise ValidationError(f"density matrix trace is {tr.real:.12g}, expected 1")
        lo = np.linalg.eigvalsh(mat)[0]
        if lo < -STATE_ATOL:
            raise ValidationError(
                f"density matrix is not positive semidefinite (min eigenvalue {lo:.3g})"
            )
        mat.setflags(write=False)
        object.__setattr__(self, "mat", mat)
        object.__setattr__(self, "dims", dims)

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    @property
    def n_subsystems(self) -> int:
        return len(self.dims)

    def purity(self) -> float:
        return float(np.real(np.trace(self.mat @ self.mat)))

    def __array__(self, dtype=None, copy=None):
        return np.array(self.mat, dtype=dtype)

    def __repr__(self):
        return f"DensityMatrix(dims={self.dims})"


def _check_indices(indices: Iterable[int], n: int) -> list[int]:
    out = sorted(set(int(i) for i in indices))
    if any(i < 0 or i >= n for i in out):
        raise ValidationError("subsystem out of range")
    return out


def partial_trace(rho: DensityMatrix, keep: Iterable[int]) -> DensityMatrix:
    """Reduce ``rho`` to the subsystems listed in ``keep`` (order of ``keep`` is ignored)."""
    n = rho.n_subsystems
    keep = _check_indices(keep, n)
    if not keep:
        raise ValidationError("keep must name at least one subsystem")
    dims = rho.dims
    t = rho.mat.reshape(dims + dims)
    # trace out from the highest index down so axis numbers stay valid
    traced = [i for i in range(n) if i not in keep]
    m = n
    for i in reversed(traced):
        t = np.trace(t, axis1=i, axis2=i + m)
        m -= 1
    kept_dims = tuple(dims[i] for i in keep)
    d = int(np.prod(kept_dims))
    return DensityMatrix(t.reshape(d, d), kept_dims)


def partial_transpose(rho: DensityMatrix, subsystem) -> np.ndarray:
    """Transpose the block ``subsystem`` (an index or a set of indices).

    The block and its complement must both be nonempty, i.e. define a binary cut.
    """
    n = rho.n_subsystems
    block = [subsystem] if np.isscalar(subsystem) else list(subsystem)
    block = _check_indices(block, n)
    if not block or len(block) == n:
        raise ValidationError("partial transpose needs a binary cut into two nonempty blocks")
    dims = rho.dims
    t = rho.mat.reshape(dims + dims)
    axes = list(range(2 * n))
    for i in block:
        axes[i], axes[i + n] = axes[i + n], axes[i]
    return t.transpose(axes).reshape(rho.dim, rho.dim)


def eig_hermitian(m) -> np.ndarray:
    """Ascending real eigenvalues of a Hermitian matrix."""
    m = _as_square(m)
    if not is_hermitian(m):
        raise ValidationError("matrix is not Hermitian")
    return np.linalg.eigvalsh(m)


def trace_norm(m) -> float:
    """Sum of singular values."""
    m = _as_square(m)
    if m.size == 0:
        return 0.0
    return float(np.sum(np.linalg.svd(m, compute_uv=False)))


def spectral_norm(m) -> float:
    m = np.atleast_2d(np.asarray(m))
    if m.size == 0:
        return 0.0
    return float(np.linalg.svd(m, compute_uv=False)[0])


def frobenius_norm(m) -> float:
    return float(np.sqrt(np.sum(np.abs(np.asarray(m)) ** 2)))


def embed(op: np.ndarray, position: int, dims: Sequence[int]) -> np.ndarray:
    """``I ⊗ ... ⊗ op ⊗ ... ⊗ I`` with ``op`` acting on subsystem ``position``."""
    if not 0 <= position < len(dims):
        raise ValidationError("subsystem out of range")
    factors = [np.eye(d, dtype=complex) for d in dims]
    factors[position] = np.asarray(op, dtype=complex)
    return kron(*factors)


def projector_from_ket(ket) -> np.ndarray:
    v = np.asarray(ket, dtype=complex).reshape(-1)
    v = v / np.linalg.norm(v)
    return np.outer(v, v.conj())
