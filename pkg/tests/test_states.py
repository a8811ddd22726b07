import itertools
from math import sqrt

import numpy as np
import pytest

from condsteer import (
    GhzSymmetricParams,
    PsiParams,
    ValidationError,
    biseparable,
    ghz_minus,
    ghz_plus,
    ghz_symmetric,
    noisy_ghz,
    partial_trace,
    psi_pure,
)
from condsteer.states import Q_MAX, Q_MIN, is_valid_ghz_symmetric
from condsteer.tripartite import Cut, negativity


def permute_qubits(mat, perm):
    return mat.reshape((2,) * 6).transpose(*perm, *(p + 3 for p in perm)).reshape(8, 8)


def ghz_symmetric_grid(step=0.05):
    for p in np.arange(-0.5, 0.5001, step):
        for q in np.arange(Q_MIN, Q_MAX + 1e-12, step):
            if is_valid_ghz_symmetric(p, q):
                yield float(p), float(q)


class TestGhz:
    def test_entries(self):
        m = ghz_plus().mat
        expected = np.zeros((8, 8))
        expected[np.ix_([0, 7], [0, 7])] = 0.5
        np.testing.assert_allclose(m, expected)

    def test_orthogonal(self):
        assert abs(np.trace(ghz_plus().mat @ ghz_minus().mat)) < 1e-15

    def test_pure(self):
        assert ghz_plus().purity() == pytest.approx(1)
        assert ghz_minus().purity() == pytest.approx(1)


class TestNoisyGhz:
    def test_endpoints(self):
        np.testing.assert_allclose(noisy_ghz(0).mat, np.eye(8) / 8)
        np.testing.assert_allclose(noisy_ghz(1).mat, ghz_plus().mat)

    def test_half(self):
        assert noisy_ghz(0.5).mat[0, 7] == pytest.approx(0.25)

    @pytest.mark.parametrize("p", [-0.1, 1.1])
    def test_out_of_range(self, p):
        with pytest.raises(ValidationError):
            noisy_ghz(p)


class TestGhzSymmetric:
    def test_origin_is_maximally_mixed(self):
        np.testing.assert_allclose(ghz_symmetric(0, 0).mat, np.eye(8) / 8)

    def test_corner_is_ghz(self):
        np.testing.assert_allclose(ghz_symmetric(0.5, sqrt(3) / 4).mat, ghz_plus().mat, atol=1e-12)

    def test_accepts_params_object(self):
        np.testing.assert_allclose(ghz_symmetric(GhzSymmetricParams(0.1, 0.1)).mat, ghz_symmetric(0.1, 0.1).mat)

    def test_p_bound_violation_names_inequality(self):
        # 0.3 > 1/8 + (sqrt3/2)(0.1) ~ 0.2116
        with pytest.raises(ValidationError, match=r"\|p\| <= 1/8"):
            ghz_symmetric(0.3, 0.1)

    @pytest.mark.parametrize("q", [Q_MIN - 0.01, Q_MAX + 0.01])
    def test_q_bound_violation_names_inequality(self, q):
        with pytest.raises(ValidationError, match=r"<= q <="):
            GhzSymmetricParams(0.0, q)

    def test_boundary_accepted(self):
        q = 0.2
        GhzSymmetricParams(0.125 + sqrt(3) / 2 * q, q)
        GhzSymmetricParams(0.0, Q_MIN)

    def test_constraints_match_positivity(self):
        # valid parameters give PSD states; just outside the boundary is not PSD
        q = 0.1
        p_edge = 0.125 + sqrt(3) / 2 * q
        w = 2 * q / sqrt(3)
        outside = ((w + p_edge + 0.01) * ghz_plus().mat + (w - p_edge - 0.01) * ghz_minus().mat
                   + (1 - 4 * q / sqrt(3)) * np.eye(8) / 8)
        assert np.linalg.eigvalsh(outside)[0] < 0
        assert np.linalg.eigvalsh(ghz_symmetric(p_edge, q).mat)[0] > -1e-12

    @pytest.mark.parametrize("p,q", list(ghz_symmetric_grid(0.1)))
    def test_permutation_symmetric(self, p, q):
        m = ghz_symmetric(p, q).mat
        for perm in itertools.permutations(range(3)):
            np.testing.assert_allclose(permute_qubits(m, perm), m, atol=1e-12)

    @pytest.mark.parametrize("p,q", list(ghz_symmetric_grid(0.1)))
    def test_two_party_marginals_diagonal_and_separable(self, p, q):
        rho = ghz_symmetric(p, q)
        for keep in ([0, 1], [0, 2], [1, 2]):
            m = partial_trace(rho, keep).mat
            np.testing.assert_allclose(m - np.diag(np.diag(m)), 0, atol=1e-12)


class TestPsi:
    def test_product(self):
        expected = np.zeros((8, 8))
        expected[0, 0] = 1
        np.testing.assert_allclose(psi_pure(0, 0).mat, expected)

    def test_sqrt_convention_lam0(self):
        params = PsiParams.from_amplitudes(-0.6, 0.07)
        assert params.lam0 == pytest.approx(0.79693161, abs=1e-8)
        assert params.lam0 == pytest.approx(sqrt(0.6351), abs=1e-12)

    def test_unnormalizable(self):
        with pytest.raises(ValidationError, match="amplitudes unnormalizable"):
            psi_pure(-0.85, 0.6)

    def test_affine_convention_normalizes(self):
        params = PsiParams.from_amplitudes(-0.85, 0.6, "affine")
        v = np.array([1.25, -0.85, 0.6]) / np.linalg.norm([1.25, -0.85, 0.6])
        np.testing.assert_allclose([params.lam0, params.lam1, params.lam2], v, atol=1e-15)
        assert psi_pure(-0.85, 0.6, "affine").purity() == pytest.approx(1)

    def test_unknown_convention(self):
        with pytest.raises(ValidationError):
            psi_pure(0.1, 0.1, "bogus")

    def test_amplitude_positions(self):
        m = psi_pure(0.3, -0.4).mat
        lam0 = sqrt(1 - 0.09 - 0.16)
        assert m[0, 5] == pytest.approx(lam0 * 0.3)
        assert m[5, 6] == pytest.approx(0.3 * -0.4)
        assert m[6, 6] == pytest.approx(0.16)


class TestBiseparable:
    def test_zero(self):
        np.testing.assert_allclose(biseparable(0).mat, np.eye(8) / 8)

    def test_ab_marginal_is_phi_plus(self):
        ab = partial_trace(biseparable(1), [0, 1]).mat
        np.testing.assert_allclose(ab, np.outer([1, 0, 0, 1], [1, 0, 0, 1]) / 2, atol=1e-12)

    def test_negativities(self):
        rho = biseparable(1)
        assert negativity(rho, Cut.A_BC) == pytest.approx(1, abs=1e-10)
        assert negativity(rho, Cut.C_AB) == pytest.approx(0, abs=1e-10)

    def test_out_of_range(self):
        with pytest.raises(ValidationError):
            biseparable(1.5)
