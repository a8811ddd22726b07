from math import pi

import numpy as np
import pytest

from condsteer import (
    BlochDirection,
    DensityMatrix,
    NumericalError,
    ValidationError,
    condition,
    ghz_plus,
    measure,
    noisy_ghz,
    partial_trace,
    pauli_tensor,
    projector,
)

from conftest import random_density_matrix

PHI_PLUS = np.outer([1, 0, 0, 1], [1, 0, 0, 1]) / 2


class TestBlochDirection:
    def test_unit_norm(self, rng):
        for t, f in rng.uniform(0, 2 * pi, size=(20, 2)):
            assert np.linalg.norm(BlochDirection(t, f).vector) == pytest.approx(1, abs=1e-12)

    def test_named(self):
        np.testing.assert_allclose(BlochDirection.named("y").vector, [0, 1, 0], atol=1e-15)
        with pytest.raises(ValidationError):
            BlochDirection.named("w")


class TestProjector:
    def test_z_up(self):
        np.testing.assert_allclose(projector(BlochDirection(0), 1), np.diag([1, 0]))

    def test_x_up(self):
        np.testing.assert_allclose(projector(BlochDirection(pi / 2, 0), 1), np.full((2, 2), 0.5), atol=1e-15)

    def test_complete_idempotent_rank_one(self, rng):
        d = BlochDirection(*rng.uniform(0, 2 * pi, 2))
        up, down = projector(d, 1), projector(d, -1)
        np.testing.assert_allclose(up + down, np.eye(2), atol=1e-15)
        np.testing.assert_allclose(up @ up, up, atol=1e-15)
        assert np.trace(up).real == pytest.approx(1)

    def test_bad_outcome(self):
        with pytest.raises(ValidationError):
            projector(BlochDirection(0), 0)


class TestCondition:
    def test_ghz_z(self):
        out = condition(ghz_plus(), 2, projector(BlochDirection(0), 1), 1)
        assert out.probability == pytest.approx(0.5)
        np.testing.assert_allclose(out.state.mat, np.diag([1, 0, 0, 0]), atol=1e-15)
        assert out.remaining == (0, 1)

    def test_ghz_x(self):
        out = condition(ghz_plus(), 2, projector(BlochDirection(pi / 2), 1))
        assert out.probability == pytest.approx(0.5)
        np.testing.assert_allclose(out.state.mat, PHI_PLUS, atol=1e-15)

    @pytest.mark.parametrize("theta", [0.0, 0.4, pi / 3, pi / 2, 2.0, 3.0])
    @pytest.mark.parametrize("p", [0.2, 0.6, 1.0])
    def test_noisy_ghz_tensor(self, p, theta):
        out = condition(noisy_ghz(p), 0, projector(BlochDirection(theta, 0), 1))
        pt = pauli_tensor(out.state)
        s = np.sin(theta)
        np.testing.assert_allclose(pt.T, np.diag([p * s, -p * s, p]), atol=1e-12)
        np.testing.assert_allclose(pt.a, [0, 0, p * np.cos(theta)], atol=1e-12)
        np.testing.assert_allclose(pt.b, [0, 0, p * np.cos(theta)], atol=1e-12)

    def test_zero_probability(self):
        ground = np.zeros((8, 8))
        ground[0, 0] = 1
        with pytest.raises(NumericalError, match="zero probability"):
            condition(DensityMatrix(ground, (2, 2, 2)), 0, projector(BlochDirection(0), -1))

    def test_rejects_non_projector(self):
        with pytest.raises(ValidationError):
            condition(ghz_plus(), 0, np.eye(2) / 2)

    def test_rejects_full_rank_projector(self):
        with pytest.raises(ValidationError, match="rank 1"):
            condition(ghz_plus(), 0, np.eye(2))

    def test_outcomes_average_to_marginal(self, rng):
        for _ in range(25):
            rho = random_density_matrix(rng)
            party = int(rng.integers(3))
            outs = measure(rho, party, BlochDirection(*rng.uniform(0, 2 * pi, 2)))
            assert sum(o.probability for o in outs) == pytest.approx(1, abs=1e-12)
            avg = sum(o.probability * o.state.mat for o in outs)
            keep = [i for i in range(3) if i != party]
            np.testing.assert_allclose(avg, partial_trace(rho, keep).mat, atol=1e-10)

    def test_measure_drops_impossible_outcome(self):
        product = np.zeros((8, 8))
        product[0, 0] = 1
        outs = measure(DensityMatrix(product, (2, 2, 2)), 1, BlochDirection(0))
        assert [o.outcome for o in outs] == [1]
