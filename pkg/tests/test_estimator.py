from math import pi

import numpy as np
import pytest
from sklearn.base import clone
from sklearn.pipeline import make_pipeline
from sklearn.preprocessing import StandardScaler

from condsteer import (
    BlochDirection,
    ConditionalSteeringDetector,
    DensityMatrix,
    NegativityTransformer,
    SteeringCriteria,
    ValidationError,
    ghz_plus,
    noisy_ghz,
    steering_report,
)
from condsteer.tripartite import MeasurementSetting

from conftest import random_density_matrix


@pytest.fixture
def two_qubit_batch(rng):
    return np.stack([random_density_matrix(rng, (2, 2)).mat for _ in range(6)])


class TestSteeringCriteria:
    def test_params_roundtrip(self):
        est = SteeringCriteria(steerer=1)
        assert est.get_params() == {"steerer": 1, "all_permutations": False}
        assert clone(est).set_params(all_permutations=True).all_permutations is True

    def test_transform_matches_functional(self, two_qubit_batch):
        out = SteeringCriteria(steerer=1).fit_transform(two_qubit_batch)
        assert out.shape == (6, 3)
        r = steering_report(DensityMatrix(two_qubit_batch[2], (2, 2)), 1)
        np.testing.assert_allclose(out[2], [r.s1, r.s2, r.horodecki_M])

    def test_pipeline(self, two_qubit_batch):
        pipe = make_pipeline(SteeringCriteria(), StandardScaler())
        assert pipe.fit_transform(two_qubit_batch).shape == (6, 3)

    def test_feature_names(self):
        assert list(SteeringCriteria().get_feature_names_out()) == ["s1", "s2", "M"]

    def test_unfitted(self, two_qubit_batch):
        from sklearn.exceptions import NotFittedError

        with pytest.raises(NotFittedError):
            SteeringCriteria().transform(two_qubit_batch)

    def test_bad_steerer(self, two_qubit_batch):
        with pytest.raises(ValidationError):
            SteeringCriteria(steerer=2).fit(two_qubit_batch)

    @pytest.mark.parametrize("X", [
        np.zeros((2, 4, 4)),
        np.eye(8)[None] / 8,
        np.ones((4,)),
        [np.full((4, 4), np.nan)],
        [],
    ])
    def test_validation(self, X):
        with pytest.raises(ValidationError):
            SteeringCriteria().fit(X)


class TestNegativityTransformer:
    def test_ghz(self):
        out = NegativityTransformer().fit_transform([ghz_plus(), noisy_ghz(0.0)])
        np.testing.assert_allclose(out, [[1, 1, 1], [0, 0, 0]], atol=1e-12)

    def test_names(self):
        assert list(NegativityTransformer().get_feature_names_out()) == ["neg_1|23", "neg_2|13", "neg_3|12"]

    def test_wrong_dims(self, two_qubit_batch):
        with pytest.raises(ValidationError):
            NegativityTransformer().fit(two_qubit_batch)


class TestDetector:
    def test_predict(self):
        det = ConditionalSteeringDetector(theta_steps=8).fit()
        X = [noisy_ghz(0.6), noisy_ghz(0.4)]
        np.testing.assert_array_equal(det.predict(X), [True, False])
        scores = det.decision_function(X)
        assert scores[0] > 0 > scores[1]

    def test_transform_shape(self):
        det = ConditionalSteeringDetector(theta_steps=4, parties=(0,))
        out = det.fit_transform(np.stack([noisy_ghz(p).mat for p in (0.2, 0.8)]))
        assert out.shape == (2, 3)
        assert out[1, 0] < 0

    def test_explicit_settings(self):
        st = [MeasurementSetting(0, BlochDirection(pi / 2, 0), 1, 1)]
        det = ConditionalSteeringDetector(settings=st).fit()
        assert det.settings_ == st
        assert det.scan(noisy_ghz(0.6)).evaluated == 1

    def test_clone_keeps_params(self):
        det = ConditionalSteeringDetector(theta_steps=5, parties=(2,))
        c = clone(det)
        assert c.get_params()["theta_steps"] == 5 and c.get_params()["parties"] == (2,)
        assert not hasattr(c, "settings_")

    @pytest.mark.parametrize("kwargs", [{"parties": (3,)}, {"parties": ()}, {"settings": []}, {"theta_steps": 0}])
    def test_bad_params(self, kwargs):
        with pytest.raises(ValidationError):
            ConditionalSteeringDetector(**kwargs).fit()
