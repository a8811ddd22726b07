"""scikit-learn compatible wrappers around the detection machinery.

States go in as ``(n, d, d)`` arrays or lists of ``DensityMatrix``; criterion
values come out as ``(n, k)`` feature matrices, so the detectors can sit in a
``Pipeline`` or be tuned with ``GridSearchCV``-style parameter handling.
"""
from __future__ import annotations

from math import pi

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .errors import ValidationError
from .steering import steering_report
from .tripartite import Cut, ScanVerdict, default_grid, negativity, scan_settings, settings_from_grid
from .validation import check_states


class SteeringCriteria(TransformerMixin, BaseEstimator):
    """Map two-qubit states to ``[S1, S2, M]``.

    Parameters
    ----------
    steerer : int, default=0
        Which qubit plays the untrusted (steering) party.
    all_permutations : bool, default=False
        Maximize S2 over all six index permutations instead of the three cyclic ones.
    """

    feature_names = ("s1", "s2", "M")

    def __init__(self, steerer=0, all_permutations=False):
        self.steerer = steerer
        self.all_permutations = all_permutations

    def fit(self, X, y=None):
        if self.steerer not in (0, 1):
            raise ValidationError("steerer must be 0 or 1")
        self.n_states_seen_ = len(check_states(X, (2, 2)))
        return self

    def transform(self, X):
        check_is_fitted(self)
        out = []
        for rho in check_states(X, (2, 2)):
            r = steering_report(rho, self.steerer, self.all_permutations)
            out.append((r.s1, r.s2, r.horodecki_M))
        return np.array(out, dtype=float)

    def get_feature_names_out(self, input_features=None):
        return np.array(self.feature_names, dtype=object)


class NegativityTransformer(TransformerMixin, BaseEstimator):
    """Map three-qubit states to their negativities across the cuts 1|23, 2|13, 3|12."""

    def fit(self, X, y=None):
        self.n_states_seen_ = len(check_states(X, (2, 2, 2)))
        return self

    def transform(self, X):
        check_is_fitted(self)
        return np.array([[negativity(rho, c) for c in Cut] for rho in check_states(X, (2, 2, 2))])

    def get_feature_names_out(self, input_features=None):
        return np.array([f"neg_{c.value}" for c in Cut], dtype=object)


class ConditionalSteeringDetector(TransformerMixin, BaseEstimator):
    """Detect conditional steering in three-qubit states.

    For each state, every selected party measures along every grid direction;
    each conditional two-qubit state is checked with S1 and S2 in both steering
    directions. A state is flagged when any check fires. Detection is one-sided:
    ``False`` means "not detected", not "unsteerable".

    Parameters
    ----------
    theta_steps : int, default=40
        Polar angles ``k*pi/theta_steps`` for ``k = 0..theta_steps``.
    phis : tuple of float, default=(0, pi/4, pi/2)
        Azimuthal angles of the grid.
    parties : tuple of int, default=(0, 1, 2)
        Which parties may measure.
    settings : list of MeasurementSetting, optional
        Explicit settings; when given, the grid parameters are ignored.
    all_permutations : bool, default=False
        Use all six index permutations in S2.

    Attributes
    ----------
    settings_ : list of MeasurementSetting
        The settings compiled by ``fit``.
    """

    def __init__(self, theta_steps=40, phis=(0.0, pi / 4, pi / 2), parties=(0, 1, 2),
                 settings=None, all_permutations=False):
        self.theta_steps = theta_steps
        self.phis = phis
        self.parties = parties
        self.settings = settings
        self.all_permutations = all_permutations

    def fit(self, X=None, y=None):
        if X is not None:
            check_states(X, (2, 2, 2))
        if self.settings is not None:
            self.settings_ = list(self.settings)
            if not self.settings_:
                raise ValidationError("settings is empty")
        else:
            if any(p not in (0, 1, 2) for p in self.parties) or not len(self.parties):
                raise ValidationError("parties must be a nonempty subset of {0, 1, 2}")
            self.settings_ = settings_from_grid(default_grid(self.theta_steps, self.phis), self.parties)
        return self

    def scan(self, rho) -> ScanVerdict:
        check_is_fitted(self)
        (rho,) = check_states(rho, (2, 2, 2))
        return scan_settings(rho, self.settings_, self.all_permutations)

    def _verdicts(self, X):
        check_is_fitted(self)
        return [scan_settings(rho, self.settings_, self.all_permutations) for rho in check_states(X, (2, 2, 2))]

    def predict(self, X):
        """Boolean array: conditional steering detected."""
        return np.array([v.conditionally_steerable for v in self._verdicts(X)], dtype=bool)

    def decision_function(self, X):
        """``max(-min S1, max S2)`` over the scan; positive exactly when detected."""
        return np.array([max(-v.min_s1, v.max_s2) for v in self._verdicts(X)])

    def transform(self, X):
        """Columns ``[min S1, max S2, max M]`` over the scan (NaN if nothing was measurable)."""
        return np.array([(v.min_s1, v.max_s2, v.max_M) for v in self._verdicts(X)])

    def get_feature_names_out(self, input_features=None):
        return np.array(["min_s1", "max_s2", "max_M"], dtype=object)
