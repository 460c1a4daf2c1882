"""scikit-learn style wrappers.

The estimators carry the kinematic setup as constructor parameters, so they
work with ``get_params``/``set_params``, ``clone`` and pipelines. Inputs are
rows of direction vectors: shape (n, 3) for single axes and (n, 6) for
(a, b) pairs.
"""
from __future__ import annotations

import math

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .corrected import correct_axes, target_directions
from .expectation import (
    BellKind,
    Czachor,
    OppositeBoost,
    bell_observable,
    canonical_axes,
    correlation_coefficients,
    make_scenario,
)
from .optimizer import maximize_bell
from .relkin import UNIT_TOL, derived_kinematics
from .spinobs import (
    Side,
    axis_map_inverse,
    axis_map_matrix,
    boost_axis_czachor,
    observable_vectors_general,
    observable_vectors_unequal,
    unequal_axis_map,
    unequal_axis_map_inverse,
)

__all__ = ["AxisCorrector", "BellMaximizer", "BoostedCorrelator"]


class _ScenarioParams(BaseEstimator):
    def __init__(
        self,
        scenario="opposite",
        state="psi-",
        xi=0.0,
        chi=0.0,
        xi_p=0.0,
        theta_p=0.0,
        xi_q=0.0,
        theta_q=math.pi,
    ):
        self.scenario = scenario
        self.state = state
        self.xi = xi
        self.chi = chi
        self.xi_p = xi_p
        self.theta_p = theta_p
        self.xi_q = xi_q
        self.theta_q = theta_q

    def _build_scenario(self):
        return make_scenario(
            self.scenario,
            xi=self.xi,
            chi=self.chi,
            xi_p=self.xi_p,
            theta_p=self.theta_p,
            xi_q=self.xi_q,
            theta_q=self.theta_q,
        )


def _check_units(X, width, normalize):
    X = check_array(X, dtype=float)
    if X.shape[1] != width:
        raise ValueError(f"expected {width} columns, got {X.shape[1]}")
    blocks = X.reshape(len(X), -1, 3)
    norms = np.linalg.norm(blocks, axis=-1)
    if normalize:
        if np.any(norms <= 1e-12):
            raise ValueError("degenerate direction in input")
        blocks = blocks / norms[..., None]
    elif np.any(np.abs(norms - 1.0) > UNIT_TOL):
        raise ValueError("input rows must be unit vectors (pass normalize=True to rescale)")
    return blocks.reshape(len(X), width)


class AxisCorrector(TransformerMixin, _ScenarioParams):
    """Map lab measurement axes to corrected axes for one particle.

    ``transform`` takes unit axes of shape (n, 3) and returns the corrected
    axes. ``inverse_transform`` maps corrected axes back to the lab axes they
    stand for.
    """

    def __init__(
        self,
        scenario="opposite",
        state="psi-",
        xi=0.0,
        chi=0.0,
        xi_p=0.0,
        theta_p=0.0,
        xi_q=0.0,
        theta_q=math.pi,
        side="particle1",
        normalize=False,
    ):
        super().__init__(scenario, state, xi, chi, xi_p, theta_p, xi_q, theta_q)
        self.side = side
        self.normalize = normalize

    def fit(self, X=None, y=None):
        scenario = self._build_scenario()
        side = Side(self.side)
        state = BellKind(self.state)
        # target rotation: identity unless the state mixes under the boost
        rot = np.eye(3)
        if isinstance(scenario, Czachor):
            ch = math.cosh(scenario.xi)
            forward = np.diag([1.0, 1.0, ch])
            inverse = np.diag([1.0, 1.0, 1.0 / ch])
        elif isinstance(scenario, OppositeBoost):
            kin = derived_kinematics(scenario.xi, scenario.chi)
            forward = axis_map_matrix(kin, side)
            inverse = axis_map_inverse(kin, side)
            cols = [
                target_directions(state, e, e, kin.omega)[0 if side is Side.PARTICLE1 else 1]
                for e in np.eye(3)
            ]
            rot = np.column_stack(cols)
        else:
            bell_observable(scenario, state, canonical_axes(state))
            xi, theta = (
                (scenario.xi_p, scenario.theta_p)
                if side is Side.PARTICLE1
                else (scenario.xi_q, scenario.theta_q)
            )
            forward = unequal_axis_map(xi, theta)
            inverse = unequal_axis_map_inverse(xi, theta)
        self.axis_map_ = forward
        self.inverse_map_ = inverse
        self.target_rotation_ = rot
        self.n_features_in_ = 3
        return self

    def transform(self, X):
        check_is_fitted(self, "axis_map_")
        X = _check_units(X, 3, self.normalize)
        out = X @ (self.inverse_map_ @ self.target_rotation_).T
        return out / np.linalg.norm(out, axis=1, keepdims=True)

    def inverse_transform(self, X):
        check_is_fitted(self, "axis_map_")
        X = _check_units(X, 3, self.normalize)
        eff = X @ self.axis_map_.T
        eff /= np.linalg.norm(eff, axis=1, keepdims=True)
        return eff @ self.target_rotation_

    def correct(self, axes):
        """Correct a full CHSH setting (convenience over :func:`correct_axes`)."""
        return correct_axes(self._build_scenario(), self.state, axes)


class BoostedCorrelator(_ScenarioParams):
    """Predict joint spin correlations <a (x) b> for rows ``[a_x, a_y, a_z, b_x, b_y, b_z]``."""

    def fit(self, X=None, y=None):
        self.scenario_ = self._build_scenario()
        state = BellKind(self.state)
        bell_observable(self.scenario_, state, canonical_axes(state))
        if isinstance(self.scenario_, OppositeBoost):
            kin = derived_kinematics(self.scenario_.xi, self.scenario_.chi)
            self.kinematics_ = kin
            self.coefficients_ = correlation_coefficients(state, kin.omega)
        else:
            self.kinematics_ = None
            self.coefficients_ = correlation_coefficients(state, 0.0)
        self.n_features_in_ = 6
        return self

    def _vectors(self, a, b):
        s = self.scenario_
        if isinstance(s, Czachor):
            oa, ob = boost_axis_czachor(a, s.xi), boost_axis_czachor(b, s.xi)
            return oa.vec, ob.vec, oa.norm, ob.norm
        if isinstance(s, OppositeBoost):
            return observable_vectors_general(a, b, self.kinematics_)
        A, na = observable_vectors_unequal(a, s.xi_p, s.theta_p)
        B, nb = observable_vectors_unequal(b, s.xi_q, s.theta_q)
        return A, B, na, nb

    def predict(self, X):
        check_is_fitted(self, "scenario_")
        X = _check_units(X, 6, normalize=False)
        out = np.empty(len(X))
        for i, row in enumerate(X):
            A, B, na, nb = self._vectors(row[:3], row[3:])
            out[i] = A @ self.coefficients_ @ B / (na * nb)
        return out


class BellMaximizer(_ScenarioParams):
    """Search the four CHSH settings for the largest |C|."""

    def __init__(
        self,
        scenario="opposite",
        state="psi-",
        xi=0.0,
        chi=0.0,
        xi_p=0.0,
        theta_p=0.0,
        xi_q=0.0,
        theta_q=math.pi,
        restarts=8,
        seed=0,
        tol=1e-10,
    ):
        super().__init__(scenario, state, xi, chi, xi_p, theta_p, xi_q, theta_q)
        self.restarts = restarts
        self.seed = seed
        self.tol = tol

    def fit(self, X=None, y=None):
        self.report_ = maximize_bell(
            self._build_scenario(), self.state, self.restarts, self.seed, self.tol
        )
        self.best_axes_ = self.report_.best_axes
        self.best_value_ = self.report_.best_value
        return self

    def score(self, X=None, y=None):
        check_is_fitted(self, "report_")
        return self.best_value_
