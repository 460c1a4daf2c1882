"""Corrected measurement axes.

In a boosted frame the lab settings no longer give the non-relativistic
correlations. The corrected axis for each particle is the one whose effective
observable direction equals a target direction: the lab axis itself for
states that the boost leaves alone, or the lab axis turned by the Wigner angle
for states that mix. Since the effective vector is a fixed invertible linear
image of the axis, the correction is one inverse map followed by
normalization.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .expectation import (
    STATE_TABLE,
    BellKind,
    Czachor,
    MeasurementAxes,
    OppositeBoost,
    Unequal,
    bell_observable,
)
from .relkin import as_unit_vector, check_rapidity, derived_kinematics, rotation_y
from .spinobs import (
    Side,
    axis_map_inverse,
    axis_map_matrix,
    unequal_axis_map,
    unequal_axis_map_inverse,
)

__all__ = [
    "CorrectedPair",
    "correct_axes",
    "corrected_axes_from_kinematics",
    "corrected_axes_general",
    "corrected_axes_general_closed",
    "corrected_axes_unequal",
    "corrected_axis_czachor",
    "target_directions",
    "verify_max_violation",
]


@dataclass(frozen=True)
class CorrectedPair:
    """Corrected axes ``a_c``, ``b_c`` and the effective directions they reproduce.

    ``target_a`` and ``target_b`` are the boosted-frame directions that the
    observables for ``a_c`` and ``b_c`` point along. ``residual`` is the
    largest componentwise miss between the achieved and target directions.
    """

    a_c: np.ndarray
    b_c: np.ndarray
    residual: float
    target_a: np.ndarray
    target_b: np.ndarray


def _unit(v):
    return v / np.linalg.norm(v)


def _residual(pairs):
    return max(float(np.max(np.abs(_unit(m @ v) - t))) for m, v, t in pairs)


def corrected_axis_czachor(a, xi):
    """Corrected axis when both particles move along +z with rapidity ``xi``."""
    a = as_unit_vector(a)
    xi = check_rapidity(xi, "xi")
    # 1 - a_z^2 tanh^2 xi rewritten for unit a; the direct form cancels for large xi
    az = a[2] / math.cosh(xi)
    root = math.sqrt(a[0] ** 2 + a[1] ** 2 + az * az)
    return np.array([a[0] / root, a[1] / root, az / root])


def target_directions(state, a, b, omega):
    """Directions the effective observables must reach to restore the unboosted correlation."""
    _, mix = STATE_TABLE[BellKind(state)]
    if mix == 0.0:
        return np.asarray(a, dtype=float), np.asarray(b, dtype=float)
    return rotation_y(omega) @ a, rotation_y(-omega) @ b


def corrected_axes_from_kinematics(state, a, b, kin):
    a = as_unit_vector(a, "a")
    b = as_unit_vector(b, "b")
    target_a, target_b = target_directions(state, a, b, kin.omega)
    a_c = _unit(axis_map_inverse(kin, Side.PARTICLE1) @ target_a)
    b_c = _unit(axis_map_inverse(kin, Side.PARTICLE2) @ target_b)
    residual = _residual(
        [
            (axis_map_matrix(kin, Side.PARTICLE1), a_c, target_a),
            (axis_map_matrix(kin, Side.PARTICLE2), b_c, target_b),
        ]
    )
    return CorrectedPair(a_c, b_c, residual, target_a, target_b)


def corrected_axes_general(state, a, b, xi, chi):
    """Corrected pair for the opposite-momenta setup with a boosted observer."""
    return corrected_axes_from_kinematics(state, a, b, derived_kinematics(xi, chi))


def corrected_axes_unequal(a, b, xi_p, theta_p, xi_q, theta_q):
    """Corrected singlet pair for independent momenta in the x-z plane, observer at rest."""
    a = as_unit_vector(a, "a")
    b = as_unit_vector(b, "b")
    a_c = _unit(unequal_axis_map_inverse(xi_p, theta_p) @ a)
    b_c = _unit(unequal_axis_map_inverse(xi_q, theta_q) @ b)
    residual = _residual(
        [
            (unequal_axis_map(xi_p, theta_p), a_c, a),
            (unequal_axis_map(xi_q, theta_q), b_c, b),
        ]
    )
    return CorrectedPair(a_c, b_c, residual, a, b)


def corrected_axes_general_closed(a, b, xi, chi):
    """Explicit singlet formulas for the corrected pair in the opposite-momenta setup.

    Kept as a regression reference. Returns ``(a_c, b_c, F_a, F_b)`` where
    ``F_a`` and ``F_b`` are the x/z component ratios of the corrected axes.
    The expressions divide by the target z components and by
    tan(theta_lambda) terms, so they are undefined on those singular sets.
    At chi = 0 they reduce to :func:`corrected_axis_czachor`. For chi > 0 only
    the ratios ``F_a`` and ``F_b`` agree with :func:`corrected_axes_general`.
    """
    eta, theta, omega = derived_kinematics(xi, chi)
    c, s, t = math.cos(theta), math.sin(theta), math.tan(theta)
    ch, sh = math.cosh(eta), math.sinh(eta)
    a_bar = rotation_y(omega) @ np.asarray(a, dtype=float)
    b_bar = rotation_y(-omega) @ np.asarray(b, dtype=float)

    f_a = a_bar[0] / a_bar[2]
    F_a = ((1 + ch) * t - f_a * (t * t - ch)) / ((1 - ch * t * t) - f_a * (1 + ch) * t)
    g_a = F_a * s + c
    a_cz = a_bar[2] / math.sqrt(
        (F_a * (1 + ch) * s * c - (s * s - ch * c * c)) ** 2 - (a_bar[2] * sh * g_a) ** 2
    )
    n_a = math.sqrt(1 + (a_cz * sh * g_a) ** 2)

    f_b = b_bar[0] / b_bar[2]
    F_b = -((1 + ch) * t + f_b * (t * t - ch)) / ((1 - ch * t * t) + f_b * (1 + ch) * t)
    g_b = F_b * s - c
    b_cz = b_bar[2] / math.sqrt(
        (F_b * (1 + ch) * s * c - (s * s - ch * c * c)) ** 2 - (b_bar[2] * sh * g_b) ** 2
    )
    n_b = math.sqrt(1 + (b_cz * sh * g_b) ** 2)

    a_c = np.array([a_bar[0] * n_a, a[1] * n_a, a_cz])
    b_c = np.array([b_bar[0] * n_b, b[1] * n_b, b_cz])
    return a_c, b_c, F_a, F_b


def correct_axes(scenario, state, axes: MeasurementAxes) -> MeasurementAxes:
    """Correct all four CHSH settings for ``scenario``."""
    state = BellKind(state)
    if isinstance(scenario, Czachor):
        # both particles co-move along +z: no Wigner rotation, same map on each side
        return MeasurementAxes(
            *(corrected_axis_czachor(v, scenario.xi) for v in axes.as_array())
        )
    if isinstance(scenario, OppositeBoost):
        kin = derived_kinematics(scenario.xi, scenario.chi)
        first = corrected_axes_from_kinematics(state, axes.a, axes.b, kin)
        second = corrected_axes_from_kinematics(state, axes.a_prime, axes.b_prime, kin)
        return MeasurementAxes(first.a_c, second.a_c, first.b_c, second.b_c)
    if isinstance(scenario, Unequal):
        # raises for states without a closed form
        bell_observable(scenario, state, axes)
        s = scenario
        first = corrected_axes_unequal(axes.a, axes.b, s.xi_p, s.theta_p, s.xi_q, s.theta_q)
        second = corrected_axes_unequal(
            axes.a_prime, axes.b_prime, s.xi_p, s.theta_p, s.xi_q, s.theta_q
        )
        return MeasurementAxes(first.a_c, second.a_c, first.b_c, second.b_c)
    raise TypeError(f"not a scenario: {scenario!r}")


def verify_max_violation(state, scenario, axes: MeasurementAxes):
    """|C| at the given (corrected) settings; 2 sqrt(2) means maximal violation."""
    return abs(bell_observable(scenario, state, axes))
