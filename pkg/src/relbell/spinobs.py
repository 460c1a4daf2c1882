"""Relativistic spin observables.

A lab-frame measurement axis ``a`` for a moving particle corresponds to the
normalized observable ``(A . sigma) / |A|``, where the effective vector ``A``
is a linear image of ``a``. The image depends on the particle's rapidity seen
by the observer and on the direction of its momentum.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from ._errors import DegenerateDirectionError
from .relkin import DerivedKinematics, boost_z, check_rapidity, rotation_to_momentum

__all__ = [
    "PAULI",
    "Side",
    "SpinObservable",
    "axis_map_inverse",
    "axis_map_matrix",
    "boost_axis_czachor",
    "observable_matrix",
    "observable_vectors_general",
    "observable_vectors_unequal",
    "unequal_axis_map",
    "unequal_axis_map_inverse",
]

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = (SIGMA_X, SIGMA_Y, SIGMA_Z)

DEGENERATE_TOL = 1e-12


class Side(str, Enum):
    PARTICLE1 = "particle1"
    PARTICLE2 = "particle2"


@dataclass(frozen=True)
class SpinObservable:
    """Effective direction ``vec`` of a spin observable and its length ``norm``."""

    vec: np.ndarray
    norm: float

    @property
    def direction(self):
        return self.vec / self.norm

    def matrix(self):
        return observable_matrix(self.vec)


def observable_matrix(v):
    """2x2 matrix (v . sigma) / |v|, which has eigenvalues +1 and -1."""
    v = np.asarray(v, dtype=float)
    n = float(np.linalg.norm(v))
    if n <= DEGENERATE_TOL:
        raise DegenerateDirectionError(f"cannot normalize direction of length {n!r}")
    v = v / n
    return v[0] * SIGMA_X + v[1] * SIGMA_Y + v[2] * SIGMA_Z


def boost_axis_czachor(a, xi):
    """Observable for axis ``a`` when the particle moves along +z with rapidity ``xi``."""
    xi = check_rapidity(xi, "xi")
    a = np.asarray(a, dtype=float)
    vec = np.array([a[0], a[1], a[2] * math.cosh(xi)])
    return SpinObservable(vec, math.sqrt(1.0 + (a[2] * math.sinh(xi)) ** 2))


def _effective_vector(a, eta, theta, flip):
    # flip=+1 for the particle moving toward +z, -1 for its partner along -z
    c, s = math.cos(theta), math.sin(theta)
    ch = math.cosh(eta)
    ax, ay, az = float(a[0]), float(a[1]), float(a[2])
    return np.array(
        [
            ax * (c * c - ch * s * s) - flip * az * (1.0 + ch) * s * c,
            ay,
            flip * ax * (1.0 + ch) * s * c - az * (s * s - ch * c * c),
        ]
    )


def observable_vectors_general(a, b, kin: DerivedKinematics):
    """Effective vectors (A, B) and their lengths for the opposite-momenta setup.

    Particle 1 moves along +z and particle 2 along -z in the lab; the observer
    is boosted along -x. Returns ``(A, B, norm_a, norm_b)``.
    """
    eta, theta = kin.eta, kin.theta_lambda
    c, s = math.cos(theta), math.sin(theta)
    sh = math.sinh(eta)
    A = _effective_vector(a, eta, theta, +1.0)
    B = _effective_vector(b, eta, theta, -1.0)
    norm_a = math.sqrt(1.0 + sh * sh * (a[0] * s + a[2] * c) ** 2)
    norm_b = math.sqrt(1.0 + sh * sh * (-b[0] * s + b[2] * c) ** 2)
    return A, B, norm_a, norm_b


def observable_vectors_unequal(a, xi, theta):
    """Effective vector and its length for a particle with momentum in the x-z plane.

    ``theta`` is the polar angle of the momentum, ``xi`` its rapidity; the
    observer is at rest.
    """
    xi = check_rapidity(xi, "xi")
    A = _effective_vector(a, xi, theta, +1.0)
    proj = a[0] * math.sin(theta) + a[2] * math.cos(theta)
    return A, math.sqrt(1.0 + (math.sinh(xi) * proj) ** 2)


def _compose_map(eta, theta):
    # a -> R^T [boost of (0, R^T a)]_spatial, assembled from the 4x4 matrices
    rot = rotation_to_momentum(theta, 0.0)
    lift = np.zeros((4, 3))
    lift[1:, :] = rot.T
    return rot.T @ (boost_z(eta) @ lift)[1:, :]


def _compose_inverse(eta, theta):
    rot = rotation_to_momentum(theta, 0.0)
    return rot @ np.diag([1.0, 1.0, 1.0 / math.cosh(eta)]) @ rot


def _side_angle(kin, side):
    side = Side(side)
    return kin.theta_lambda if side is Side.PARTICLE1 else math.pi - kin.theta_lambda


def axis_map_matrix(kin: DerivedKinematics, side=Side.PARTICLE1):
    """3x3 matrix taking a lab axis to its effective vector (A = M a or B = N b)."""
    return _compose_map(kin.eta, _side_angle(kin, side))


def axis_map_inverse(kin: DerivedKinematics, side=Side.PARTICLE1):
    """Inverse of :func:`axis_map_matrix`, built from its rotation/boost factors."""
    return _compose_inverse(kin.eta, _side_angle(kin, side))


def unequal_axis_map(xi, theta):
    """Axis map for a single particle of rapidity ``xi`` and momentum angle ``theta``."""
    return _compose_map(check_rapidity(xi, "xi"), theta)


def unequal_axis_map_inverse(xi, theta):
    return _compose_inverse(check_rapidity(xi, "xi"), theta)
