"""Relativistic kinematics in rapidity form.

Natural units (c = 1). Particle speed enters only through its rapidity
``xi`` with ``tanh(xi) = beta``, so the particle mass never appears.
Angles are radians throughout.
"""
from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from ._errors import DegenerateDirectionError, DomainError

__all__ = [
    "RAPIDITY_CAP",
    "UNIT_TOL",
    "DerivedKinematics",
    "as_unit_vector",
    "boost_z",
    "check_rapidity",
    "derived_kinematics",
    "minkowski_norm",
    "rapidity_from_beta",
    "rotation_to_momentum",
    "rotation_y",
    "wigner_angle",
]

#: Largest accepted |rapidity|; cosh(300)**2 still fits in a double.
RAPIDITY_CAP = 300.0

#: Tolerance on |v| - 1 for a vector to count as a unit direction.
UNIT_TOL = 1e-9


class DerivedKinematics(NamedTuple):
    """Quantities shared by every closed form of the opposite-momenta setup.

    ``eta`` is the particle rapidity seen by the boosted observer,
    ``theta_lambda`` the polar angle of the particle momentum in that frame,
    and ``omega`` the Wigner angle.
    """

    eta: float
    theta_lambda: float
    omega: float


def check_rapidity(value, name="rapidity", signed=False):
    """Validate a rapidity and return it as a float."""
    value = float(value)
    if not math.isfinite(value):
        raise DomainError(f"{name} must be finite, got {value!r}")
    if not signed and value < 0:
        raise DomainError(f"{name} must be >= 0, got {value!r}")
    if abs(value) > RAPIDITY_CAP:
        raise DomainError(f"|{name}| = {abs(value)!r} exceeds the cap {RAPIDITY_CAP}")
    return value


def as_unit_vector(v, name="axis", normalize=False, tol=UNIT_TOL):
    """Return ``v`` as a float array of shape (3,), checking it is a unit vector.

    With ``normalize=True`` the vector is rescaled instead of rejected, as long
    as it is not degenerate.
    """
    arr = np.asarray(v, dtype=float)
    if arr.shape != (3,):
        raise DomainError(f"{name} must have 3 components, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} has non-finite components")
    n = float(np.linalg.norm(arr))
    if normalize:
        if n <= 1e-12:
            raise DegenerateDirectionError(f"{name} has norm {n!r}")
        return arr / n
    if abs(n - 1.0) > tol:
        raise DomainError(f"{name} is not a unit vector (|{name}| = {n!r})")
    return arr


def rapidity_from_beta(beta):
    """Rapidity of a particle moving with speed ``beta`` (signed)."""
    beta = float(beta)
    if not math.isfinite(beta) or abs(beta) >= 1.0:
        raise DomainError(f"|beta| must be < 1 for a massive particle, got {beta!r}")
    return check_rapidity(math.atanh(beta), "rapidity", signed=True)


def boost_z(xi):
    """4x4 Lorentz boost along z acting on (t, x, y, z).

    This is the matrix that takes a lab-frame four-vector into the rest frame
    of a particle moving along +z with rapidity ``xi``; ``boost_z(-xi)`` is its
    inverse.
    """
    xi = check_rapidity(xi, "xi", signed=True)
    ch, sh = math.cosh(xi), math.sinh(xi)
    return np.array(
        [
            [ch, 0.0, 0.0, -sh],
            [0.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, 1.0, 0.0],
            [-sh, 0.0, 0.0, ch],
        ]
    )


def minkowski_norm(p):
    """t^2 - x^2 - y^2 - z^2 of a four-vector (or a stack of them)."""
    p = np.asarray(p, dtype=float)
    return p[..., 0] ** 2 - np.sum(p[..., 1:] ** 2, axis=-1)


def rotation_y(angle):
    """Rotation by ``angle`` about the y axis (takes z toward +x)."""
    c, s = math.cos(angle), math.sin(angle)
    return np.array([[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]])


def rotation_to_momentum(theta_p, phi_p):
    """Rotation R_z(phi_p) R_y(theta_p) carrying z-hat onto the momentum direction."""
    ct, st = math.cos(theta_p), math.sin(theta_p)
    cp, sp = math.cos(phi_p), math.sin(phi_p)
    return np.array(
        [
            [cp * ct, -sp, cp * st],
            [sp * ct, cp, sp * st],
            [-st, 0.0, ct],
        ]
    )


def wigner_angle(xi, chi):
    """Wigner angle for a particle of rapidity ``xi`` seen from an observer
    boosted perpendicular to its motion with rapidity ``chi``.

    tan(omega) = sinh(xi) sinh(chi) / (cosh(xi) + cosh(chi)), in [0, pi/2).
    """
    xi = check_rapidity(xi, "xi")
    chi = check_rapidity(chi, "chi")
    return math.atan2(math.sinh(xi) * math.sinh(chi), math.cosh(xi) + math.cosh(chi))


def derived_kinematics(xi, chi):
    """eta, theta_lambda and omega for particle rapidity ``xi`` and observer rapidity ``chi``."""
    xi = check_rapidity(xi, "xi")
    chi = check_rapidity(chi, "chi")
    # cosh(eta) - 1 = cosh(xi) cosh(chi) - 1, written without cancellation near zero
    half = (math.sinh(xi / 2) ** 2) * math.cosh(chi) + math.sinh(chi / 2) ** 2
    eta = 2.0 * math.asinh(math.sqrt(half))
    theta_lambda = math.atan2(math.sinh(chi), math.tanh(xi))
    return DerivedKinematics(eta, theta_lambda, wigner_angle(xi, chi))
