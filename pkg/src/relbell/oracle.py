"""Brute-force two-qubit checks for the closed forms.

Everything here works on explicit complex amplitudes in the basis
(|uu>, |ud>, |du>, |dd>) with particle 1 as the left tensor factor, where
u/d are the sigma_z eigenstates. Observables are built from 4x4 boost
matrices and rotated Pauli vectors, not from the closed-form effective
vectors, so agreement between the two paths is a real check.
"""
from __future__ import annotations

import math

import numpy as np

from ._errors import InvalidOperatorError
from .expectation import BellKind
from .relkin import as_unit_vector, boost_z, derived_kinematics, rotation_to_momentum
from .spinobs import PAULI

__all__ = [
    "SIGMA_RELATIONS",
    "bell_state",
    "expect_matrix",
    "oracle_expect_boosted",
    "oracle_expect_unequal",
    "per_particle_wigner",
    "relativistic_observable",
    "sample_outcomes",
    "transform_bell",
    "transformed_state",
    "verify_sigma_relations",
]

_R = math.sqrt(0.5)
_AMPLITUDES = {
    BellKind.PHI_PLUS: (_R, 0.0, 0.0, _R),
    BellKind.PHI_MINUS: (_R, 0.0, 0.0, -_R),
    BellKind.PSI_PLUS: (0.0, _R, _R, 0.0),
    BellKind.PSI_MINUS: (0.0, _R, -_R, 0.0),
}

# How each Bell state mixes under the boost: (partner, sign of sin(omega) term).
_MIXING = {
    BellKind.PHI_PLUS: (BellKind.PSI_MINUS, -1.0),
    BellKind.PSI_MINUS: (BellKind.PHI_PLUS, +1.0),
}


def bell_state(kind):
    return np.array(_AMPLITUDES[BellKind(kind)], dtype=complex)


def transform_bell(kind, omega):
    """Boosted Bell state from the mixing table (the closed form under test)."""
    kind = BellKind(kind)
    if kind not in _MIXING:
        return bell_state(kind)
    partner, sign = _MIXING[kind]
    return math.cos(omega) * bell_state(kind) + sign * math.sin(omega) * bell_state(partner)


def per_particle_wigner(omega):
    """Spin rotations (exp(-i w sigma_y / 2), exp(+i w sigma_y / 2)) for particles 1 and 2."""
    c, s = math.cos(omega / 2), math.sin(omega / 2)
    u1 = np.array([[c, -s], [s, c]], dtype=complex)
    u2 = np.array([[c, s], [-s, c]], dtype=complex)
    return u1, u2


def transformed_state(kind, omega):
    """Boosted Bell state built by applying the per-particle rotations."""
    u1, u2 = per_particle_wigner(omega)
    return np.kron(u1, u2) @ bell_state(kind)


def _check_hermitian(op, name):
    op = np.asarray(op, dtype=complex)
    if op.shape != (2, 2):
        raise InvalidOperatorError(f"{name} must be 2x2, got {op.shape}")
    if np.max(np.abs(op - op.conj().T)) > 1e-10:
        raise InvalidOperatorError(f"{name} is not Hermitian")
    return op


def expect_matrix(state, op_a, op_b):
    """<state| op_a (x) op_b |state> for Hermitian single-qubit operators."""
    op_a = _check_hermitian(op_a, "op_a")
    op_b = _check_hermitian(op_b, "op_b")
    state = np.asarray(state, dtype=complex)
    value = np.vdot(state, np.kron(op_a, op_b) @ state)
    assert abs(value.imag) < 1e-12, value
    return float(value.real)


def relativistic_observable(axis, rapidity, theta, phi=0.0):
    """Normalized spin observable for a particle with momentum direction (theta, phi).

    The lab axis is taken to the particle rest frame with the 4x4 boost and
    rotation, then contracted with the rotated Pauli vector R sigma.
    """
    axis = as_unit_vector(axis)
    rot = rotation_to_momentum(theta, phi)
    four = np.zeros(4)
    four[1:] = rot.T @ axis
    rest = (boost_z(rapidity) @ four)[1:]
    rotated_pauli = [sum(rot[i, k] * PAULI[k] for k in range(3)) for i in range(3)]
    op = sum(rest[i] * rotated_pauli[i] for i in range(3))
    return op / np.max(np.abs(np.linalg.eigvalsh(op)))


def oracle_expect_boosted(kind, a, b, xi, chi):
    kin = derived_kinematics(xi, chi)
    op_a = relativistic_observable(a, kin.eta, kin.theta_lambda)
    op_b = relativistic_observable(b, kin.eta, math.pi - kin.theta_lambda)
    return expect_matrix(transformed_state(kind, kin.omega), op_a, op_b)


def oracle_expect_unequal(a, b, xi_p, theta_p, xi_q, theta_q, phi_p=0.0, phi_q=0.0):
    """Singlet correlation for arbitrary momentum directions, observer at rest."""
    op_a = relativistic_observable(a, xi_p, theta_p, phi_p)
    op_b = relativistic_observable(b, xi_q, theta_q, phi_q)
    return expect_matrix(bell_state(BellKind.PSI_MINUS), op_a, op_b)


# sigma_i (x) sigma_j |Phi> = c_cos cos(w) |first> + c_sin sin(w) |second>,
# where |Phi> is the boosted singlet.
SIGMA_RELATIONS = (
    ((0, 0), (-1.0, BellKind.PSI_MINUS), (1.0, BellKind.PHI_PLUS)),
    ((1, 1), (-1.0, BellKind.PSI_MINUS), (-1.0, BellKind.PHI_PLUS)),
    ((2, 2), (-1.0, BellKind.PSI_MINUS), (1.0, BellKind.PHI_PLUS)),
    ((0, 2), (-1.0, BellKind.PHI_PLUS), (-1.0, BellKind.PSI_MINUS)),
    ((2, 0), (1.0, BellKind.PHI_PLUS), (1.0, BellKind.PSI_MINUS)),
)


def verify_sigma_relations(omega, relations=SIGMA_RELATIONS, tol=1e-12):
    """Check the Pauli-product identities on the boosted singlet as amplitude equalities."""
    phi = transformed_state(BellKind.PSI_MINUS, omega)
    c, s = math.cos(omega), math.sin(omega)
    for (i, j), (kc, first), (ks, second) in relations:
        lhs = np.kron(PAULI[i], PAULI[j]) @ phi
        rhs = kc * c * bell_state(first) + ks * s * bell_state(second)
        if np.max(np.abs(lhs - rhs)) > tol:
            return False
    return True


def sample_outcomes(state, op_a, op_b, n, seed):
    """Monte-Carlo estimate of <op_a (x) op_b> from n joint projective measurements.

    Outcomes are drawn by inverse-CDF sampling over the four joint
    eigenprojector probabilities.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    op_a = _check_hermitian(op_a, "op_a")
    op_b = _check_hermitian(op_b, "op_b")
    vals_a, vecs_a = np.linalg.eigh(op_a)
    vals_b, vecs_b = np.linalg.eigh(op_b)
    joint = np.kron(vecs_a, vecs_b)
    probs = np.abs(joint.conj().T @ np.asarray(state, dtype=complex)) ** 2
    cdf = np.cumsum(probs)
    cdf /= cdf[-1]
    rng = np.random.default_rng(seed)
    idx = np.searchsorted(cdf, rng.random(n), side="right")
    products = np.outer(np.sign(vals_a), np.sign(vals_b)).ravel()
    return float(np.mean(products[np.minimum(idx, 3)]))
