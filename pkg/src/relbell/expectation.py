"""Closed-form joint spin expectation values and CHSH (Bell) observables."""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Union

import numpy as np

from ._errors import DomainError, UnsupportedScenarioError
from .relkin import as_unit_vector, check_rapidity, derived_kinematics
from .spinobs import boost_axis_czachor, observable_vectors_general, observable_vectors_unequal

__all__ = [
    "BellKind",
    "Czachor",
    "MeasurementAxes",
    "OppositeBoost",
    "Scenario",
    "Unequal",
    "STATE_TABLE",
    "TSIRELSON",
    "bell_czachor_closed",
    "bell_general_closed",
    "bell_observable",
    "canonical_axes",
    "correlation_coefficients",
    "expect_boosted",
    "expect_czachor",
    "expect_nonrel",
    "expect_unequal",
    "make_scenario",
]

TSIRELSON = 2.0 * math.sqrt(2.0)


class BellKind(str, Enum):
    PHI_PLUS = "phi+"
    PHI_MINUS = "phi-"
    PSI_PLUS = "psi+"
    PSI_MINUS = "psi-"


# Per state: signs of the (x, y, z) diagonal correlations and whether the state
# mixes with its partner under the boost. Mixing states pick up cos(2w) on the
# x-x and z-z terms and +/- sin(2w) on the x-z cross terms; phi- and psi+ are
# left alone by the Wigner rotation and carry no w dependence at all.
STATE_TABLE = {
    BellKind.PHI_PLUS: ((1.0, -1.0, 1.0), 1.0),
    BellKind.PHI_MINUS: ((-1.0, 1.0, 1.0), 0.0),
    BellKind.PSI_PLUS: ((1.0, 1.0, -1.0), 0.0),
    BellKind.PSI_MINUS: ((-1.0, -1.0, -1.0), -1.0),
}


def correlation_coefficients(state, omega):
    """3x3 matrix T with <A.sigma (x) B.sigma> = A^T T B on the boosted state."""
    (dx, dy, dz), mix = STATE_TABLE[BellKind(state)]
    if mix == 0.0:
        return np.diag([dx, dy, dz])
    c2, s2 = math.cos(2 * omega), math.sin(2 * omega)
    return np.array(
        [
            [dx * c2, 0.0, mix * s2],
            [0.0, dy, 0.0],
            [-mix * s2, 0.0, dz * c2],
        ]
    )


@dataclass(frozen=True)
class MeasurementAxes:
    """CHSH settings: ``a``, ``a_prime`` for particle 1 and ``b``, ``b_prime`` for particle 2."""

    a: np.ndarray
    a_prime: np.ndarray
    b: np.ndarray
    b_prime: np.ndarray

    def __post_init__(self):
        for name in ("a", "a_prime", "b", "b_prime"):
            object.__setattr__(self, name, as_unit_vector(getattr(self, name), name))

    def as_array(self):
        return np.stack([self.a, self.a_prime, self.b, self.b_prime])

    @classmethod
    def from_array(cls, arr):
        arr = np.asarray(arr, dtype=float)
        return cls(arr[0], arr[1], arr[2], arr[3])


@dataclass(frozen=True)
class Czachor:
    """Both particles move along +z with rapidity ``xi``; observers at rest."""

    xi: float

    def __post_init__(self):
        object.__setattr__(self, "xi", check_rapidity(self.xi, "xi"))


@dataclass(frozen=True)
class OppositeBoost:
    """Particles along +z and -z with rapidity ``xi``; observer boosted along -x by ``chi``."""

    xi: float
    chi: float

    def __post_init__(self):
        object.__setattr__(self, "xi", check_rapidity(self.xi, "xi"))
        object.__setattr__(self, "chi", check_rapidity(self.chi, "chi"))


@dataclass(frozen=True)
class Unequal:
    """Particles with independent momenta in the x-z plane; observer at rest."""

    xi_p: float
    theta_p: float
    xi_q: float
    theta_q: float

    def __post_init__(self):
        object.__setattr__(self, "xi_p", check_rapidity(self.xi_p, "xi_p"))
        object.__setattr__(self, "xi_q", check_rapidity(self.xi_q, "xi_q"))
        for name in ("theta_p", "theta_q"):
            value = float(getattr(self, name))
            if not 0.0 <= value <= math.pi:
                raise DomainError(f"{name} must lie in [0, pi], got {value!r}")
            object.__setattr__(self, name, value)


Scenario = Union[Czachor, OppositeBoost, Unequal]


def make_scenario(kind, xi=0.0, chi=0.0, xi_p=0.0, theta_p=0.0, xi_q=0.0, theta_q=math.pi):
    """Build a scenario from a name ('czachor', 'opposite', 'unequal') and flat parameters."""
    if kind == "czachor":
        return Czachor(xi)
    if kind == "opposite":
        return OppositeBoost(xi, chi)
    if kind == "unequal":
        return Unequal(xi_p, theta_p, xi_q, theta_q)
    raise DomainError(f"unknown scenario {kind!r}")


def expect_nonrel(state, a, b):
    """<a.sigma (x) b.sigma> for a Bell state with no boost."""
    return float(np.asarray(a) @ correlation_coefficients(state, 0.0) @ np.asarray(b))


def expect_czachor(a, b, xi):
    """Singlet correlation when both particles move along +z with rapidity ``xi``."""
    oa = boost_axis_czachor(a, xi)
    ob = boost_axis_czachor(b, xi)
    # symmetric in a <-> b because the dot product is evaluated term by term
    ch2 = math.cosh(xi) ** 2
    num = a[0] * b[0] + a[1] * b[1] + a[2] * b[2] * ch2
    return -float(num) / (oa.norm * ob.norm)


def _correlate(state, A, B, norm_a, norm_b, omega):
    return float(A @ correlation_coefficients(state, omega) @ B) / (norm_a * norm_b)


def expect_boosted(state, a, b, xi, chi):
    """Correlation for a Bell state in the opposite-momenta setup seen by a boosted observer."""
    kin = derived_kinematics(xi, chi)
    A, B, na, nb = observable_vectors_general(a, b, kin)
    return _correlate(state, A, B, na, nb, kin.omega)


def expect_unequal(a, b, xi_p, theta_p, xi_q, theta_q):
    """Singlet correlation for independent momenta (x-z plane), observer at rest."""
    A, na = observable_vectors_unequal(a, xi_p, theta_p)
    B, nb = observable_vectors_unequal(b, xi_q, theta_q)
    return -float(A @ B) / (na * nb)


def canonical_axes(state=BellKind.PSI_MINUS):
    """Settings reaching C = -2 sqrt(2) for ``state`` without any boost.

    For the singlet these are a = (0, 1, 1)/sqrt2, a' = (0, -1, 1)/sqrt2,
    b = z, b' = y. For the other states b and b' are reflected so the same
    value is reached.
    """
    r = math.sqrt(0.5)
    a = np.array([0.0, r, r])
    a_prime = np.array([0.0, -r, r])
    b = np.array([0.0, 0.0, 1.0])
    b_prime = np.array([0.0, 1.0, 0.0])
    state = BellKind(state)
    if state is not BellKind.PSI_MINUS:
        # E(a, b) = a^T T b; choosing b -> -T b makes E equal to the singlet's -a.b
        t = correlation_coefficients(state, 0.0)
        b, b_prime = -t @ b + 0.0, -t @ b_prime + 0.0
    return MeasurementAxes(a, a_prime, b, b_prime)


def _pair_function(scenario, state):
    state = BellKind(state)
    if isinstance(scenario, Czachor):
        if state is BellKind.PSI_MINUS:
            return lambda a, b: expect_czachor(a, b, scenario.xi)
        xi = scenario.xi

        def czachor_any(a, b):
            oa = boost_axis_czachor(a, xi)
            ob = boost_axis_czachor(b, xi)
            return _correlate(state, oa.vec, ob.vec, oa.norm, ob.norm, 0.0)

        return czachor_any
    if isinstance(scenario, OppositeBoost):
        kin = derived_kinematics(scenario.xi, scenario.chi)
        t = correlation_coefficients(state, kin.omega)

        def boosted(a, b):
            A, B, na, nb = observable_vectors_general(a, b, kin)
            return float(A @ t @ B) / (na * nb)

        return boosted
    if isinstance(scenario, Unequal):
        if state is not BellKind.PSI_MINUS:
            raise UnsupportedScenarioError(
                f"no closed form for {state.value} with unequal momenta; only the singlet is defined"
            )
        s = scenario
        return lambda a, b: expect_unequal(a, b, s.xi_p, s.theta_p, s.xi_q, s.theta_q)
    raise TypeError(f"not a scenario: {scenario!r}")


def bell_observable(scenario, state, axes: MeasurementAxes):
    """C = E(a, b) + E(a, b') + E(a', b) - E(a', b')."""
    e = _pair_function(scenario, state)
    return math.fsum(
        (
            e(axes.a, axes.b),
            e(axes.a, axes.b_prime),
            e(axes.a_prime, axes.b),
            -e(axes.a_prime, axes.b_prime),
        )
    )


def bell_czachor_closed(xi):
    """Singlet Bell observable at the canonical axes, both particles along +z."""
    xi = check_rapidity(xi, "xi")
    return -2.0 * (1.0 + math.cosh(xi)) / math.sqrt(2.0 + math.sinh(xi) ** 2)


def bell_general_closed(xi, chi):
    """Singlet Bell observable at the canonical axes in the opposite-momenta setup."""
    eta, theta, omega = derived_kinematics(xi, chi)
    c, s = math.cos(theta), math.sin(theta)
    ch = math.cosh(eta)
    q = 1.0 + s * s + ch * ch * c * c
    w = s * s + ch * ch * c * c
    longitudinal = ch * c * c - s * s
    bracket = (longitudinal**2 - (1.0 + ch) ** 2 * s * s * c * c) * math.cos(2 * omega) - (
        1.0 + ch
    ) * longitudinal * math.sin(2 * theta) * math.sin(2 * omega)
    return -2.0 / math.sqrt(q) - 2.0 / (math.sqrt(q) * math.sqrt(w)) * bracket
