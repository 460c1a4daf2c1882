"""Multi-start Nelder-Mead search for the largest |C| over measurement directions."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from .corrected import correct_axes
from .expectation import TSIRELSON, MeasurementAxes, bell_observable, canonical_axes

__all__ = [
    "OptimizationReport",
    "angles_to_axes",
    "axes_to_angles",
    "maximize_bell",
    "spherical_to_unit",
]

INITIAL_EDGE = 0.2
MAX_ITER = 5000
NEAR_OPTIMAL = 1e-6


@dataclass(frozen=True)
class OptimizationReport:
    best_axes: MeasurementAxes
    best_value: float
    iterations: int
    restarts: int
    converged: bool
    best_restart: int = 0
    # incumbent best |C| after each iteration, across all restarts in order
    history: tuple = field(default=(), repr=False)
    # distinct settings found within NEAR_OPTIMAL of the best value
    near_optimal: tuple = field(default=(), repr=False)


def spherical_to_unit(theta, phi):
    st = math.sin(theta)
    return np.array([st * math.cos(phi), st * math.sin(phi), math.cos(theta)])


def angles_to_axes(angles):
    angles = np.asarray(angles, dtype=float)
    return MeasurementAxes(*(spherical_to_unit(angles[2 * i], angles[2 * i + 1]) for i in range(4)))


def axes_to_angles(axes: MeasurementAxes):
    out = []
    for v in axes.as_array():
        out.append(math.acos(max(-1.0, min(1.0, v[2]))))
        out.append(math.atan2(v[1], v[0]) % (2 * math.pi))
    return np.array(out)


def _starts(scenario, state, restarts, rng):
    canon = canonical_axes(state)
    starts = [axes_to_angles(correct_axes(scenario, state, canon)), axes_to_angles(canon)]
    while len(starts) < restarts:
        theta = np.arccos(rng.uniform(-1.0, 1.0, 4))
        phi = rng.uniform(0.0, 2 * math.pi, 4)
        starts.append(np.column_stack([theta, phi]).ravel())
    return starts[:restarts]


def _diameter(simplex):
    diffs = simplex[:, None, :] - simplex[None, :, :]
    return float(np.max(np.linalg.norm(diffs, axis=-1)))


def maximize_bell(scenario, state, restarts=8, seed=0, tol=1e-10, max_iter=MAX_ITER):
    """Maximize |C| over the four settings by multi-start Nelder-Mead.

    The first start is the corrected canonical setting, the second the raw
    canonical setting, and the rest are drawn uniformly on the sphere from
    ``seed``. Ties between restarts go to the lowest index.
    """
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    if not tol > 0:
        raise ValueError("tol must be > 0")
    # fail fast on unsupported combinations
    bell_observable(scenario, state, canonical_axes(state))

    def objective(x):
        return -abs(bell_observable(scenario, state, angles_to_axes(x)))

    rng = np.random.default_rng(seed)
    best = None
    history = []
    incumbent = -math.inf
    total_iter = 0
    results = []

    def track(xk):
        nonlocal incumbent
        incumbent = max(incumbent, -objective(xk))
        history.append(incumbent)

    for index, x0 in enumerate(_starts(scenario, state, restarts, rng)):
        simplex = np.vstack([x0, x0 + INITIAL_EDGE * np.eye(8)])
        res = minimize(
            objective,
            x0,
            method="Nelder-Mead",
            callback=track,
            options={
                "initial_simplex": simplex,
                "xatol": tol / 2,
                "fatol": tol,
                "maxiter": max_iter,
                "maxfev": 4 * max_iter,
                "adaptive": False,
            },
        )
        total_iter += res.nit
        axes = angles_to_axes(res.x)
        value = abs(bell_observable(scenario, state, axes))
        converged = _diameter(res.final_simplex[0]) < tol and res.nit < max_iter
        results.append((value, axes))
        if best is None or value > best[0]:
            best = (value, axes, converged, index)

    value, axes, converged, index = best
    near = []
    for v, ax in results:
        if value - v <= NEAR_OPTIMAL and not any(
            np.allclose(ax.as_array(), other.as_array(), atol=NEAR_OPTIMAL) for other in near
        ):
            near.append(ax)
    assert value <= TSIRELSON + 1e-9, value
    return OptimizationReport(
        best_axes=axes,
        best_value=value,
        iterations=total_iter,
        restarts=restarts,
        converged=converged,
        best_restart=index,
        history=tuple(history),
        near_optimal=tuple(near),
    )
