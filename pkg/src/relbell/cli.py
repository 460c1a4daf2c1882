"""Command-line interface.

Exit codes: 0 success, 2 invalid input, 3 numerical failure.
"""
from __future__ import annotations

import argparse
import csv
import math
import sys

import numpy as np

from . import oracle
from ._errors import RelBellError
from .corrected import (
    correct_axes,
    corrected_axes_general,
    corrected_axes_unequal,
    corrected_axis_czachor,
)
from .expectation import (
    TSIRELSON,
    BellKind,
    Czachor,
    MeasurementAxes,
    OppositeBoost,
    bell_observable,
    canonical_axes,
    expect_boosted,
    make_scenario,
)
from .optimizer import maximize_bell
from .relkin import as_unit_vector, derived_kinematics, rapidity_from_beta, wigner_angle

EXIT_INVALID = 2
EXIT_NUMERICAL = 3


class NumericalFailure(Exception):
    pass


def fmt(x):
    """Shortest round-trip decimal for a float."""
    return repr(float(x))


def fmt_vec(v):
    return ",".join(fmt(c) for c in v)


def parse_vector(text):
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected x,y,z but got {text!r}")
    try:
        return np.array([float(p) for p in parts])
    except ValueError:
        raise argparse.ArgumentTypeError(f"malformed vector {text!r}") from None


def _add_kinematics(p, scenario=True):
    if scenario:
        p.add_argument("--scenario", choices=["czachor", "opposite", "unequal"], default="opposite")
        p.add_argument("--state", choices=[k.value for k in BellKind], default="psi-")
    p.add_argument("--xi", type=float, default=0.0, help="particle rapidity")
    p.add_argument("--chi", type=float, default=0.0, help="observer rapidity")
    if scenario:
        p.add_argument("--xi-p", type=float, default=0.0)
        p.add_argument("--theta-p", type=float, default=0.0)
        p.add_argument("--xi-q", type=float, default=0.0)
        p.add_argument("--theta-q", type=float, default=None, help="default pi (180 deg)")
    p.add_argument("--beta", action="store_true", help="read rapidity flags as velocities v/c")
    p.add_argument("--degrees", action="store_true", help="read angle flags in degrees")


def _add_axes(p, names):
    for name in names:
        p.add_argument(f"--{name}", type=parse_vector, metavar="X,Y,Z")
    p.add_argument("--normalize", action="store_true", help="rescale near-unit axes")


def _rapidity(args, name):
    value = getattr(args, name)
    return rapidity_from_beta(value) if args.beta else value


def _angle(args, name, default):
    value = getattr(args, name)
    if value is None:
        return default
    return math.radians(value) if args.degrees else value


def _scenario(args):
    return make_scenario(
        args.scenario,
        xi=_rapidity(args, "xi"),
        chi=_rapidity(args, "chi"),
        xi_p=_rapidity(args, "xi_p"),
        theta_p=_angle(args, "theta_p", 0.0),
        xi_q=_rapidity(args, "xi_q"),
        theta_q=_angle(args, "theta_q", math.pi),
    )


def _axis(args, name, required=True):
    value = getattr(args, name)
    if value is None:
        if required:
            raise RelBellError(f"--{name.replace('_', '-')} is required")
        return None
    if args.normalize:
        if abs(np.linalg.norm(value) - 1.0) > 1e-3:
            raise RelBellError(f"--{name} is too far from unit length to normalize")
        return as_unit_vector(value, name, normalize=True)
    return as_unit_vector(value, name, tol=1e-6)


def _settings(args):
    if args.canonical:
        return canonical_axes(args.state)
    return MeasurementAxes(*(_axis(args, n) for n in ("a", "a_prime", "b", "b_prime")))


def cmd_wigner(args, out):
    print(fmt(wigner_angle(_rapidity(args, "xi"), _rapidity(args, "chi"))), file=out)


def cmd_expect(args, out):
    scenario = _scenario(args)
    a, b = _axis(args, "a"), _axis(args, "b")
    axes = MeasurementAxes(a, a, b, b)
    # C(a, a, b, b) = 2 E(a, b); reuse the scenario dispatch of bell_observable
    print(fmt(bell_observable(scenario, args.state, axes) / 2.0), file=out)


def cmd_bell(args, out):
    scenario = _scenario(args)
    axes = _settings(args)
    if args.corrected:
        axes = correct_axes(scenario, args.state, axes)
    print(fmt(bell_observable(scenario, args.state, axes)), file=out)


def cmd_correct(args, out):
    scenario = _scenario(args)
    if args.axis is not None:
        axis = _axis(args, "axis")
        if isinstance(scenario, Czachor):
            print(fmt_vec(corrected_axis_czachor(axis, scenario.xi)), file=out)
            return
        a, b = axis, axis
    else:
        a, b = _axis(args, "a"), _axis(args, "b")
    if isinstance(scenario, Czachor):
        pair = corrected_axes_general(args.state, a, b, scenario.xi, 0.0)
    elif isinstance(scenario, OppositeBoost):
        pair = corrected_axes_general(args.state, a, b, scenario.xi, scenario.chi)
    else:
        bell_observable(scenario, args.state, canonical_axes(args.state))
        s = scenario
        pair = corrected_axes_unequal(a, b, s.xi_p, s.theta_p, s.xi_q, s.theta_q)
    if pair.residual > args.tol:
        raise NumericalFailure(f"residual {pair.residual!r} exceeds {args.tol!r}")
    if args.axis is not None:
        print(fmt_vec(pair.a_c if args.side == "particle1" else pair.b_c), file=out)
    else:
        print(fmt_vec(pair.a_c), file=out)
        print(fmt_vec(pair.b_c), file=out)


def sweep_rows(xis, chis, state):
    """Rows (xi, chi, omega, bell_raw, bell_corrected) in grid order, xi outermost."""
    canon = canonical_axes(state)
    for xi in xis:
        for chi in chis:
            scenario = OppositeBoost(xi, chi)
            raw = bell_observable(scenario, state, canon)
            corrected = bell_observable(scenario, state, correct_axes(scenario, state, canon))
            yield (scenario.xi, scenario.chi, derived_kinematics(xi, chi).omega, raw, corrected)


def cmd_sweep(args, out):
    xis = np.linspace(args.xi_min, args.xi_max, args.xi_steps)
    chis = np.linspace(args.chi_min, args.chi_max, args.chi_steps)
    if args.beta:
        xis = [rapidity_from_beta(x) for x in xis]
        chis = [rapidity_from_beta(x) for x in chis]
    rows = list(sweep_rows(xis, chis, args.state))
    try:
        handle = open(args.out, "w", newline="", encoding="utf-8") if args.out else out
    except OSError as exc:
        raise RelBellError(f"cannot write {args.out}: {exc}") from None
    try:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["xi", "chi", "omega", "bell_raw", "bell_corrected"])
        for row in rows:
            writer.writerow([fmt(v) for v in row])
    finally:
        if handle is not out:
            handle.close()
    worst = max(abs(r[4] + TSIRELSON) for r in rows)
    if worst > args.tol:
        raise NumericalFailure(f"corrected Bell value off by {worst!r}")


def cmd_optimize(args, out):
    report = maximize_bell(_scenario(args), args.state, args.restarts, args.seed, args.tol)
    print(f"best_value={fmt(report.best_value)}", file=out)
    for name, v in zip(("a", "a_prime", "b", "b_prime"), report.best_axes.as_array()):
        print(f"{name}={fmt_vec(v)}", file=out)
    print(f"iterations={report.iterations}", file=out)
    print(f"converged={str(report.converged).lower()}", file=out)
    if args.strict and not report.converged:
        raise NumericalFailure("optimizer did not converge")


def _random_unit(rng):
    v = rng.normal(size=3)
    return v / np.linalg.norm(v)


def run_checks(seed, trials, tol=1e-10, inject_fault=False):
    """Oracle-equivalence, sigma-relation and state-table suites.

    Returns a list of ``(suite, max_deviation, failing_tuple_or_None)``.
    """
    rng = np.random.default_rng(seed)
    kinds = list(BellKind)
    relations = oracle.SIGMA_RELATIONS
    if inject_fault:
        (ij, first, (ks, second)), *rest = relations
        relations = ((ij, first, (-ks, second)), *rest)

    worst, failing = 0.0, None
    for _ in range(trials):
        kind = kinds[rng.integers(4)]
        xi, chi = rng.uniform(0.0, 5.0, 2)
        a, b = _random_unit(rng), _random_unit(rng)
        dev = abs(expect_boosted(kind, a, b, xi, chi) - oracle.oracle_expect_boosted(kind, a, b, xi, chi))
        if dev > worst:
            worst = dev
            if dev > tol:
                failing = (kind.value, xi, chi, tuple(a), tuple(b))
    results = [("closed_form_vs_oracle", worst, failing)]

    worst, failing = 0.0, None
    for omega in rng.uniform(0.0, math.pi / 2, trials):
        if not oracle.verify_sigma_relations(omega, relations, tol=1e-12):
            worst, failing = math.inf, (omega,)
            break
    results.append(("sigma_relations", worst, failing))

    worst, failing = 0.0, None
    for omega in rng.uniform(0.0, math.pi / 2, min(trials, 50)):
        for kind in kinds:
            dev = float(np.max(np.abs(oracle.transformed_state(kind, omega) - oracle.transform_bell(kind, omega))))
            worst = max(worst, dev)
            if dev > 1e-12 and failing is None:
                failing = (kind.value, omega)
    results.append(("wigner_table", worst, failing))
    return results


def cmd_check(args, out):
    if args.trials < 1:
        raise RelBellError("--trials must be >= 1")
    results = run_checks(args.seed, args.trials, args.tol, args.inject_fault)
    bad = None
    for suite, worst, failing in results:
        print(f"{suite}: max_deviation={fmt(worst)}", file=out)
        if failing is not None and bad is None:
            bad = (suite, failing)
    if bad is not None:
        raise NumericalFailure(f"{bad[0]} failed at {bad[1]!r}")


def build_parser():
    parser = argparse.ArgumentParser(prog="relbell", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("wigner", help="Wigner angle for (xi, chi)")
    _add_kinematics(p, scenario=False)
    p.set_defaults(func=cmd_wigner)

    p = sub.add_parser("expect", help="joint spin correlation <a (x) b>")
    _add_kinematics(p)
    _add_axes(p, ["a", "b"])
    p.set_defaults(func=cmd_expect)

    p = sub.add_parser("bell", help="CHSH observable C(a, a', b, b')")
    _add_kinematics(p)
    _add_axes(p, ["a", "a-prime", "b", "b-prime"])
    p.add_argument("--canonical", action="store_true", help="use the maximal-violation settings")
    p.add_argument("--corrected", action="store_true", help="correct the settings for the boost")
    p.set_defaults(func=cmd_bell)

    p = sub.add_parser("correct", help="corrected measurement axes")
    _add_kinematics(p)
    _add_axes(p, ["axis", "a", "b"])
    p.add_argument("--side", choices=["particle1", "particle2"], default="particle1")
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=cmd_correct)

    p = sub.add_parser("sweep", help="CSV of raw and corrected Bell values over a (xi, chi) grid")
    p.add_argument("--state", choices=[k.value for k in BellKind], default="psi-")
    for name, hi in (("xi", 3.0), ("chi", 3.0)):
        p.add_argument(f"--{name}-min", type=float, default=0.0)
        p.add_argument(f"--{name}-max", type=float, default=hi)
        p.add_argument(f"--{name}-steps", type=int, default=7)
    p.add_argument("--beta", action="store_true", help="grid values are velocities v/c")
    p.add_argument("--out", help="CSV path (default stdout)")
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("optimize", help="maximize |C| over the settings")
    _add_kinematics(p)
    p.add_argument("--restarts", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--strict", action="store_true", help="exit 3 if not converged")
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("check", help="run the oracle self-checks")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_check)
    return parser


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args, out)
    except NumericalFailure as exc:
        print(f"relbell: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (RelBellError, ValueError) as exc:
        print(f"relbell: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    return 0


if __name__ == "__main__":
    sys.exit(main())
