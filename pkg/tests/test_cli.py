import csv
import io
import math

import numpy as np
import pytest

from relbell.cli import main, run_checks
from relbell.expectation import TSIRELSON, bell_czachor_closed, expect_boosted
from relbell.relkin import wigner_angle


def run(*argv):
    buf = io.StringIO()
    code = main(list(argv), out=buf)
    return code, buf.getvalue()


def test_bell_canonical_at_rest():
    assert run("bell", "--scenario", "czachor", "--xi", "0", "--state", "psi-", "--canonical") == (
        0,
        "-2.8284271247461903\n",
    )


def test_wigner():
    code, text = run("wigner", "--xi", "1", "--chi", "1")
    assert code == 0
    assert float(text) == wigner_angle(1.0, 1.0)
    assert float(text) == pytest.approx(0.420784, abs=1e-6)


def test_correct_z_fixed_point():
    code, text = run("correct", "--scenario", "czachor", "--xi", "2", "--axis", "0,0,1")
    assert code == 0
    np.testing.assert_allclose([float(v) for v in text.split(",")], [0, 0, 1], atol=1e-15)


def test_expect_equals_library_exactly():
    a, b = np.array([0.6, 0.0, 0.8]), np.array([0.0, 0.8, 0.6])
    code, text = run("expect", "--xi", "1.1", "--chi", "0.3", "--state", "phi+", "--a", "0.6,0,0.8", "--b", "0,0.8,0.6")
    assert code == 0
    assert float(text) == expect_boosted("phi+", a, b, 1.1, 0.3)


def test_corrected_bell_restores_maximum():
    code, text = run("bell", "--xi", "1", "--chi", "1", "--state", "phi-", "--canonical", "--corrected")
    assert code == 0 and float(text) == pytest.approx(-TSIRELSON, abs=1e-9)


def test_beta_and_degrees():
    _, by_beta = run("wigner", "--xi", str(math.tanh(1.0)), "--chi", str(math.tanh(1.0)), "--beta")
    assert float(by_beta) == pytest.approx(wigner_angle(1.0, 1.0), abs=1e-14)
    code, _ = run("expect", "--scenario", "unequal", "--xi-p", "1", "--theta-p", "30", "--xi-q", "1",
                  "--degrees", "--a", "0,0,1", "--b", "1,0,0")
    assert code == 0


@pytest.mark.parametrize(
    "argv",
    [
        ("expect", "--a", "1,1,0", "--b", "0,0,1"),
        ("wigner", "--xi", "1.0", "--chi", "0.5", "--beta"),
        ("wigner", "--xi", "400", "--chi", "0"),
        ("bell", "--scenario", "unequal", "--state", "phi+", "--xi-p", "1", "--canonical"),
        ("check", "--trials", "0"),
    ],
)
def test_invalid_input_exit_two(argv):
    assert run(*argv)[0] == 2


def test_malformed_vector_exit_two(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["expect", "--a", "1,0", "--b", "0,0,1"])
    assert exc.value.code == 2


def test_normalize_flag():
    assert run("expect", "--a", "0,0,1.0005", "--b", "0,0,1")[0] == 2
    code, text = run("expect", "--a", "0,0,1.0005", "--b", "0,0,1", "--normalize")
    assert code == 0 and float(text) == -1.0


def read_sweep(*extra):
    code, text = run("sweep", *extra)
    assert code == 0
    return text, list(csv.DictReader(io.StringIO(text)))


class TestSweep:
    def test_header_and_grid_order(self):
        text, rows = read_sweep("--xi-max", "1", "--xi-steps", "2", "--chi-max", "1", "--chi-steps", "2")
        assert text.splitlines()[0] == "xi,chi,omega,bell_raw,bell_corrected"
        assert [(float(r["xi"]), float(r["chi"])) for r in rows] == [(0, 0), (0, 1), (1, 0), (1, 1)]
        assert "\r" not in text

    def test_particles_at_rest_rows(self):
        _, rows = read_sweep("--xi-max", "0", "--xi-steps", "1", "--chi-max", "3", "--chi-steps", "4")
        for r in rows:
            assert float(r["bell_raw"]) == pytest.approx(-TSIRELSON, abs=1e-12)

    def test_observer_at_rest_rows(self):
        _, rows = read_sweep("--xi-max", "2", "--xi-steps", "3", "--chi-max", "0", "--chi-steps", "1")
        for r in rows:
            xi = float(r["xi"])
            expected = -2 * (1 + math.cosh(xi)) / math.sqrt(2 + math.sinh(xi) ** 2)
            assert float(r["bell_raw"]) == pytest.approx(expected, abs=1e-10)

    def test_corrected_column_constant(self):
        _, rows = read_sweep("--state", "psi+", "--xi-max", "3", "--chi-max", "3")
        for r in rows:
            assert float(r["bell_corrected"]) == pytest.approx(-TSIRELSON, abs=1e-9)

    def test_byte_stable(self, tmp_path):
        p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
        assert run("sweep", "--out", str(p1))[0] == 0
        assert run("sweep", "--out", str(p2))[0] == 0
        assert p1.read_bytes() == p2.read_bytes()

    def test_unwritable_path(self, tmp_path):
        assert run("sweep", "--out", str(tmp_path / "missing" / "x.csv"))[0] == 2


def test_optimize_output():
    code, text = run("optimize", "--scenario", "czachor", "--xi", "2", "--restarts", "2", "--strict")
    assert code == 0
    fields = dict(line.split("=", 1) for line in text.splitlines())
    assert float(fields["best_value"]) == pytest.approx(TSIRELSON, abs=1e-6)
    assert fields["converged"] == "true"


class TestCheck:
    def test_passes(self):
        code, text = run("check", "--seed", "42", "--trials", "200")
        assert code == 0
        for line in text.splitlines():
            assert float(line.split("=")[1]) < 1e-10

    def test_injected_fault(self):
        assert run("check", "--trials", "5", "--inject-fault")[0] == 3

    def test_suites_reported(self):
        names = [suite for suite, _, _ in run_checks(1, 10)]
        assert names == ["closed_form_vs_oracle", "sigma_relations", "wigner_table"]


def test_czachor_curve_via_cli():
    for xi in ("0.5", "3"):
        code, text = run("bell", "--scenario", "czachor", "--xi", xi, "--canonical")
        assert float(text) == pytest.approx(bell_czachor_closed(float(xi)), abs=1e-12)
