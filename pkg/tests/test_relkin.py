import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import reference as ref
from relbell._errors import DomainError
from relbell.relkin import (
    RAPIDITY_CAP,
    as_unit_vector,
    boost_z,
    derived_kinematics,
    minkowski_norm,
    rapidity_from_beta,
    rotation_to_momentum,
    wigner_angle,
)


class TestRapidity:
    def test_rest(self):
        assert rapidity_from_beta(0.0) == 0.0

    def test_known_value(self):
        beta = 0.9640275800758169
        expected = float(ref.mp.atanh(ref.mp.mpf(beta)))
        assert rapidity_from_beta(beta) == pytest.approx(expected, abs=1e-12)
        assert rapidity_from_beta(beta) == pytest.approx(2.0, abs=1e-12)

    @pytest.mark.parametrize("beta", [1.0, -1.0, 1.5, float("nan")])
    def test_superluminal_rejected(self, beta):
        with pytest.raises(DomainError):
            rapidity_from_beta(beta)

    @given(st.floats(-0.999999, 0.999999))
    def test_tanh_roundtrip(self, beta):
        assert math.tanh(rapidity_from_beta(beta)) == pytest.approx(beta, abs=1e-14)

    def test_cap(self):
        with pytest.raises(DomainError):
            derived_kinematics(RAPIDITY_CAP + 1, 0.0)
        derived_kinematics(RAPIDITY_CAP, RAPIDITY_CAP)


class TestBoost:
    def test_identity(self):
        np.testing.assert_array_equal(boost_z(0.0), np.eye(4))

    def test_unit_z(self):
        xi = 0.83
        out = boost_z(xi) @ np.array([0.0, 0.0, 0.0, 1.0])
        np.testing.assert_allclose(out, [-math.sinh(xi), 0, 0, math.cosh(xi)], atol=1e-15)

    @pytest.mark.parametrize("xi", [0.1, 1.0, 5.0, 20.0])
    def test_inverse_symmetric_unimodular(self, xi):
        m = boost_z(xi)
        np.testing.assert_array_equal(m, m.T)
        assert np.linalg.det(m) == pytest.approx(1.0, abs=1e-12 * math.cosh(xi) ** 2)
        np.testing.assert_allclose(m @ boost_z(-xi), np.eye(4), atol=1e-12 * math.cosh(xi) ** 2)

    def test_preserves_minkowski_norm(self, rng):
        for _ in range(1000):
            xi = rng.uniform(-5, 5)
            p = rng.normal(size=4) * 3
            q = boost_z(xi) @ p
            scale = np.max(np.abs(q)) ** 2
            assert abs(minkowski_norm(q) - minkowski_norm(p)) <= 1e-10 * scale


class TestRotation:
    def test_identity(self):
        np.testing.assert_array_equal(rotation_to_momentum(0.0, 0.0), np.eye(3))

    def test_z_to_x(self):
        np.testing.assert_allclose(rotation_to_momentum(math.pi / 2, 0) @ [0, 0, 1], [1, 0, 0], atol=1e-16)

    def test_entries_match_elementary_product(self):
        expected = np.array(ref.rotation_matrix(0.7, 1.1).tolist(), dtype=float)
        np.testing.assert_allclose(rotation_to_momentum(0.7, 1.1), expected, atol=1e-15)

    @given(st.floats(0, math.pi), st.floats(0, 2 * math.pi))
    def test_orthogonal(self, theta, phi):
        r = rotation_to_momentum(theta, phi)
        np.testing.assert_allclose(r.T @ r, np.eye(3), atol=1e-12)
        assert np.linalg.det(r) == pytest.approx(1.0, abs=1e-12)
        st_, ct = math.sin(theta), math.cos(theta)
        np.testing.assert_allclose(r @ [0, 0, 1], [math.cos(phi) * st_, math.sin(phi) * st_, ct], atol=1e-15)


class TestWignerAngle:
    def test_particle_at_rest(self):
        assert wigner_angle(0.0, 2.0) == 0.0

    def test_unit_rapidities(self):
        # independent 50-digit evaluation gives 0.420784 (see decisions log for the 0.42090 figure)
        assert wigner_angle(1.0, 1.0) == pytest.approx(float(ref.wigner(1, 1)), abs=1e-15)
        assert wigner_angle(1.0, 1.0) == pytest.approx(0.420784, abs=1e-6)

    def test_ultra_relativistic_limit(self):
        assert wigner_angle(20.0, 20.0) == pytest.approx(math.pi / 2, abs=1e-6)

    @given(st.floats(0, 30), st.floats(0, 30))
    def test_symmetric_and_bounded(self, xi, chi):
        w = wigner_angle(xi, chi)
        assert w == wigner_angle(chi, xi)
        assert 0.0 <= w < math.pi / 2 or math.isclose(w, math.pi / 2)


class TestDerivedKinematics:
    def test_no_observer_boost(self):
        kin = derived_kinematics(1.7, 0.0)
        assert kin.eta == pytest.approx(1.7, rel=1e-15)
        assert kin.theta_lambda == 0.0 and kin.omega == 0.0

    def test_particle_at_rest(self):
        kin = derived_kinematics(0.0, 1.3)
        assert kin.eta == pytest.approx(1.3, rel=1e-15)
        assert kin.theta_lambda == math.pi / 2
        assert kin.omega == 0.0

    def test_unit_rapidities(self):
        assert math.cosh(derived_kinematics(1, 1).eta) == pytest.approx(math.cosh(1) ** 2, abs=1e-12)
        assert math.cosh(derived_kinematics(1, 1).eta) == pytest.approx(2.381097, abs=1e-6)

    def test_small_rapidities_keep_precision(self):
        kin = derived_kinematics(1e-9, 0.0)
        assert kin.eta == pytest.approx(1e-9, rel=1e-12)

    def test_eta_definitions_agree_on_grid(self):
        grid = np.linspace(0, 20, 50)
        for xi in grid:
            for chi in grid:
                eta = derived_kinematics(xi, chi).eta
                ce = math.cosh(eta)
                assert abs(ce - math.cosh(xi) * math.cosh(chi)) / ce < 1e-12
                other = math.sqrt(math.tanh(xi) ** 2 + math.sinh(chi) ** 2) / math.cosh(chi)
                assert math.tanh(eta) == pytest.approx(other, abs=1e-12)


def test_unit_vector_validation():
    with pytest.raises(DomainError):
        as_unit_vector([1.0, 1.0, 0.0])
    np.testing.assert_allclose(as_unit_vector([3.0, 0, 4.0], normalize=True), [0.6, 0, 0.8])
