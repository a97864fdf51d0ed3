import numpy as np
import pytest

from dment.errors import DimensionMismatchError, LabelCollisionError, NormalizationError
from dment.states import (DensityMatrix, PureState, compose, env_qubit, ghz_state, purity,
                          to_density, validate_density, w_state)

S3 = 1 / np.sqrt(3)
S2 = 1 / np.sqrt(2)


class TestWState:
    def test_symmetric(self):
        psi = w_state(S3, S3, S3, normalize=True)
        assert psi.labels == ("A", "B", "C")
        expected = np.zeros(8)
        expected[[1, 2, 4]] = S3
        assert np.abs(psi.amplitudes - expected).max() < 1e-12

    def test_single_term(self):
        psi = w_state(1.0, 0.0, 0.0)
        assert np.abs(psi.amplitudes - np.eye(8)[1]).max() == 0

    def test_two_term(self):
        psi = w_state(0.6, 0.8, 0.0)
        expected = np.zeros(8)
        expected[1], expected[2] = 0.6, 0.8
        assert np.abs(psi.amplitudes - expected).max() < 1e-12

    def test_rejects_truncated_decimals(self):
        # 0.577 for 1/sqrt(3) misses normalization by ~1e-3 and must not be
        # silently absorbed
        with pytest.raises(NormalizationError):
            w_state(0.577, 0.577, 0.577)

    def test_normalize_flag(self):
        psi = w_state(0.577, 0.577, 0.577, normalize=True)
        assert abs(np.vdot(psi.amplitudes, psi.amplitudes).real - 1) < 1e-12

    def test_negative_amplitudes_allowed(self):
        psi = w_state(0.6, -0.8, 0.0)
        assert psi.amplitudes[2] == -0.8

    def test_injective(self, rng):
        for _ in range(20):
            a = rng.normal(size=3)
            a /= np.linalg.norm(a)
            b = rng.normal(size=3)
            b /= np.linalg.norm(b)
            if np.abs(a - b).max() <= 1e-12:
                continue
            pa = w_state(*a, normalize=True)
            pb = w_state(*b, normalize=True)
            assert np.abs(pa.amplitudes - pb.amplitudes).max() > 1e-12


class TestGhzState:
    def test_balanced(self):
        psi = ghz_state(S2, S2, normalize=True)
        assert abs(psi.amplitudes[0] - S2) < 1e-12
        assert abs(psi.amplitudes[7] - S2) < 1e-12
        assert np.abs(psi.amplitudes[1:7]).max() == 0

    def test_product_limit(self):
        psi = ghz_state(1.0, 0.0)
        assert psi.amplitudes[0] == 1.0

    def test_generic(self):
        psi = ghz_state(0.8, 0.6)
        assert psi.amplitudes[0] == 0.8 and psi.amplitudes[7] == 0.6

    def test_rejects_unnormalized(self):
        with pytest.raises(NormalizationError):
            ghz_state(0.7, 0.6)


class TestEnvQubit:
    def test_ground(self):
        psi = env_qubit(1, 0)
        assert psi.labels == ("D",)
        assert np.array_equal(psi.amplitudes, [1, 0])

    def test_complex_phase(self):
        psi = env_qubit(S2, 1j * S2, normalize=True)
        assert abs(psi.amplitudes[1] - 1j * S2) < 1e-12

    def test_real_pair(self):
        psi = env_qubit(0.6, 0.8)
        assert np.abs(psi.amplitudes - np.array([0.6, 0.8])).max() < 1e-12


class TestToDensity:
    def test_ground_qubit(self):
        rho = to_density(env_qubit(1, 0))
        assert np.array_equal(rho.matrix, np.diag([1.0, 0.0]).astype(complex))

    def test_balanced_ghz_entries(self):
        rho = to_density(ghz_state(S2, S2, normalize=True))
        for i, j in [(0, 0), (0, 7), (7, 0), (7, 7)]:
            assert abs(rho.matrix[i, j] - 0.5) < 1e-12
        mask = np.ones((8, 8), dtype=bool)
        mask[np.ix_([0, 7], [0, 7])] = False
        assert np.abs(rho.matrix[mask]).max() == 0

    def test_symmetric_w_entries(self):
        rho = to_density(w_state(S3, S3, S3, normalize=True))
        for i in (1, 2, 4):
            for j in (1, 2, 4):
                assert abs(rho.matrix[i, j] - 1 / 3) < 1e-12

    def test_purity_one(self, rng):
        v = rng.normal(size=8) + 1j * rng.normal(size=8)
        v /= np.linalg.norm(v)
        rho = to_density(PureState(v, ("A", "B", "C")))
        assert abs(purity(rho) - 1) < 1e-12
        validate_density(rho)


class TestCompose:
    def test_trace_one(self):
        rho = compose(to_density(w_state(S3, S3, S3, normalize=True)),
                      to_density(env_qubit(0.6, 0.8)))
        assert abs(np.trace(rho.matrix) - 1) < 1e-12
        assert rho.labels == ("A", "B", "C", "D")

    def test_projector_onto_zero(self):
        rho = compose(to_density(ghz_state(1, 0)), to_density(env_qubit(1, 0)))
        expected = np.zeros((16, 16))
        expected[0, 0] = 1.0
        assert np.abs(rho.matrix - expected).max() == 0

    def test_label_collision(self):
        with pytest.raises(LabelCollisionError):
            compose(to_density(w_state(1, 0, 0)), to_density(env_qubit(1, 0, label="B")))

    def test_purity_multiplicative(self, rng):
        g = rng.normal(size=(8, 2)) + 1j * rng.normal(size=(8, 2))
        sys_m = g @ g.conj().T
        sys_m /= np.trace(sys_m).real
        e = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        env_m = e @ e.conj().T
        env_m /= np.trace(env_m).real
        sys_rho = DensityMatrix(sys_m, ("A", "B", "C"))
        env_rho = DensityMatrix(env_m, ("D",))
        got = purity(compose(sys_rho, env_rho))
        assert abs(got - purity(sys_rho) * purity(env_rho)) < 1e-12


class TestInvariantEnforcement:
    def test_pure_state_norm_guard(self):
        with pytest.raises(NormalizationError):
            PureState(np.array([1.0, 1.0]), ("D",))

    def test_density_shape_guard(self):
        with pytest.raises(DimensionMismatchError):
            DensityMatrix(np.eye(4, dtype=complex), ("A",))

    def test_validate_rejects_unnormalized_trace(self):
        bad = DensityMatrix(np.eye(2, dtype=complex), ("D",))
        with pytest.raises(NormalizationError):
            validate_density(bad)

    def test_validate_rejects_negative_eigenvalue(self):
        m = np.diag([1.5, -0.5]).astype(complex)
        with pytest.raises(NormalizationError):
            validate_density(DensityMatrix(m, ("D",)))
