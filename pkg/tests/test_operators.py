"""Generator algebra, eigendecomposition and the phase-insensitive metric."""

import numpy as np
import pytest

from quditwells.operators import (
    commutator,
    gell_mann,
    global_phase_distance,
    hermitian_eig,
    is_hermitian,
    is_unitary,
    pauli,
    structure_constants,
    unitary_exp,
)

SQRT3 = np.sqrt(3.0)


def random_hermitian(dim, rng):
    a = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return (a + a.conj().T) / 2


class TestPauli:
    def test_values(self):
        np.testing.assert_array_equal(pauli(1), [[0, 1], [1, 0]])
        np.testing.assert_array_equal(pauli(2), [[0, -1j], [1j, 0]])
        np.testing.assert_array_equal(pauli(3), [[1, 0], [0, -1]])

    def test_involution(self):
        for i in (1, 2, 3):
            np.testing.assert_allclose(pauli(i) @ pauli(i), np.eye(2), atol=0)

    def test_commutator(self):
        # direct 2x2 multiplication as the oracle
        lhs = pauli(1) @ pauli(2) - pauli(2) @ pauli(1)
        np.testing.assert_allclose(lhs, 2j * pauli(3), atol=0)
        np.testing.assert_allclose(commutator(pauli(1), pauli(2)), 2j * pauli(3), atol=0)

    def test_index_out_of_range(self):
        for bad in (0, 4, -1):
            with pytest.raises(ValueError):
                pauli(bad)


class TestGellMann:
    def test_lambda8(self):
        np.testing.assert_allclose(gell_mann(8), np.diag([1, 1, -2]) / SQRT3)

    def test_traceless_hermitian_normalized(self):
        for a in range(1, 9):
            la = gell_mann(a)
            assert abs(np.trace(la)) == 0
            assert is_hermitian(la)
            for b in range(1, 9):
                tr = np.trace(la @ gell_mann(b))
                assert tr.real == pytest.approx(2.0 if a == b else 0.0, abs=1e-14)

    def test_lambda3_lambda8_orthogonal(self):
        assert np.trace(gell_mann(3) @ gell_mann(8)) == pytest.approx(0.0, abs=1e-15)

    def test_index_out_of_range(self):
        for bad in (0, 9):
            with pytest.raises(ValueError):
                gell_mann(bad)


class TestStructureConstants:
    # independent triples of the standard table
    TABLE = {
        (1, 2, 3): 1.0,
        (1, 4, 7): 0.5,
        (1, 5, 6): -0.5,
        (2, 4, 6): 0.5,
        (2, 5, 7): 0.5,
        (3, 4, 5): 0.5,
        (3, 6, 7): -0.5,
        (4, 5, 8): SQRT3 / 2,
        (6, 7, 8): SQRT3 / 2,
    }

    def test_table(self):
        f = structure_constants()
        for key, val in self.TABLE.items():
            assert f[key] == pytest.approx(val, abs=1e-14)

    def test_repeated_index_vanishes(self):
        f = structure_constants()
        for i in range(1, 9):
            for k in range(1, 9):
                assert (i, i, k) not in f

    def test_complete_antisymmetry(self):
        f = structure_constants()
        for (i, j, k), val in f.items():
            assert f.get((j, i, k), 0.0) == pytest.approx(-val, abs=1e-14)
            assert f.get((i, k, j), 0.0) == pytest.approx(-val, abs=1e-14)
            assert f.get((j, k, i), 0.0) == pytest.approx(val, abs=1e-14)

    def test_nonzero_count(self):
        # 9 independent triples, each appearing in 6 orderings
        assert len(structure_constants()) == 54

    def test_commutator_reconstruction(self):
        f = structure_constants()
        for i in range(1, 9):
            for j in range(1, 9):
                rhs = sum(
                    2j * f.get((i, j, k), 0.0) * gell_mann(k) for k in range(1, 9)
                )
                np.testing.assert_allclose(
                    commutator(gell_mann(i), gell_mann(j)), rhs, atol=1e-12
                )


class TestHermitianEig:
    def test_double_well(self):
        nu = 1.7
        spec = hermitian_eig(-nu * pauli(1))
        np.testing.assert_allclose(spec.eigenvalues, [-nu, nu], atol=1e-14)

    def test_identity_degeneracy(self):
        spec = hermitian_eig(np.eye(3))
        np.testing.assert_allclose(spec.eigenvalues, [1, 1, 1])
        assert spec.degeneracy_groups == ((0, 1, 2),)

    def test_triple_well(self):
        h = -np.array([[0, 1, 1], [1, 0, 1], [1, 1, 0]], dtype=complex)
        spec = hermitian_eig(h)
        np.testing.assert_allclose(spec.eigenvalues, [-2, 1, 1], atol=1e-12)
        assert spec.degeneracy_groups == ((0,), (1, 2))

    def test_reconstruction_and_orthonormality(self):
        rng = np.random.default_rng(42)
        for dim in (2, 3, 5, 8, 16):
            h = random_hermitian(dim, rng)
            spec = hermitian_eig(h)
            v = spec.eigenvectors
            assert np.linalg.norm(v.conj().T @ v - np.eye(dim)) < 1e-10
            recon = v @ np.diag(spec.eigenvalues) @ v.conj().T
            assert np.linalg.norm(recon - h) < 1e-10

    def test_phase_fix(self):
        rng = np.random.default_rng(3)
        spec = hermitian_eig(random_hermitian(6, rng))
        for k in range(6):
            col = spec.eigenvectors[:, k]
            lead = col[np.flatnonzero(np.abs(col) > 1e-12)[0]]
            assert lead.imag == pytest.approx(0.0, abs=1e-12)
            assert lead.real > 0

    def test_deterministic(self):
        rng = np.random.default_rng(7)
        h = random_hermitian(5, rng)
        s1, s2 = hermitian_eig(h), hermitian_eig(h)
        np.testing.assert_array_equal(s1.eigenvalues, s2.eigenvalues)
        np.testing.assert_array_equal(s1.eigenvectors, s2.eigenvectors)

    def test_rejects_non_hermitian(self):
        with pytest.raises(ValueError):
            hermitian_eig(np.array([[0, 1], [0, 0]], dtype=complex))

    def test_output_readonly(self):
        spec = hermitian_eig(pauli(3))
        with pytest.raises(ValueError):
            spec.eigenvalues[0] = 0.0


class TestUnitaryExp:
    def test_t_zero(self):
        np.testing.assert_allclose(unitary_exp(pauli(2), 0.0), np.eye(2), atol=1e-15)

    def test_half_rabi_closed_form(self):
        # exp(-i H t) with H = -nu sigma_x at t = pi/(2 nu) is
        # cos(pi/2) I + i sin(pi/2) sigma_x = i sigma_x
        nu = 0.8
        u = unitary_exp(-nu * pauli(1), np.pi / (2 * nu))
        np.testing.assert_allclose(u, 1j * pauli(1), atol=1e-14)

    def test_group_inverse(self):
        rng = np.random.default_rng(11)
        h = random_hermitian(4, rng)
        u = unitary_exp(h, 2.3) @ unitary_exp(h, -2.3)
        np.testing.assert_allclose(u, np.eye(4), atol=1e-12)

    def test_unitarity_random(self):
        rng = np.random.default_rng(12)
        for _ in range(20):
            dim = int(rng.integers(2, 9))
            h = random_hermitian(dim, rng)
            t = float(rng.uniform(-100, 100))
            u = unitary_exp(h, t)
            assert np.max(np.abs(u.conj().T @ u - np.eye(dim))) < 1e-12
            assert is_unitary(u)

    def test_hbar_scaling(self):
        h = pauli(3)
        np.testing.assert_allclose(
            unitary_exp(h, 1.0, hbar=2.0), unitary_exp(h, 0.5, hbar=1.0), atol=1e-14
        )

    def test_rejects_non_hermitian(self):
        with pytest.raises(ValueError):
            unitary_exp(np.array([[0, 1], [0, 0]]), 1.0)


class TestGlobalPhaseDistance:
    def test_pure_phase(self):
        rng = np.random.default_rng(5)
        u = unitary_exp(random_hermitian(3, rng), 1.0)
        assert global_phase_distance(u, np.exp(1j * np.pi / 7) * u) < 1e-13

    def test_orthogonal_operators(self):
        # Tr(sigma_z sigma_x) = 0, so the distance is sqrt(2 + 2) = 2
        assert global_phase_distance(pauli(1), pauli(3)) == pytest.approx(2.0, abs=1e-15)

    def test_symmetric(self):
        rng = np.random.default_rng(6)
        a = unitary_exp(random_hermitian(4, rng), 0.4)
        b = unitary_exp(random_hermitian(4, rng), 0.9)
        assert global_phase_distance(a, b) == pytest.approx(
            global_phase_distance(b, a), abs=1e-13
        )

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            global_phase_distance(np.eye(2), np.eye(3))
