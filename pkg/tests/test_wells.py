"""Hamiltonian builders, closed-form spectra, commuting structure, SQUID."""

import numpy as np
import pytest

from quditwells.operators import gell_mann, hermitian_eig, pauli
from quditwells.wells import (
    HamiltonianSpec,
    PerturbationSpec,
    analytic_spectrum,
    build_hamiltonian,
    build_perturbation,
    commuting_basis_su3,
    cyclic_current,
    mixing_angle,
    modular_momentum_states,
    shifted_generators,
    squid_potential,
    squid_well_report,
    thermal_check,
)

SQRT3 = np.sqrt(3.0)

# exact SI values, written out as the independent oracle
K_BOLTZMANN = 1.380649e-23
H_PLANCK = 6.62607015e-34


def cyclic_shift(d):
    s = np.zeros((d, d))
    for k in range(d):
        s[(k + 1) % d, k] = 1.0
    return s


class TestBuildHamiltonian:
    def test_periodic_triple(self):
        h = build_hamiltonian(HamiltonianSpec(topology="periodic-triple", nu=1.0))
        np.testing.assert_array_equal(h, -np.array([[0, 1, 1], [1, 0, 1], [1, 1, 0]]))

    def test_asymmetric_symmetric_limit(self):
        h = build_hamiltonian(
            HamiltonianSpec(topology="asymmetric-double", nu=1.3, delta_eps=0.0)
        )
        np.testing.assert_array_equal(h, -1.3 * pauli(1))

    def test_asymmetric_tilt(self):
        h = build_hamiltonian(
            HamiltonianSpec(topology="asymmetric-double", nu=1.0, delta_eps=0.4)
        )
        np.testing.assert_allclose(h, 0.2 * pauli(3) - pauli(1))

    def test_cyclic_d4_first_row(self):
        h = build_hamiltonian(HamiltonianSpec(topology="cyclic", d=4, nu=1.0))
        np.testing.assert_array_equal(h[0], [0, -1, 0, -1])

    def test_cyclic_d2_single_bond(self):
        h = build_hamiltonian(HamiltonianSpec(topology="cyclic", d=2, nu=0.7))
        np.testing.assert_array_equal(h, -0.7 * pauli(1))

    def test_cyclic_d3_equals_triple(self):
        a = build_hamiltonian(HamiltonianSpec(topology="cyclic", d=3, nu=1.1))
        b = build_hamiltonian(HamiltonianSpec(topology="periodic-triple", nu=1.1))
        np.testing.assert_array_equal(a, b)

    def test_fully_connected(self):
        h = build_hamiltonian(HamiltonianSpec(topology="fully-connected", d=3, nu=2.0))
        np.testing.assert_array_equal(h, -2.0 * np.array([[0, 1, 1], [1, 0, 1], [1, 1, 0]]))

    def test_custom_matrix(self):
        m = np.array([[0, 1j], [-1j, 0]])
        spec = HamiltonianSpec(topology="custom", custom_matrix=m)
        np.testing.assert_array_equal(build_hamiltonian(spec), m)

    def test_invalid_specs(self):
        with pytest.raises(ValueError):
            HamiltonianSpec(topology="symmetric-double", nu=0.0)
        with pytest.raises(ValueError):
            HamiltonianSpec(topology="cyclic", d=1)
        with pytest.raises(ValueError):
            HamiltonianSpec(topology="cyclic", d=4, delta_eps=0.5)
        with pytest.raises(ValueError):
            HamiltonianSpec(topology="custom")
        with pytest.raises(ValueError):
            HamiltonianSpec(topology="custom", custom_matrix=np.array([[0, 1], [0, 0]]))


class TestAnalyticSpectrum:
    def test_asymmetric_gap(self):
        spec = HamiltonianSpec(topology="asymmetric-double", nu=1.0, delta_eps=2.0)
        e = analytic_spectrum(spec)
        assert e[1] - e[0] == pytest.approx(2 * np.sqrt(2.0), abs=1e-15)

    def test_fully_connected_d5(self):
        e = analytic_spectrum(HamiltonianSpec(topology="fully-connected", d=5, nu=1.0))
        np.testing.assert_allclose(e, [-4, 1, 1, 1, 1])

    def test_cyclic_d4(self):
        e = analytic_spectrum(HamiltonianSpec(topology="cyclic", d=4, nu=1.0))
        np.testing.assert_allclose(e, [-2, 0, 0, 2], atol=1e-15)

    def test_matches_numeric_everywhere(self):
        specs = [
            HamiltonianSpec(topology="symmetric-double", nu=0.3),
            HamiltonianSpec(topology="asymmetric-double", nu=0.9, delta_eps=-1.7),
            HamiltonianSpec(topology="periodic-triple", nu=2.4),
        ]
        specs += [HamiltonianSpec(topology="fully-connected", d=d, nu=1.2) for d in range(2, 9)]
        specs += [HamiltonianSpec(topology="cyclic", d=d, nu=0.8) for d in range(2, 13)]
        for spec in specs:
            numeric = hermitian_eig(build_hamiltonian(spec)).eigenvalues
            np.testing.assert_allclose(numeric, analytic_spectrum(spec), atol=1e-12)

    def test_custom_rejected(self):
        spec = HamiltonianSpec(topology="custom", custom_matrix=np.eye(2))
        with pytest.raises(ValueError):
            analytic_spectrum(spec)

    def test_fully_connected_two_levels(self):
        for d in range(2, 9):
            e = analytic_spectrum(HamiltonianSpec(topology="fully-connected", d=d))
            vals, counts = np.unique(np.round(e, 12), return_counts=True)
            assert len(vals) == 2
            np.testing.assert_array_equal(np.sort(counts), [1, d - 1])

    def test_cyclic_degenerate_pairs(self):
        for d in range(3, 13):
            n = np.arange(d)
            e = -2 * np.cos(2 * np.pi * n / d)
            for m in range(1, (d + 1) // 2):
                assert e[m] == pytest.approx(e[d - m], abs=1e-14)


class TestSymmetries:
    def test_swap_symmetry_double(self):
        h = build_hamiltonian(HamiltonianSpec(topology="symmetric-double"))
        p = np.array([[0, 1], [1, 0]])
        np.testing.assert_allclose(h @ p - p @ h, 0, atol=0)

    def test_cyclic_shift_symmetry(self):
        for topology, d in [("periodic-triple", 3)] + [("cyclic", d) for d in range(3, 9)]:
            h = build_hamiltonian(HamiltonianSpec(topology=topology, d=d))
            s = cyclic_shift(d)
            np.testing.assert_allclose(s.T @ h @ s, h, atol=0)


class TestCyclicCurrent:
    def test_d3_matrix(self):
        expected = np.array([[0, -1j, 1j], [1j, 0, -1j], [-1j, 1j, 0]])
        np.testing.assert_array_equal(cyclic_current(3), expected)
        np.testing.assert_array_equal(
            cyclic_current(3), gell_mann(2) + gell_mann(7) - gell_mann(5)
        )

    def test_d3_eigenvalues(self):
        e = hermitian_eig(cyclic_current(3)).eigenvalues
        np.testing.assert_allclose(e, [-SQRT3, 0, SQRT3], atol=1e-12)

    def test_commutes_with_cyclic_hamiltonian(self):
        for d in range(3, 13):
            h = build_hamiltonian(HamiltonianSpec(topology="cyclic", d=d))
            j = cyclic_current(d)
            assert np.max(np.abs(h @ j - j @ h)) < 1e-14

    def test_qubit_current_does_not_commute(self):
        # for d = 2 the current is sigma_y, which does not commute with -nu sigma_x
        h = build_hamiltonian(HamiltonianSpec(topology="symmetric-double"))
        c = h @ pauli(2) - pauli(2) @ h
        assert np.max(np.abs(c)) > 1.0

    def test_d_too_small(self):
        with pytest.raises(ValueError):
            cyclic_current(2)


class TestCommutingBasis:
    def test_printed_matrices(self):
        m1, m2, m3, m4 = commuting_basis_su3()
        np.testing.assert_allclose(m1, [[-1 / 3, 1, 0], [1, -1 / 3, 0], [0, 0, 2 / 3]])
        np.testing.assert_allclose(m2, [[-1 / 3, 0, 1], [0, 2 / 3, 0], [1, 0, -1 / 3]])
        np.testing.assert_allclose(m3, [[2 / 3, 0, 0], [0, -1 / 3, 1], [0, 1, -1 / 3]])
        np.testing.assert_array_equal(m4, cyclic_current(3))

    def test_all_commute_with_h3(self):
        h = build_hamiltonian(HamiltonianSpec(topology="periodic-triple"))
        for m in commuting_basis_su3():
            assert np.max(np.abs(h @ m - m @ h)) < 1e-14

    def test_gell_mann_span(self):
        m1, m2, m3, m4 = commuting_basis_su3()
        np.testing.assert_allclose(m1, gell_mann(1) - gell_mann(8) / SQRT3, atol=1e-15)
        np.testing.assert_allclose(
            m2,
            -gell_mann(3) / 2 + gell_mann(8) / (2 * SQRT3) + gell_mann(4),
            atol=1e-15,
        )
        np.testing.assert_allclose(
            m3,
            gell_mann(3) / 2 + gell_mann(8) / (2 * SQRT3) + gell_mann(6),
            atol=1e-15,
        )
        np.testing.assert_allclose(
            m4, gell_mann(2) + gell_mann(7) - gell_mann(5), atol=1e-15
        )


class TestShiftedGenerators:
    def test_printed_form(self):
        mp1, mp2, mp3 = shifted_generators()
        np.testing.assert_allclose(mp1, [[0, 1, 0], [1, 0, 0], [0, 0, 1]])
        np.testing.assert_allclose(mp2, [[0, 0, 1], [0, 1, 0], [1, 0, 0]])
        np.testing.assert_allclose(mp3, [[1, 0, 0], [0, 0, 1], [0, 1, 0]])

    def test_shift_relation_and_involution(self):
        base = commuting_basis_su3()
        for mp, m in zip(shifted_generators(), base):
            np.testing.assert_allclose(mp, m + np.eye(3) / 3, atol=1e-15)
            np.testing.assert_allclose(mp @ mp, np.eye(3), atol=1e-15)

    def test_commute_with_h3(self):
        h = build_hamiltonian(HamiltonianSpec(topology="periodic-triple"))
        for mp in shifted_generators():
            assert np.max(np.abs(h @ mp - mp @ h)) < 1e-14


class TestMixingAngle:
    def test_symmetric(self):
        assert mixing_angle(1.0, 0.0) == pytest.approx(np.pi / 2)

    def test_quarter_turn(self):
        assert mixing_angle(1.0, 2.0) == pytest.approx(np.pi / 4)

    def test_sign_selects_half_range(self):
        assert 0 < mixing_angle(0.5, 3.0) < np.pi / 2
        assert np.pi / 2 < mixing_angle(0.5, -3.0) < np.pi

    def test_eigenvectors_match(self):
        # 2x2 diagonalization as the oracle for the (sin t/2, cos t/2) form
        for nu, de in [(1.0, 2.0), (0.7, -1.1), (2.0, 0.5)]:
            theta = mixing_angle(nu, de)
            h = build_hamiltonian(
                HamiltonianSpec(topology="asymmetric-double", nu=nu, delta_eps=de)
            )
            spec = hermitian_eig(h)
            ground = np.array([np.sin(theta / 2), np.cos(theta / 2)])
            excited = np.array([np.cos(theta / 2), -np.sin(theta / 2)])
            assert min(
                np.linalg.norm(spec.eigenvectors[:, 0] - ground),
                np.linalg.norm(spec.eigenvectors[:, 0] + ground),
            ) < 1e-12
            assert min(
                np.linalg.norm(spec.eigenvectors[:, 1] - excited),
                np.linalg.norm(spec.eigenvectors[:, 1] + excited),
            ) < 1e-12

    def test_invalid_nu(self):
        with pytest.raises(ValueError):
            mixing_angle(-1.0, 0.0)


class TestModularMomentum:
    def test_ground_state_uniform(self):
        states = modular_momentum_states(5)
        p0, v0 = states[0]
        assert p0 == 0.0
        np.testing.assert_allclose(v0, np.ones(5) / np.sqrt(5))
        h = build_hamiltonian(HamiltonianSpec(topology="cyclic", d=5))
        np.testing.assert_allclose(h @ v0, -2.0 * v0, atol=1e-14)

    def test_d3_current_eigenstate(self):
        _, v1 = modular_momentum_states(3)[1]
        expected = np.array([1, np.exp(2j * np.pi / 3), np.exp(4j * np.pi / 3)]) / SQRT3
        np.testing.assert_allclose(v1, expected, atol=1e-15)
        np.testing.assert_allclose(cyclic_current(3) @ v1, SQRT3 * v1, atol=1e-14)

    def test_d4_n1(self):
        _, v1 = modular_momentum_states(4)[1]
        np.testing.assert_allclose(v1, np.array([1, 1j, -1, -1j]) / 2, atol=1e-15)
        h = build_hamiltonian(HamiltonianSpec(topology="cyclic", d=4))
        np.testing.assert_allclose(h @ v1, 0 * v1, atol=1e-14)

    def test_momentum_eigenvalues(self):
        length, hbar = 2.5, 0.9
        for n, (p, _) in enumerate(modular_momentum_states(6, length, hbar)):
            assert p == pytest.approx(2 * np.pi * n * hbar / length)

    def test_every_state_diagonalizes_hamiltonian(self):
        for d in (2, 3, 4, 6, 7):
            h = build_hamiltonian(HamiltonianSpec(topology="cyclic", d=d))
            for n, (_, v) in enumerate(modular_momentum_states(d)):
                # single-bond d = 2 chain halves the band formula
                e = -np.cos(np.pi * n) if d == 2 else -2 * np.cos(2 * np.pi * n / d)
                np.testing.assert_allclose(h @ v, e * v, atol=1e-13)


class TestThermalCheck:
    def test_squid_operating_point(self):
        # 20 mK against a 10 GHz gap
        report = thermal_check(H_PLANCK * 10e9, 0.020)
        expected = K_BOLTZMANN * 0.020 / (H_PLANCK * 10e9)
        assert report.ratio == pytest.approx(expected, rel=1e-12)
        assert report.ratio == pytest.approx(0.042, abs=1e-3)
        assert report.passed

    def test_zero_temperature(self):
        report = thermal_check(1e-24, 0.0)
        assert report.ratio == 0.0
        assert report.passed

    def test_kelvin_frequency_correspondence(self):
        # 1 K corresponds to about 20.8 GHz
        assert K_BOLTZMANN / H_PLANCK == pytest.approx(2.0836619e10, rel=1e-6)
        report = thermal_check(H_PLANCK * 20.8e9, 1.0)
        assert report.ratio == pytest.approx(1.0, rel=2e-3)
        assert not report.passed

    def test_min_tilt_angle(self):
        gap = H_PLANCK * 200e9
        report = thermal_check(H_PLANCK * 10e9, 0.020, one_well_gap=gap)
        assert report.min_tilt_angle == pytest.approx(
            K_BOLTZMANN * 0.020 / (gap / 2), rel=1e-12
        )

    def test_invalid_inputs(self):
        with pytest.raises(ValueError):
            thermal_check(0.0, 1.0)
        with pytest.raises(ValueError):
            thermal_check(1.0, -1.0)
        with pytest.raises(ValueError):
            thermal_check(1.0, 1.0, one_well_gap=0.0)


class TestSquid:
    def test_potential_value(self):
        # phi = 0, phi_x = 0: V = -(phi_b^2/L) beta
        assert squid_potential(0.0, 0.0, 2.0, 1.0, 1.0) == pytest.approx(-2.0)

    def test_even_potential_is_symmetric(self):
        # beta > 1 at phi_x = 0: even potential, so the tilt estimate vanishes
        report = squid_well_report(phi_x=0.0, beta=1.5)
        assert report.delta_eps_estimate == pytest.approx(0.0, abs=1e-9)

    def test_shallow_single_well(self):
        report = squid_well_report(phi_x=0.0, beta=0.8)
        assert report.single_well
        assert report.barrier_top is None
        assert report.delta_eps_estimate == 0.0

    def test_negative_beta_reported(self):
        report = squid_well_report(phi_x=0.0, beta=-0.5)
        assert report.single_well

    def test_operating_point_double_well(self):
        report = squid_well_report(phi_x=np.pi, beta=2.0)
        assert not report.single_well
        assert report.delta_eps_estimate == pytest.approx(0.0, abs=1e-9)
        assert report.barrier_top[0] == pytest.approx(np.pi, abs=1e-6)
        assert report.barrier_height > 0
        # minima symmetric about pi
        assert report.left_minimum[0] + report.right_minimum[0] == pytest.approx(
            2 * np.pi, abs=1e-6
        )

    def test_tilt_monotone_in_phi_x(self):
        offsets = np.linspace(0.05, 0.4, 8)
        tilts = [
            abs(squid_well_report(phi_x=np.pi + o, beta=2.0).delta_eps_estimate)
            for o in offsets
        ]
        assert all(b > a for a, b in zip(tilts, tilts[1:]))

    def test_invalid_inductance(self):
        with pytest.raises(ValueError):
            squid_potential(0.0, 0.0, 1.0, l_ind=0.0)


class TestPerturbationSpec:
    def test_tilt_constraint(self):
        with pytest.raises(ValueError):
            PerturbationSpec(kind="diagonal-tilt", tilts=(0.1, 0.1, 0.1))

    def test_tilt_matrix(self):
        spec = PerturbationSpec(kind="diagonal-tilt", epsilon=1.0, tilts=(0.4, -0.1, -0.3))
        m = build_perturbation(spec)
        d = np.real(np.diag(m))
        assert d[0] - d[1] == pytest.approx(0.4, abs=1e-15)
        assert d[1] - d[2] == pytest.approx(-0.3, abs=1e-15)
        assert d[2] - d[0] == pytest.approx(-0.1, abs=1e-15)
        assert np.trace(m) == pytest.approx(0.0, abs=1e-15)

    def test_named_generators(self):
        m1 = commuting_basis_su3()[0]
        np.testing.assert_allclose(
            build_perturbation(PerturbationSpec(kind="m1", epsilon=0.2)), 0.2 * m1
        )
        mp2 = shifted_generators()[1]
        np.testing.assert_allclose(
            build_perturbation(PerturbationSpec(kind="mp2", epsilon=1.5)), 1.5 * mp2
        )
        np.testing.assert_allclose(
            build_perturbation(PerturbationSpec(kind="cyclic-current", d=4)),
            cyclic_current(4),
        )

    def test_gell_mann_combination(self):
        coeff = (0.1, 0, 0.3, 0, 0, 0, 0, -0.2)
        m = build_perturbation(PerturbationSpec(kind="gell-mann", coefficients=coeff))
        expected = 0.1 * gell_mann(1) + 0.3 * gell_mann(3) - 0.2 * gell_mann(8)
        np.testing.assert_allclose(m, expected)

    def test_gell_mann_needs_eight(self):
        with pytest.raises(ValueError):
            PerturbationSpec(kind="gell-mann", coefficients=(1.0, 2.0))

    def test_dimension_mismatch(self):
        spec = PerturbationSpec(kind="m1")
        with pytest.raises(ValueError):
            build_perturbation(spec, dim=4)
