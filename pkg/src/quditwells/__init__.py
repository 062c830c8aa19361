"""Simulation and gate-synthesis toolkit for coupled-well qudits.

A particle in d coupled potential wells realizes a d-level register. This
package builds the corresponding d-level Hamiltonians, evolves states
exactly, synthesizes and verifies gate constructions, and cross-validates
the d-level reduction against an independent 1D Schroedinger grid solver.

Modules
-------
operators   dense complex matrix algebra: generator sets, Hermitian
            eigendecomposition, unitary exponentials, phase-insensitive
            operator comparison
wells       declarative Hamiltonian construction (double/triple/d-well
            topologies), commuting SU(3) perturbations, SQUID potential
dynamics    exact state evolution, Rabi oscillation, revival detection,
            observable expectations, perturbative degeneracy splitting
gates       single-qubit rotations and decompositions, SFQ pulse trains,
            qutrit commuting-perturbation gates, DFT gate, charge basis,
            two-level decomposition of 3x3 unitaries
continuum   finite-difference Schroedinger oracle: square/periodic wells,
            WKB tunneling, asymmetric-well reduction
cli         command-line front end emitting JSON/CSV artifacts (and,
            optionally, matplotlib figures)
"""

from quditwells.operators import (
    Spectrum,
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
from quditwells.wells import (
    HamiltonianSpec,
    PerturbationSpec,
    Topology,
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
from quditwells.dynamics import (
    RevivalReport,
    basis_state,
    current_state,
    degeneracy_split,
    evolve,
    expectation,
    rabi_probability,
    revival_period,
    uniform_state,
)
from quditwells.gates import (
    AxisAngle,
    GateReport,
    PulseSchedule,
    axis_angle_matrix,
    charge_observable,
    commuting_gate,
    decompose_two_step,
    euler_five_step,
    haar_unitary,
    qft,
    rx,
    rz,
    sfq_schedule,
    su3_decompose,
    ternary_x_gates,
    tilted_rotation,
    two_step_matrix,
)
from quditwells.continuum import (
    GridSolution,
    PiecewisePotential,
    WkbResult,
    asymmetric_model,
    asymmetric_nu,
    asymmetric_square_double_well,
    band_fit,
    effective_two_level,
    periodic_d_well,
    solve_grid,
    square_double_well,
    validate_reduction,
    wkb_tunneling,
)

__version__ = "0.1.0"
