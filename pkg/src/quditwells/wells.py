"""Hamiltonians and operator structure of coupled-well qudit systems.

Builders for the standard well topologies and their closed-form spectra:

* symmetric double well        H = -nu sigma_x
* asymmetric double well       H = (delta_eps/2) sigma_z - nu sigma_x
* periodic triple well         H = -nu (lambda_1 + lambda_4 + lambda_6)
* fully connected d wells      H = -nu (J - I), J the all-ones matrix
* cyclic chain of d wells      H = -nu (circulant nearest-neighbour)

Basis ordering is by well index; for d = 2 index 0 is the left well and
index 1 the right well, so the asymmetry delta_eps = eps_L - eps_R tilts
the diagonal as diag(+delta_eps/2, -delta_eps/2).

Also provided: the cyclic current operator, the four-operator commuting
basis of the triple-well Hamiltonian and its shifted permutation form,
the asymmetric-well mixing angle, Bloch (modular-momentum) eigenstates of
the cyclic chain, a thermal-robustness check, and the double-SQUID
potential with a numeric well-shape report.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np
from scipy import constants

from quditwells.operators import (
    ComplexMatrix,
    as_complex_matrix,
    gell_mann,
    is_hermitian,
    pauli,
)


class Topology(str, enum.Enum):
    SYMMETRIC_DOUBLE = "symmetric-double"
    ASYMMETRIC_DOUBLE = "asymmetric-double"
    PERIODIC_TRIPLE = "periodic-triple"
    FULLY_CONNECTED = "fully-connected"
    CYCLIC_CHAIN = "cyclic"
    CUSTOM = "custom"


@dataclass(frozen=True)
class HamiltonianSpec:
    """Declarative descriptor of a well system.

    nu > 0 is the tunneling amplitude (sets the energy unit), delta_eps
    the left/right local-energy difference (asymmetric double well only),
    d the number of wells for the fully-connected and cyclic topologies.
    """

    topology: Topology
    nu: float = 1.0
    delta_eps: float = 0.0
    d: int = 2
    custom_matrix: np.ndarray | None = None

    def __post_init__(self):
        object.__setattr__(self, "topology", Topology(self.topology))
        if self.topology is Topology.CUSTOM:
            if self.custom_matrix is None:
                raise ValueError("custom topology requires custom_matrix")
            m = as_complex_matrix(self.custom_matrix)
            if not is_hermitian(m, 1e-10):
                raise ValueError("custom_matrix must be Hermitian")
            object.__setattr__(self, "custom_matrix", m)
            object.__setattr__(self, "d", m.shape[0])
            return
        if not self.nu > 0:
            raise ValueError(f"nu must be positive, got {self.nu}")
        if self.d < 2:
            raise ValueError(f"d must be >= 2, got {self.d}")
        if self.delta_eps != 0.0 and self.topology is not Topology.ASYMMETRIC_DOUBLE:
            raise ValueError("delta_eps is only meaningful for the asymmetric double well")

    @property
    def dim(self) -> int:
        if self.topology in (Topology.SYMMETRIC_DOUBLE, Topology.ASYMMETRIC_DOUBLE):
            return 2
        if self.topology is Topology.PERIODIC_TRIPLE:
            return 3
        return self.d


def build_hamiltonian(spec: HamiltonianSpec) -> ComplexMatrix:
    """Dense Hamiltonian matrix for a well-system descriptor.

    The cyclic chain at d = 2 is special-cased to -nu sigma_x: the single
    bond of a 2-ring would otherwise be double-counted. At d = 3 the chain
    coincides with the periodic triple well.
    """
    t = spec.topology
    nu = spec.nu
    if t is Topology.CUSTOM:
        return spec.custom_matrix.copy()
    if t is Topology.SYMMETRIC_DOUBLE:
        return -nu * pauli(1)
    if t is Topology.ASYMMETRIC_DOUBLE:
        return 0.5 * spec.delta_eps * pauli(3) - nu * pauli(1)
    if t is Topology.PERIODIC_TRIPLE:
        return -nu * (gell_mann(1) + gell_mann(4) + gell_mann(6))
    if t is Topology.FULLY_CONNECTED:
        d = spec.d
        return -nu * (np.ones((d, d), dtype=complex) - np.eye(d))
    if t is Topology.CYCLIC_CHAIN:
        d = spec.d
        if d == 2:
            return -nu * pauli(1)
        h = np.zeros((d, d), dtype=complex)
        for k in range(d):
            h[k, (k + 1) % d] = -nu
            h[(k + 1) % d, k] = -nu
        return h
    raise ValueError(f"unsupported topology {t}")


def analytic_spectrum(spec: HamiltonianSpec) -> np.ndarray:
    """Closed-form eigenvalues, ascending.

    double well: +-nu; asymmetric: +-sqrt((delta_eps/2)^2 + nu^2);
    periodic triple: {-2 nu, nu, nu}; fully connected: {-nu (d-1)} with
    (d-1)-fold nu; cyclic chain: {-2 nu cos(2 pi n / d)}, except d = 2
    where the single-bond chain gives +-nu (matching the special-cased
    builder).
    """
    t = spec.topology
    nu = spec.nu
    if t is Topology.CUSTOM:
        raise ValueError("no closed-form spectrum for a custom matrix")
    if t is Topology.SYMMETRIC_DOUBLE:
        return np.array([-nu, nu])
    if t is Topology.ASYMMETRIC_DOUBLE:
        e = np.hypot(0.5 * spec.delta_eps, nu)
        return np.array([-e, e])
    if t is Topology.PERIODIC_TRIPLE:
        return np.array([-2 * nu, nu, nu])
    if t is Topology.FULLY_CONNECTED:
        return np.sort(np.array([-nu * (spec.d - 1)] + [nu] * (spec.d - 1)))
    if t is Topology.CYCLIC_CHAIN:
        if spec.d == 2:
            return np.array([-nu, nu])
        n = np.arange(spec.d)
        return np.sort(-2 * nu * np.cos(2 * np.pi * n / spec.d))
    raise ValueError(f"unsupported topology {t}")


def cyclic_current(d: int) -> ComplexMatrix:
    """Cyclic probability-current operator on a d-well ring.

    Hermitian, with -i on the superdiagonal, +i on the subdiagonal and the
    matching corner entries; equal to i (P - P^dag) for the one-cell cyclic
    shift P, so it commutes with the cyclic-chain Hamiltonian. For d = 3 it
    equals lambda_2 + lambda_7 - lambda_5 with eigenvalues {-sqrt(3), 0,
    +sqrt(3)}.
    """
    if d < 3:
        raise ValueError(f"cyclic current requires d >= 3, got {d}")
    j = np.zeros((d, d), dtype=complex)
    for k in range(d):
        j[k, (k + 1) % d] = -1j
        j[(k + 1) % d, k] = 1j
    return j


def commuting_basis_su3() -> tuple[ComplexMatrix, ComplexMatrix, ComplexMatrix, ComplexMatrix]:
    """The four-operator basis M_1..M_4 of Hermitian operators commuting
    with the triple-well Hamiltonian.

    M_1 = lambda_1 - lambda_8/sqrt(3),
    M_2 = -lambda_3/2 + lambda_8/(2 sqrt(3)) + lambda_4,
    M_3 = +lambda_3/2 + lambda_8/(2 sqrt(3)) + lambda_6,
    M_4 = lambda_2 + lambda_7 - lambda_5 (the cyclic current).
    """
    m1 = np.array([[-1 / 3, 1, 0], [1, -1 / 3, 0], [0, 0, 2 / 3]], dtype=complex)
    m2 = np.array([[-1 / 3, 0, 1], [0, 2 / 3, 0], [1, 0, -1 / 3]], dtype=complex)
    m3 = np.array([[2 / 3, 0, 0], [0, -1 / 3, 1], [0, 1, -1 / 3]], dtype=complex)
    m4 = cyclic_current(3)
    return m1, m2, m3, m4


def shifted_generators() -> tuple[ComplexMatrix, ComplexMatrix, ComplexMatrix]:
    """Traceful form M'_i = M_i + I/3 of the symmetric commuting generators.

    Each is a 0/1 symmetric matrix: the transposition of one well pair with
    the remaining well fixed, so (M'_i)^2 = I.
    """
    m1, m2, m3, _ = commuting_basis_su3()
    eye3 = np.eye(3, dtype=complex) / 3
    return m1 + eye3, m2 + eye3, m3 + eye3


def mixing_angle(nu: float, delta_eps: float) -> float:
    """Tilt angle theta = arctan(nu / (delta_eps/2)), taken in (0, pi).

    delta_eps = 0 maps to pi/2; positive delta_eps selects (0, pi/2) and
    negative (pi/2, pi). The asymmetric-well eigenvectors are then
    (sin t/2, cos t/2) and (cos t/2, -sin t/2) in the (left, right) basis.
    """
    if not nu > 0:
        raise ValueError(f"nu must be positive, got {nu}")
    return float(np.arctan2(nu, 0.5 * delta_eps))


def modular_momentum_states(
    d: int, length: float = 1.0, hbar: float = 1.0
) -> list[tuple[float, np.ndarray]]:
    """Bloch eigenstates of the cyclic d-well chain.

    Returns [(p_n, v_n)] for n = 0..d-1 with v_n[k] = exp(2 pi i n k / d) /
    sqrt(d) and modular-momentum eigenvalue p_n = 2 pi n hbar / length.
    v_n is an eigenvector of the cyclic-chain Hamiltonian with energy
    -2 nu cos(2 pi n / d) (for the single-bond d = 2 chain: -nu cos(pi n)),
    and of the cyclic current with eigenvalue 2 sin(2 pi n / d).
    """
    if d < 2:
        raise ValueError(f"d must be >= 2, got {d}")
    out = []
    k = np.arange(d)
    for n in range(d):
        vec = np.exp(2j * np.pi * n * k / d) / np.sqrt(d)
        out.append((2 * np.pi * n * hbar / length, vec))
    return out


@dataclass(frozen=True)
class ThermalReport:
    """k_B T versus the qubit gap, and the minimum usable tilt angle."""

    ratio: float
    passed: bool
    threshold: float
    min_tilt_angle: float | None = None


def thermal_check(
    delta_e01: float,
    temperature: float,
    one_well_gap: float | None = None,
    threshold: float = 0.1,
) -> ThermalReport:
    """Thermal-robustness ratio k_B T / delta_E01 (SI units).

    Passes when the ratio is below threshold (default 0.1). When the
    one-well gap eps_s1 - eps_s0 is supplied, also reports the minimum
    tilt angle delta ~ k_B T / ((eps_s1 - eps_s0)/2) below which axis
    tilting is washed out by thermal noise.
    """
    if not delta_e01 > 0:
        raise ValueError("delta_e01 must be positive")
    if not temperature >= 0:
        raise ValueError("temperature must be non-negative")
    ratio = constants.k * temperature / delta_e01
    angle = None
    if one_well_gap is not None:
        if not one_well_gap > 0:
            raise ValueError("one_well_gap must be positive")
        angle = constants.k * temperature / (one_well_gap / 2)
    return ThermalReport(
        ratio=float(ratio),
        passed=bool(ratio < threshold),
        threshold=threshold,
        min_tilt_angle=None if angle is None else float(angle),
    )


def squid_potential(
    phi, phi_x: float, beta: float, l_ind: float = 1.0, phi_b: float = 1.0
):
    """Double-SQUID potential (phi_b^2 / L) [ (phi - phi_x)^2 / 2 - beta cos phi ].

    phi is the reduced loop flux; phi_x the reduced control flux; beta =
    2 L I_0 / phi_b. Vectorized over phi. The double-well operating point
    sits near phi_x = pi with beta > 1.
    """
    if not l_ind > 0:
        raise ValueError("l_ind must be positive")
    phi = np.asarray(phi, dtype=float)
    v = (phi_b**2 / l_ind) * (0.5 * (phi - phi_x) ** 2 - beta * np.cos(phi))
    return v if v.ndim else float(v)


@dataclass(frozen=True)
class SquidWellReport:
    """Numeric shape report for the SQUID potential.

    minima lists (phi, V) for every refined local minimum on the scan
    window. For a multi-well landscape the (left, right) pair is the global
    minimum and its lower adjacent minimum; barrier_top is the potential
    maximum between them. delta_eps_estimate = V(left) - V(right); zero
    for a single well.
    """

    single_well: bool
    minima: tuple[tuple[float, float], ...]
    left_minimum: tuple[float, float] | None
    right_minimum: tuple[float, float] | None
    barrier_top: tuple[float, float] | None
    barrier_height: float | None
    delta_eps_estimate: float


def _golden_section_min(f, lo: float, hi: float, tol: float = 1e-12) -> float:
    """Golden-section minimum of a unimodal function on [lo, hi]."""
    inv_phi = (np.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - inv_phi * (b - a)
    d = a + inv_phi * (b - a)
    fc, fd = f(c), f(d)
    while (b - a) > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - inv_phi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + inv_phi * (b - a)
            fd = f(d)
    return (a + b) / 2


def squid_well_report(
    phi_x: float,
    beta: float,
    l_ind: float = 1.0,
    phi_b: float = 1.0,
    n_scan: int = 2048,
) -> SquidWellReport:
    """Locate the SQUID double-well minima and barrier numerically.

    A 2048-point bracketing scan on [phi_x - 2 pi, phi_x + 2 pi] followed
    by golden-section refinement of every interior local minimum. beta <= 1
    (single well at the operating point) is reported, not raised.
    """

    def v(p):
        return squid_potential(p, phi_x, beta, l_ind, phi_b)

    grid = np.linspace(phi_x - 2 * np.pi, phi_x + 2 * np.pi, n_scan)
    vals = v(grid)
    minima = []
    for i in range(1, n_scan - 1):
        # non-strict on one side keeps symmetric plateau pairs detectable
        if vals[i] <= vals[i - 1] and vals[i] <= vals[i + 1]:
            x = _golden_section_min(v, grid[i - 1], grid[i + 1])
            if not minima or abs(x - minima[-1][0]) > 1e-6:
                minima.append((float(x), float(v(x))))
    minima.sort()

    if len(minima) < 2:
        single = minima[0] if minima else None
        return SquidWellReport(
            single_well=True,
            minima=tuple(minima),
            left_minimum=single,
            right_minimum=single,
            barrier_top=None,
            barrier_height=None,
            delta_eps_estimate=0.0,
        )

    i_glob = min(range(len(minima)), key=lambda i: minima[i][1])
    neighbours = [i for i in (i_glob - 1, i_glob + 1) if 0 <= i < len(minima)]
    i_other = min(neighbours, key=lambda i: minima[i][1])
    i_l, i_r = sorted((i_glob, i_other))
    left, right = minima[i_l], minima[i_r]

    span = np.linspace(left[0], right[0], 1024)
    vspan = v(span)
    j = int(np.argmax(vspan))
    x_top = _golden_section_min(
        lambda p: -v(p), span[max(j - 1, 0)], span[min(j + 1, 1023)]
    )
    top = (float(x_top), float(v(x_top)))

    return SquidWellReport(
        single_well=False,
        minima=tuple(minima),
        left_minimum=left,
        right_minimum=right,
        barrier_top=top,
        barrier_height=float(top[1] - max(left[1], right[1])),
        delta_eps_estimate=float(left[1] - right[1]),
    )


class PerturbationKind(str, enum.Enum):
    CYCLIC_CURRENT = "cyclic-current"
    M1 = "m1"
    M2 = "m2"
    M3 = "m3"
    M4 = "m4"
    MP1 = "mp1"
    MP2 = "mp2"
    MP3 = "mp3"
    DIAGONAL_TILT = "diagonal-tilt"
    GELL_MANN = "gell-mann"


@dataclass(frozen=True)
class PerturbationSpec:
    """Descriptor of a perturbation Delta H = epsilon * (base matrix).

    diagonal-tilt takes the three cyclic qutrit energy differences
    (d01, d02, d12) = (eps0 - eps1, eps2 - eps0, eps1 - eps2), which must
    sum to zero; gell-mann takes eight coefficients for sum_a c_a lambda_a.
    """

    kind: PerturbationKind
    epsilon: float = 1.0
    tilts: tuple[float, float, float] | None = None
    coefficients: tuple[float, ...] | None = None
    d: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", PerturbationKind(self.kind))
        if self.kind is PerturbationKind.DIAGONAL_TILT:
            if self.tilts is None or len(self.tilts) != 3:
                raise ValueError("diagonal-tilt requires three tilt differences")
            object.__setattr__(self, "tilts", tuple(float(t) for t in self.tilts))
            if abs(sum(self.tilts)) > 1e-9:
                raise ValueError(
                    "qutrit tilt differences must satisfy the periodicity "
                    f"constraint d01 + d02 + d12 = 0, got sum {sum(self.tilts)}"
                )
        if self.kind is PerturbationKind.GELL_MANN:
            if self.coefficients is None or len(self.coefficients) != 8:
                raise ValueError("gell-mann combination requires eight coefficients")
            object.__setattr__(
                self, "coefficients", tuple(float(c) for c in self.coefficients)
            )


def build_perturbation(spec: PerturbationSpec, dim: int | None = None) -> ComplexMatrix:
    """Dense matrix epsilon * (base) for a perturbation descriptor."""
    kind = spec.kind
    if kind is PerturbationKind.CYCLIC_CURRENT:
        d = spec.d or dim or 3
        base = cyclic_current(d)
    elif kind in (PerturbationKind.M1, PerturbationKind.M2, PerturbationKind.M3,
                  PerturbationKind.M4):
        base = commuting_basis_su3()[int(kind.value[1]) - 1]
    elif kind in (PerturbationKind.MP1, PerturbationKind.MP2, PerturbationKind.MP3):
        base = shifted_generators()[int(kind.value[2]) - 1]
    elif kind is PerturbationKind.DIAGONAL_TILT:
        d01, _, d12 = spec.tilts
        e0 = (d01 - spec.tilts[1]) / 3.0
        e1 = e0 - d01
        e2 = e1 - d12
        base = np.diag(np.array([e0, e1, e2], dtype=complex))
    elif kind is PerturbationKind.GELL_MANN:
        base = sum(c * gell_mann(a + 1) for a, c in enumerate(spec.coefficients))
    else:
        raise ValueError(f"unsupported perturbation kind {kind}")
    if dim is not None and base.shape[0] != dim:
        raise ValueError(
            f"perturbation dimension {base.shape[0]} does not match system dimension {dim}"
        )
    return spec.epsilon * base
