"""Gate constructions for coupled-well qubits and qutrits.

Single-qubit rotations use the convention R = exp(-i (alpha/2) n.sigma)
throughout:

* rx(alpha), rz(alpha): rotations about the x and z axes
* tilted_rotation(theta, alpha): axis (sin theta, 0, cos theta) in the XZ
  plane, as realized by tilting the double well; theta = pi/4, alpha = pi
  gives the Hadamard gate up to a global phase -i
* euler_five_step: general axis rotation as Rz Rx Rz Rx Rz conjugation
* decompose_two_step: closed-form two-rotation synthesis about XZ-plane
  axes (the minimal scheme; the system is under-constrained and a
  canonical solution with the first axis fixed to x is returned)

Qutrit constructions: propagators of the commuting perturbations M'_i over
whole revival periods (which factor exactly), the ternary X-gates, the
normalized d-level Fourier gate, and the charge observable diagonal in
the Fourier basis. su3_decompose factors any 3x3 unitary into three
two-level unitaries by Givens-style column elimination.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from quditwells.operators import (
    ComplexMatrix,
    as_complex_matrix,
    global_phase_distance,
    is_unitary,
    pauli,
    unitary_exp,
)
from quditwells.wells import HamiltonianSpec, Topology, build_hamiltonian, shifted_generators

_I2 = np.eye(2, dtype=complex)


# ---------------------------------------------------------------------------
# single-qubit rotations
# ---------------------------------------------------------------------------

def rx(alpha: float) -> ComplexMatrix:
    """X-rotation exp(-i alpha sigma_x / 2); rx(pi) = -i NOT."""
    c, s = np.cos(alpha / 2), np.sin(alpha / 2)
    return np.array([[c, -1j * s], [-1j * s, c]])


def rz(alpha: float) -> ComplexMatrix:
    """Z-rotation diag(e^{-i alpha/2}, e^{+i alpha/2})."""
    return np.diag([np.exp(-1j * alpha / 2), np.exp(1j * alpha / 2)])


def tilted_rotation(theta: float, alpha: float) -> ComplexMatrix:
    """Rotation about the XZ-plane axis (sin theta, 0, cos theta).

    cos(alpha/2) I - i sin(alpha/2) (sigma_x sin theta + sigma_z cos theta).
    theta = pi/2 reduces to rx(alpha). Angles outside (0, pi) are allowed
    mathematically but lie outside the physically reachable tilt range, so
    they only trigger a warning.
    """
    if not 0 < theta < np.pi:
        warnings.warn(
            f"tilt angle {theta} lies outside the realizable open range (0, pi)",
            stacklevel=2,
        )
    axis = np.sin(theta) * pauli(1) + np.cos(theta) * pauli(3)
    return np.cos(alpha / 2) * _I2 - 1j * np.sin(alpha / 2) * axis


def axis_angle_matrix(axis, angle: float) -> ComplexMatrix:
    """exp(-i (angle/2) n.sigma) for a unit 3-vector n."""
    n = np.asarray(axis, dtype=float)
    if n.shape != (3,) or abs(np.linalg.norm(n) - 1.0) > 1e-12:
        raise ValueError("axis must be a unit 3-vector")
    ns = n[0] * pauli(1) + n[1] * pauli(2) + n[2] * pauli(3)
    return np.cos(angle / 2) * _I2 - 1j * np.sin(angle / 2) * ns


@dataclass(frozen=True)
class AxisAngle:
    """Rotation axis n = (sin t cos p, sin t sin p, cos t) and angle."""

    axis: tuple[float, float, float]
    angle: float

    def __post_init__(self):
        n = np.asarray(self.axis, dtype=float)
        if n.shape != (3,):
            raise ValueError("axis must be a 3-vector")
        norm = np.linalg.norm(n)
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"axis must be a unit vector, |n| = {norm}")
        object.__setattr__(self, "axis", tuple(float(x) for x in n))

    @classmethod
    def from_spherical(cls, theta: float, psi: float, angle: float) -> "AxisAngle":
        return cls(
            axis=(np.sin(theta) * np.cos(psi), np.sin(theta) * np.sin(psi), np.cos(theta)),
            angle=angle,
        )

    def matrix(self) -> ComplexMatrix:
        return axis_angle_matrix(self.axis, self.angle)


@dataclass(frozen=True)
class GateReport:
    """A target gate, the synthesized gate, and their phase distance."""

    target: np.ndarray
    achieved: np.ndarray
    phase_distance: float
    parameters: dict[str, float] = field(default_factory=dict)

    @classmethod
    def compare(cls, target, achieved, parameters=None) -> "GateReport":
        t = np.asarray(target, dtype=complex)
        a = np.asarray(achieved, dtype=complex)
        return cls(
            target=t,
            achieved=a,
            phase_distance=global_phase_distance(t, a),
            parameters=dict(parameters or {}),
        )


def five_step_matrix(psi_prime: float, theta: float, alpha: float) -> ComplexMatrix:
    """Rz(psi') Rx(theta) Rz(alpha) Rx(-theta) Rz(-psi')."""
    return rz(psi_prime) @ rx(theta) @ rz(alpha) @ rx(-theta) @ rz(-psi_prime)


def euler_five_step(target: AxisAngle) -> GateReport:
    """General axis rotation as a five-step X/Z sequence.

    With the axis at spherical angles (theta, psi), the conjugation
    Rz(psi') Rx(theta) Rz(alpha) Rx(-theta) Rz(-psi') with psi' = psi +
    pi/2 equals the axis-angle rotation exactly: the inner Rz performs the
    rotation and the outer steps carry the z axis onto the target axis.
    (With the sign convention R = exp(-i (alpha/2) n.sigma) the offset is
    +pi/2; -pi/2 would rotate about the axis mirrored through the z axis.)
    For the degenerate axis +-z the sequence collapses to Rz(+-alpha).
    """
    nx, ny, nz = target.axis
    theta = float(np.arccos(np.clip(nz, -1.0, 1.0)))
    psi = float(np.arctan2(ny, nx))
    psi_prime = psi + np.pi / 2
    achieved = five_step_matrix(psi_prime, theta, target.angle)
    return GateReport.compare(
        target.matrix(),
        achieved,
        parameters={"psi_prime": psi_prime, "theta": theta, "alpha": target.angle},
    )


# ---------------------------------------------------------------------------
# two-step decomposition about XZ-plane axes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TwoStepDecomposition:
    """target = e^{i eta} R_{theta2}(phi2) R_{theta1}(phi1), axes in XZ."""

    theta1: float
    phi1: float
    theta2: float
    phi2: float
    eta: float

    def as_tuple(self) -> tuple[float, float, float, float, float]:
        return (self.theta1, self.phi1, self.theta2, self.phi2, self.eta)


def two_step_matrix(dec: TwoStepDecomposition) -> ComplexMatrix:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return np.exp(1j * dec.eta) * (
            tilted_rotation(dec.theta2, dec.phi2) @ tilted_rotation(dec.theta1, dec.phi1)
        )


def _su2_quaternion(s: ComplexMatrix) -> tuple[float, float, float, float]:
    # S = w I - i (x sx + y sy + z sz) = [[w - iz, -y - ix], [y - ix, w + iz]]
    return (
        float(s[0, 0].real),
        float(-s[1, 0].imag),
        float(s[1, 0].real),
        float(-s[0, 0].imag),
    )


def decompose_two_step(target) -> TwoStepDecomposition:
    """Write a 2x2 unitary as two rotations about XZ-plane axes.

    Three constraints against five parameters leave the system
    under-constrained; the canonical solution fixes the first axis to x
    (theta1 = pi/2), which determines phi1 from the y and z quaternion
    components of the target and leaves a closed-form second rotation.
    Axis polar angles are returned in [0, pi]; eta is the global phase
    taken from the target's determinant. Pure X-rotations split evenly
    (phi1 = phi2 = alpha/2) and XZ-planar targets come out with an
    identity first step.
    """
    u = as_complex_matrix(target)
    if u.shape != (2, 2) or not is_unitary(u, 1e-10):
        raise ValueError("target must be a 2x2 unitary")
    eta = float(np.angle(np.linalg.det(u)) / 2)
    w, x, y, z = _su2_quaternion(np.exp(-1j * eta) * u)

    if np.hypot(y, z) < 1e-14:
        phi = 2 * np.arctan2(x, w)
        return TwoStepDecomposition(np.pi / 2, phi / 2, np.pi / 2, phi / 2, eta)

    # first factor: quaternion (w1, x1, 0, 0) with (x1, w1) = (y, z)/z2
    z2 = np.hypot(y, z) * (1.0 if z >= 0 else -1.0)
    x1, w1 = y / z2, z / z2
    phi1 = 2 * np.arctan2(x1, w1)
    # second factor by exact quaternion division
    w2 = w1 * w + x1 * x
    x2 = -x1 * w + w1 * x
    s = np.hypot(x2, z2)
    if x2 < 0 or (x2 == 0 and z2 < 0):
        ax, az, phi2 = -x2 / s, -z2 / s, -2 * np.arctan2(s, w2)
    else:
        ax, az, phi2 = x2 / s, z2 / s, 2 * np.arctan2(s, w2)
    theta2 = float(np.arctan2(ax, az))
    return TwoStepDecomposition(np.pi / 2, float(phi1), abs(theta2), float(phi2), eta)


# ---------------------------------------------------------------------------
# SFQ pulse schedules
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PulseEvent:
    time: float
    channel: str
    area: float


@dataclass(frozen=True)
class PulseSchedule:
    """Timed single-flux-quantum kicks; times strictly increase."""

    events: tuple[PulseEvent, ...]
    total_duration: float

    def __post_init__(self):
        times = [e.time for e in self.events]
        if any(t2 <= t1 for t1, t2 in zip(times, times[1:])):
            raise ValueError("pulse times must be strictly increasing")
        if any(e.area <= 0 for e in self.events):
            raise ValueError("pulse areas must be positive")

    def times(self) -> np.ndarray:
        return np.array([e.time for e in self.events])


def sfq_schedule(kind: str, omega_seq, n_pulses: int) -> PulseSchedule:
    """Single-flux-quantum pulse train on the bias-flux channel.

    resonant_z: n_pulses unit-area kicks at t = 0, T, ..., (n-1) T with
    T = 2 pi / omega (one fixed frequency), each kick deposited once per
    precession period so the effects add coherently.

    axis_tilt: the spacing after pulse i is synchronized with the
    precession frequency at that step, T_i = 2 pi / omega_seq[i];
    omega_seq must provide one frequency per pulse (the last entry sets
    no spacing).
    """
    if n_pulses < 1:
        raise ValueError("n_pulses must be >= 1")
    omegas = np.atleast_1d(np.asarray(omega_seq, dtype=float))
    if np.any(omegas <= 0):
        raise ValueError("frequencies must be positive")
    if kind == "resonant_z":
        if omegas.size != 1:
            raise ValueError("resonant_z takes a single frequency")
        period = 2 * np.pi / omegas[0]
        times = period * np.arange(n_pulses)
    elif kind == "axis_tilt":
        if omegas.size != n_pulses:
            raise ValueError(
                f"axis_tilt needs one frequency per pulse ({n_pulses}), got {omegas.size}"
            )
        spacings = 2 * np.pi / omegas[:-1]
        times = np.concatenate([[0.0], np.cumsum(spacings)])
    else:
        raise ValueError(f"unknown schedule kind {kind!r}")
    events = tuple(PulseEvent(float(t), "Phi_x", 1.0) for t in times)
    return PulseSchedule(events=events, total_duration=float(times[-1]))


# ---------------------------------------------------------------------------
# qutrit gates
# ---------------------------------------------------------------------------

def ternary_x_gates() -> tuple[ComplexMatrix, ComplexMatrix, ComplexMatrix]:
    """Elementary qutrit X-gates X(01), X(02), X(12).

    Each swaps one well pair and fixes the third well; they coincide with
    the shifted commuting generators M'_1..M'_3 and square to the identity.
    """
    return shifted_generators()


def commuting_unitary(i: int, angle: float) -> ComplexMatrix:
    """Closed form exp(-i angle M'_i): an X-rotation of one well pair with
    a synchronous phase e^{-i angle} on the spectator well."""
    if i not in (1, 2, 3):
        raise ValueError(f"generator index must be 1, 2 or 3, got {i}")
    c, s, p = np.cos(angle), -1j * np.sin(angle), np.exp(-1j * angle)
    if i == 1:
        return np.array([[c, s, 0], [s, c, 0], [0, 0, p]])
    if i == 2:
        return np.array([[c, 0, s], [0, p, 0], [s, 0, c]])
    return np.array([[p, 0, 0], [0, c, s], [0, s, c]])


def commuting_gate(
    i: int, eps: float, cycles: int, nu: float = 1.0, hbar: float = 1.0
) -> GateReport:
    """Qutrit gate from a commuting perturbation applied over whole revivals.

    The perturbed triple-well propagator exp(-i (H + eps M'_i) T / hbar)
    over T = cycles * T_rev with T_rev = 2 pi hbar / (3 nu) equals, up to
    the revival's global phase, the closed-form gate exp(-i eps M'_i T /
    hbar) with effective angle eps T / hbar. Because [H, M'_i] = 0 the
    factorization is exact for any eps; smallness of eps only matters for
    adiabatic realizability, hence the warning above eps/nu = 0.2.
    """
    if i not in (1, 2, 3):
        raise ValueError(f"generator index must be 1, 2 or 3, got {i}")
    if cycles < 1:
        raise ValueError("cycles must be >= 1")
    if eps > 0.2 * nu:
        warnings.warn(
            f"eps/nu = {eps / nu:.3g} exceeds 0.2; the perturbative realization "
            "is questionable (the factorization itself stays exact)",
            stacklevel=2,
        )
    t_rev = 2 * np.pi * hbar / (3 * nu)
    t_total = cycles * t_rev
    h = build_hamiltonian(HamiltonianSpec(topology=Topology.PERIODIC_TRIPLE, nu=nu))
    dh = eps * shifted_generators()[i - 1]
    full = unitary_exp(h + dh, t_total, hbar)
    angle = eps * t_total / hbar
    closed = commuting_unitary(i, angle)
    return GateReport.compare(
        closed,
        full,
        parameters={
            "i": float(i), "eps": float(eps), "cycles": float(cycles),
            "nu": float(nu), "hbar": float(hbar),
            "t_rev": float(t_rev), "t_total": float(t_total), "angle": float(angle),
        },
    )


def qft(d: int) -> ComplexMatrix:
    """Normalized discrete-Fourier gate (1/sqrt(d)) [omega^{jk}], omega = e^{2 pi i/d}.

    The d-level generalization of the Hadamard gate (d = 2 reproduces it).
    Columns 1..d-1 for d = 3 are the circulating-current eigenstates. The
    normalization makes the matrix unitary; F^2 is the index-reversal
    permutation and F^4 = I.
    """
    if d < 2:
        raise ValueError(f"d must be >= 2, got {d}")
    j, k = np.meshgrid(np.arange(d), np.arange(d), indexing="ij")
    return np.exp(2j * np.pi * j * k / d) / np.sqrt(d)


def charge_observable(d: int = 3) -> tuple[ComplexMatrix, np.ndarray]:
    """Charge operator conjugate to the well (flux) basis, in units 2e = 1.

    Q = F diag(0, +1, -1) F^dag with F the 3-level Fourier gate; its
    eigenvalues are {-1, 0, +1} and its eigenvectors are the Fourier
    columns, which are also the cyclic-current eigenstates. A charge
    measurement therefore implements a Fourier change of basis.
    """
    if d != 3:
        raise ValueError("the charge observable is defined for d = 3")
    f = qft(3)
    q = f @ np.diag([0.0, 1.0, -1.0]).astype(complex) @ f.conj().T
    return q, np.array([-1.0, 0.0, 1.0])


# ---------------------------------------------------------------------------
# two-level decomposition of 3x3 unitaries
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Su3Decomposition:
    """target = e^{i phase} R01 R02 R12, each factor a two-level unitary."""

    r01: np.ndarray
    r02: np.ndarray
    r12: np.ndarray
    phase: float

    def factors(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        return (self.r01, self.r02, self.r12)

    def matrix(self) -> ComplexMatrix:
        return np.exp(1j * self.phase) * (self.r01 @ self.r02 @ self.r12)


def _embed2(block: np.ndarray, pair: tuple[int, int], dim: int = 3) -> np.ndarray:
    m = np.eye(dim, dtype=complex)
    i, j = pair
    m[i, i], m[i, j] = block[0, 0], block[0, 1]
    m[j, i], m[j, j] = block[1, 0], block[1, 1]
    return m


def _givens_reflection(a: complex, b: complex) -> np.ndarray:
    # unitary with first column (a, b)/r; G^dag (a, b) = (r, 0), r real > 0
    r = np.hypot(abs(a), abs(b))
    return np.array([[a / r, np.conj(b) / r], [b / r, -np.conj(a) / r]])


def su3_decompose(target, tol: float = 1e-13) -> Su3Decomposition:
    """Factor a 3x3 unitary into pairwise two-level unitaries.

    Givens-style elimination of the below-diagonal first-column entries:
    a (0,1)-pair unitary clears the (1,0) entry, a (0,2)-pair unitary
    clears (2,0) and leaves the (0,0) entry at exactly 1, and the
    remaining lower block is the (1,2) factor. Each factor differs from
    the identity only on its declared pair, the reconstruction is exact
    and the global phase is zero. Gates that already act on a single pair
    (e.g. the ternary X-gates) come out as that single factor.
    """
    u = as_complex_matrix(target)
    if u.shape != (3, 3) or not is_unitary(u, 1e-10):
        raise ValueError("target must be a 3x3 unitary")

    if abs(u[1, 0]) >= tol:
        r01 = _embed2(_givens_reflection(u[0, 0], u[1, 0]), (0, 1))
    else:
        r01 = np.eye(3, dtype=complex)
    s1 = r01.conj().T @ u

    if abs(s1[2, 0]) >= tol:
        r02 = _embed2(_givens_reflection(s1[0, 0], s1[2, 0]), (0, 2))
    elif abs(s1[0, 0] - 1.0) >= tol:
        # residual pure phase in the (0,0) slot; absorb it into the pair
        r02 = _embed2(np.diag([s1[0, 0] / abs(s1[0, 0]), 1.0 + 0j]), (0, 2))
    else:
        r02 = np.eye(3, dtype=complex)
    s2 = r02.conj().T @ s1

    r12 = _embed2(s2[1:, 1:], (1, 2))
    return Su3Decomposition(r01=r01, r02=r02, r12=r12, phase=0.0)


# ---------------------------------------------------------------------------
# random targets for property suites
# ---------------------------------------------------------------------------

def haar_unitary(dim: int, rng: np.random.Generator) -> ComplexMatrix:
    """Haar-distributed unitary via QR of a complex Ginibre matrix."""
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim)))
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))
