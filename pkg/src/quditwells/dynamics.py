"""Exact closed-system dynamics of small d-level systems.

Evolution by spectral exponentiation, the two-well Rabi law, revival
detection through gap rationalization, observable expectations, and
spectra of perturbed Hamiltonians.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

import numpy as np

from quditwells.operators import (
    Spectrum,
    as_complex_matrix,
    global_phase_distance,
    hermitian_eig,
    is_hermitian,
    unitary_exp,
)

NORM_TOL = 1e-12


def basis_state(dim: int, k: int) -> np.ndarray:
    """Localized state in well k."""
    if not 0 <= k < dim:
        raise ValueError(f"well index {k} out of range for dim {dim}")
    v = np.zeros(dim, dtype=complex)
    v[k] = 1.0
    return v


def uniform_state(dim: int) -> np.ndarray:
    """Equal-weight superposition (1, ..., 1)/sqrt(d): the symmetric ground state."""
    return np.ones(dim, dtype=complex) / np.sqrt(dim)


def current_state(dim: int, sign: int = +1) -> np.ndarray:
    """Cyclic-current eigenstate with extremal eigenvalue +-2 sin(2 pi / d).

    sign selects the circulation direction; for d = 3 these carry current
    +-sqrt(3).
    """
    if sign not in (+1, -1):
        raise ValueError("sign must be +1 or -1")
    k = np.arange(dim)
    n = 1 if sign > 0 else dim - 1
    return np.exp(2j * np.pi * n * k / dim) / np.sqrt(dim)


def _as_state(psi, dim: int | None = None) -> np.ndarray:
    v = np.asarray(psi, dtype=complex).ravel()
    if dim is not None and v.size != dim:
        raise ValueError(f"state dimension {v.size} does not match {dim}")
    norm = np.linalg.norm(v)
    if abs(norm**2 - 1.0) > max(NORM_TOL, 1e-9):
        raise ValueError(f"state is not normalized: |psi|^2 = {norm**2}")
    return v


def evolve(h, psi0, t: float, hbar: float = 1.0) -> np.ndarray:
    """psi(t) = exp(-i H t / hbar) psi0; preserves the norm exactly."""
    a = as_complex_matrix(h)
    v = _as_state(psi0, a.shape[0])
    return unitary_exp(a, t, hbar) @ v


def rabi_probability(nu: float, t, hbar: float = 1.0):
    """Right-well population for a symmetric double well started in the left well.

    P_R(t) = (1 - cos(omega t)) / 2 with omega = 2 nu / hbar, so
    dP_R/dt = (nu/hbar) sin(omega t). Vectorized over t.
    """
    omega = 2.0 * nu / hbar
    t = np.asarray(t, dtype=float)
    p = 0.5 * (1.0 - np.cos(omega * t))
    return p if p.ndim else float(p)


def expectation(psi, a) -> float:
    """<psi|A|psi> for Hermitian A; the value is real by construction."""
    m = as_complex_matrix(a)
    if not is_hermitian(m):
        raise ValueError("observable must be Hermitian")
    v = _as_state(psi, m.shape[0])
    val = np.vdot(v, m @ v)
    return float(val.real)


def degeneracy_split(h, dh, eps: float) -> Spectrum:
    """Spectrum of H + eps * dH (both Hermitian)."""
    a = as_complex_matrix(h)
    b = as_complex_matrix(dh)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return hermitian_eig(a + eps * b)


@dataclass(frozen=True)
class RevivalReport:
    """Outcome of a revival search.

    found means the propagator at `period` is the identity up to a global
    phase within tol, which makes every initial state return to itself;
    fidelity_at_period is the worst basis-state return amplitude
    min_k |U(T)_kk|. search_bound is the largest period the harmonic cap
    allows (2 pi hbar max_harmonic / smallest gap); a not-found report
    excludes revivals below that bound.
    """

    found: bool
    period: float | None
    fidelity_at_period: float | None
    search_bound: float | None
    base_gap: float | None = None
    harmonics: tuple[int, ...] | None = None
    phase_distance: float | None = None


def revival_period(
    h,
    hbar: float = 1.0,
    tol: float = 1e-9,
    max_harmonic: int = 4096,
) -> RevivalReport:
    """Detect periodic revival of exp(-i H t / hbar).

    A revival exists iff all eigenvalue gaps E_i - E_0 are integer
    multiples of a common base gap g; then T = 2 pi hbar / g. Gap ratios
    are rationalized by continued fractions with denominators bounded by
    max_harmonic and the candidate period is confirmed by checking that
    the propagator at T is the identity up to a global phase within tol
    (Frobenius), which rules out false positives. Shifting H by a multiple
    of the identity changes nothing.
    """
    a = as_complex_matrix(h)
    spec = hermitian_eig(a)
    energies = spec.eigenvalues
    scale = max(1.0, float(np.max(np.abs(energies))))
    gaps = np.unique(energies - energies[0])
    gaps = gaps[gaps > tol * scale]
    if gaps.size == 0:
        # H proportional to the identity: every state is stationary.
        return RevivalReport(
            found=True, period=0.0, fidelity_at_period=1.0,
            search_bound=None, base_gap=None, harmonics=(), phase_distance=0.0,
        )

    g_min = float(gaps[0])
    bound = 2 * np.pi * hbar * max_harmonic / g_min
    denom = 1
    for r in gaps / g_min:
        denom = lcm(denom, Fraction(float(r)).limit_denominator(max_harmonic).denominator)
    g = g_min / denom
    harmonics = np.rint(gaps / g).astype(int)
    if np.any(harmonics > max_harmonic):
        return RevivalReport(found=False, period=None, fidelity_at_period=None,
                             search_bound=bound)
    if float(np.max(np.abs(gaps - harmonics * g))) > tol * scale:
        return RevivalReport(found=False, period=None, fidelity_at_period=None,
                             search_bound=bound)

    period = 2 * np.pi * hbar / g
    u = unitary_exp(a, period, hbar)
    dist = global_phase_distance(u, np.eye(a.shape[0]))
    if dist > tol:
        return RevivalReport(found=False, period=None, fidelity_at_period=None,
                             search_bound=bound, phase_distance=dist)
    fidelity = float(np.min(np.abs(np.diag(u))))
    return RevivalReport(
        found=True,
        period=float(period),
        fidelity_at_period=fidelity,
        search_bound=bound,
        base_gap=float(g),
        harmonics=tuple(int(n) for n in harmonics),
        phase_distance=float(dist),
    )
