"""Dense complex operator algebra for small d-level systems.

Generator sets (Pauli, Gell-Mann), SU(3) structure constants computed
numerically from commutators, Hermitian eigendecomposition with
deterministic ordering and degeneracy grouping, spectral unitary
exponentials, and a phase-insensitive distance between operators.

Everything is dense complex128 and intended for dims well below ~64;
all functions are pure and all returned arrays are read-only.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

HERMITICITY_TOL = 1e-10
UNITARITY_TOL = 1e-12

ComplexMatrix = np.ndarray

_PAULI = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)

_SQRT3 = np.sqrt(3.0)

_GELL_MANN = (
    np.array([[0, 1, 0], [1, 0, 0], [0, 0, 0]], dtype=complex),
    np.array([[0, -1j, 0], [1j, 0, 0], [0, 0, 0]], dtype=complex),
    np.array([[1, 0, 0], [0, -1, 0], [0, 0, 0]], dtype=complex),
    np.array([[0, 0, 1], [0, 0, 0], [1, 0, 0]], dtype=complex),
    np.array([[0, 0, -1j], [0, 0, 0], [1j, 0, 0]], dtype=complex),
    np.array([[0, 0, 0], [0, 0, 1], [0, 1, 0]], dtype=complex),
    np.array([[0, 0, 0], [0, 0, -1j], [0, 1j, 0]], dtype=complex),
    np.array([[1, 0, 0], [0, 1, 0], [0, 0, -2]], dtype=complex) / _SQRT3,
)


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


def as_complex_matrix(m) -> ComplexMatrix:
    """Coerce to a square, finite complex128 array."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a.view(float))):
        raise ValueError("matrix entries must be finite")
    return a


def pauli(i: int) -> ComplexMatrix:
    """Pauli matrix sigma_i for i in {1, 2, 3} (x, y, z)."""
    if i not in (1, 2, 3):
        raise ValueError(f"Pauli index must be 1, 2 or 3, got {i}")
    return _PAULI[i - 1].copy()


def gell_mann(a: int) -> ComplexMatrix:
    """Gell-Mann matrix lambda_a for a in 1..8.

    The eight traceless Hermitian generators of the fundamental SU(3)
    representation, normalized so that Tr(lambda_a lambda_b) = 2 delta_ab.
    """
    if a not in range(1, 9):
        raise ValueError(f"Gell-Mann index must be in 1..8, got {a}")
    return _GELL_MANN[a - 1].copy()


def commutator(a: ComplexMatrix, b: ComplexMatrix) -> ComplexMatrix:
    """[a, b] = ab - ba."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    return a @ b - b @ a


def structure_constants(tol: float = 1e-12) -> dict[tuple[int, int, int], float]:
    """SU(3) structure constants f_ijk from commutators.

    Computed as f_ijk = (1/4i) Tr([lambda_i, lambda_j] lambda_k) so that
    [lambda_i, lambda_j] = 2i sum_k f_ijk lambda_k. Returns every nonzero
    entry (all index orderings); f is completely antisymmetric. The
    numerically computed table is authoritative: the standard nonzero set
    is f_123 = 1, f_147 = f_246 = f_257 = f_345 = 1/2,
    f_156 = f_367 = -1/2, f_458 = f_678 = sqrt(3)/2.
    """
    f: dict[tuple[int, int, int], float] = {}
    for i in range(1, 9):
        for j in range(1, 9):
            if i == j:
                continue
            comm = commutator(_GELL_MANN[i - 1], _GELL_MANN[j - 1])
            for k in range(1, 9):
                val = (np.trace(comm @ _GELL_MANN[k - 1]) / 4j).real
                if abs(val) > tol:
                    f[(i, j, k)] = float(val)
    return f


def is_hermitian(m, tol: float = UNITARITY_TOL) -> bool:
    """True if ||M - M^dag||_max <= tol * max(1, ||M||_max)."""
    a = np.asarray(m, dtype=complex)
    scale = max(1.0, float(np.max(np.abs(a)))) if a.size else 1.0
    return bool(np.max(np.abs(a - a.conj().T)) <= tol * scale)


def is_unitary(m, tol: float = UNITARITY_TOL) -> bool:
    """True if ||M^dag M - I||_max <= tol."""
    a = np.asarray(m, dtype=complex)
    return bool(np.max(np.abs(a.conj().T @ a - np.eye(a.shape[0]))) <= tol)


@dataclass(frozen=True)
class Spectrum:
    """Eigendecomposition of a Hermitian operator.

    eigenvalues are ascending; eigenvectors[:, k] is the unit-norm vector
    for eigenvalues[k]; degeneracy_groups partitions 0..dim-1 into runs of
    eigenvalues closer than group_tol.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    degeneracy_groups: tuple[tuple[int, ...], ...]
    group_tol: float

    @property
    def dim(self) -> int:
        return int(self.eigenvalues.shape[0])

    def gaps(self) -> np.ndarray:
        """Eigenvalue gaps E_i - E_0."""
        return self.eigenvalues - self.eigenvalues[0]


def _phase_fix(v: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    """Rotate a vector's global phase so its first nonzero entry is real > 0."""
    idx = np.flatnonzero(np.abs(v) > tol)
    if idx.size == 0:
        return v
    lead = v[idx[0]]
    return v * (np.conj(lead) / abs(lead))


def hermitian_eig(h, group_tol: float | None = None) -> Spectrum:
    """Eigendecomposition of a Hermitian matrix with deterministic ordering.

    Eigenvalues ascending; each eigenvector is phase-fixed (first nonzero
    component real positive) and ties inside a degeneracy group are ordered
    lexicographically by (Re, Im) of the vector entries. group_tol defaults
    to 1e-9 * max(1, ||H||_F).
    """
    a = as_complex_matrix(h)
    if not is_hermitian(a, HERMITICITY_TOL):
        raise ValueError("matrix is not Hermitian within tolerance")
    if group_tol is None:
        group_tol = 1e-9 * max(1.0, float(np.linalg.norm(a)))
    w, v = np.linalg.eigh((a + a.conj().T) / 2.0)
    for k in range(w.size):
        v[:, k] = _phase_fix(v[:, k])

    groups: list[list[int]] = [[0]]
    for k in range(1, w.size):
        if w[k] - w[groups[-1][-1]] <= group_tol:
            groups[-1].append(k)
        else:
            groups.append([k])
    # deterministic order inside degenerate groups
    order = []
    for g in groups:
        keys = [tuple(np.round(v[:, k], 12).view(float)) for k in g]
        order.extend([k for _, k in sorted(zip(keys, g))])
    w = w[order]
    v = v[:, order]

    return Spectrum(
        eigenvalues=_readonly(w),
        eigenvectors=_readonly(v),
        degeneracy_groups=tuple(tuple(g) for g in groups),
        group_tol=float(group_tol),
    )


def unitary_exp(h, t: float, hbar: float = 1.0) -> ComplexMatrix:
    """exp(-i H t / hbar) via spectral decomposition. H must be Hermitian."""
    a = as_complex_matrix(h)
    if not is_hermitian(a, HERMITICITY_TOL):
        raise ValueError("matrix is not Hermitian within tolerance")
    w, v = np.linalg.eigh((a + a.conj().T) / 2.0)
    phases = np.exp(-1j * w * t / hbar)
    return (v * phases) @ v.conj().T


def global_phase_distance(u, v) -> float:
    """min over gamma of ||U - e^{i gamma} V||_F.

    The minimizing phase is gamma* = arg Tr(V^dag U); the distance is
    evaluated directly as ||U - e^{i gamma*} V||_F, which is free of the
    catastrophic cancellation the expanded form
    sqrt(||U||^2 + ||V||^2 - 2|Tr(V^dag U)|) suffers near zero.
    """
    a = np.asarray(u, dtype=complex)
    b = np.asarray(v, dtype=complex)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    tr = np.trace(b.conj().T @ a)
    gamma = 0.0 if tr == 0 else np.angle(tr)
    return float(np.linalg.norm(a - np.exp(1j * gamma) * b))
