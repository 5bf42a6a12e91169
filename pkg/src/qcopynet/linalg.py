"""Dense complex linear algebra for one-, two-, and three-qubit operators.

Matrices are plain complex ndarrays indexed in ascending binary order with
qubit 0 as the most significant bit, so a two-qubit basis reads
|00>, |01>, |10>, |11>.  ``reverse_basis`` flips a vector or matrix to the
descending order (|11>, |10>, |01>, |00>) that some references prefer;
eigenvalues and traces are unaffected by the choice.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = [
    "MAX_DIM",
    "kron",
    "partial_trace",
    "partial_transpose",
    "hermitian_eigenvalues",
    "hs_distance",
    "validate_density",
    "reverse_basis",
    "num_qubits_of",
]

MAX_DIM = 8

HERMITICITY_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = 1e-10

_EIG_HERMITICITY_TOL = 1e-10
_JACOBI_OFF_TOL = 1e-14
_MAX_JACOBI_SWEEPS = 64


def _square(m) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    return m


def num_qubits_of(m: np.ndarray) -> int:
    """Number of qubits of a square matrix; rejects dims outside {2, 4, 8}."""
    dim = m.shape[0]
    n = (dim - 1).bit_length()
    if dim < 2 or dim > MAX_DIM or 2**n != dim:
        raise ValueError(f"unsupported dimension {dim}; expected 2, 4 or 8")
    return n


def kron(a, b) -> np.ndarray:
    """Tensor product; the left factor becomes the high-order subsystem."""
    a = _square(a)
    b = _square(b)
    num_qubits_of(a)
    num_qubits_of(b)
    dim = a.shape[0] * b.shape[0]
    if dim > MAX_DIM:
        raise ValueError(f"tensor product dimension {dim} exceeds the supported maximum {MAX_DIM}")
    return np.kron(a, b)


def partial_trace(rho, keep) -> np.ndarray:
    """Reduced matrix on the kept qubits, ordered as listed in ``keep``.

    The first listed qubit becomes the high-order subsystem of the result.
    Trace is preserved.
    """
    rho = _square(rho)
    n = num_qubits_of(rho)
    keep = tuple(int(q) for q in keep)
    if not keep:
        raise ValueError("keep must name at least one qubit")
    if len(set(keep)) != len(keep):
        raise ValueError(f"keep contains duplicate qubit indices: {keep}")
    if any(q < 0 or q >= n for q in keep):
        raise ValueError(f"keep {keep} out of range for a {n}-qubit matrix")
    drop = [q for q in range(n) if q not in keep]
    order = list(keep) + drop
    r = rho.reshape((2,) * (2 * n))
    r = r.transpose(order + [n + q for q in order])
    dk = 1 << len(keep)
    dd = 1 << len(drop)
    return np.einsum("imjm->ij", r.reshape(dk, dd, dk, dd))


def partial_transpose(rho, subsystem: int = 1) -> np.ndarray:
    """Transpose one qubit of a two-qubit matrix (0 = high-order, 1 = low-order).

    The result stays Hermitian when the input is Hermitian, but need not
    stay positive; that loss of positivity is exactly what the separability
    analysis looks for.  Applying the same transposition twice restores the
    input entry for entry.
    """
    rho = _square(rho)
    if rho.shape[0] != 4:
        raise ValueError("partial transpose is defined here for two-qubit matrices")
    if subsystem not in (0, 1):
        raise ValueError("subsystem must be 0 or 1")
    r = rho.reshape(2, 2, 2, 2)
    r = r.transpose((2, 1, 0, 3) if subsystem == 0 else (0, 3, 2, 1))
    return r.reshape(4, 4).copy()


def _jacobi_rotate(a: np.ndarray, p: int, q: int, negligible: float) -> None:
    """Zero a[p, q] (and a[q, p]) with a unitary plane rotation, in place."""
    apq = a[p, q]
    r = abs(apq)
    if r <= negligible:
        a[p, q] = 0.0
        a[q, p] = 0.0
        return
    tau = (a[q, q].real - a[p, p].real) / (2.0 * r)
    if abs(tau) > 1e150:
        t = 1.0 / (2.0 * tau)
    elif tau >= 0.0:
        t = 1.0 / (tau + math.sqrt(tau * tau + 1.0))
    else:
        t = -1.0 / (-tau + math.sqrt(tau * tau + 1.0))
    c = 1.0 / math.sqrt(t * t + 1.0)
    s = t * c
    w = apq / r
    col_p = a[:, p].copy()
    col_q = a[:, q].copy()
    a[:, p] = c * col_p - s * np.conj(w) * col_q
    a[:, q] = s * w * col_p + c * col_q
    row_p = a[p, :].copy()
    row_q = a[q, :].copy()
    a[p, :] = c * row_p - s * w * row_q
    a[q, :] = s * np.conj(w) * row_p + c * row_q
    a[p, q] = 0.0
    a[q, p] = 0.0
    a[p, p] = a[p, p].real
    a[q, q] = a[q, q].real


def hermitian_eigenvalues(h) -> np.ndarray:
    """All eigenvalues of a Hermitian matrix, ascending, repeats kept.

    Cyclic Jacobi rotations, swept until the off-diagonal norm drops below
    1e-14 (relative to the largest entry for badly scaled inputs).  For the
    dimensions handled here (<= 8) this is exact to machine precision.
    """
    h = _square(h)
    deviation = float(np.max(np.abs(h - h.conj().T)))
    if deviation > _EIG_HERMITICITY_TOL:
        raise ValueError(f"matrix is not Hermitian (max deviation {deviation:.3e})")
    a = np.array((h + h.conj().T) / 2.0, dtype=complex)
    n = a.shape[0]
    scale = max(1.0, float(np.max(np.abs(a))))
    negligible = _JACOBI_OFF_TOL * scale / (n * n)
    off_mask = ~np.eye(n, dtype=bool)
    for _ in range(_MAX_JACOBI_SWEEPS):
        off = math.sqrt(float(np.sum(np.abs(a[off_mask]) ** 2)))
        if off <= _JACOBI_OFF_TOL * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                _jacobi_rotate(a, p, q, negligible)
    else:
        raise RuntimeError("Jacobi eigenvalue iteration did not converge")
    return np.sort(np.diag(a).real)


def hs_distance(rho1, rho2) -> float:
    """Squared Hilbert-Schmidt norm of the difference, Tr[(rho1 - rho2)^2]."""
    rho1 = _square(rho1)
    rho2 = _square(rho2)
    if rho1.shape != rho2.shape:
        raise ValueError(f"dimension mismatch: {rho1.shape[0]} vs {rho2.shape[0]}")
    delta = rho1 - rho2
    return float(np.trace(delta @ delta).real)


def validate_density(
    rho,
    *,
    hermiticity_tol: float = HERMITICITY_TOL,
    trace_tol: float = TRACE_TOL,
    psd_tol: float = PSD_TOL,
) -> np.ndarray:
    """Check the density-matrix invariants and return rho as a complex ndarray.

    Raises ValueError if rho is not Hermitian, not unit trace, or not
    positive semidefinite within the given tolerances, or if any entry is
    non-finite.
    """
    rho = _square(rho)
    num_qubits_of(rho)
    if not np.all(np.isfinite(rho.real)) or not np.all(np.isfinite(rho.imag)):
        raise ValueError("density matrix has non-finite entries")
    dev = float(np.max(np.abs(rho - rho.conj().T)))
    if dev > hermiticity_tol:
        raise ValueError(f"density matrix is not Hermitian (max deviation {dev:.3e})")
    tr = complex(np.trace(rho))
    if abs(tr - 1.0) > trace_tol:
        raise ValueError(f"density matrix trace {tr} is not 1")
    low = float(hermitian_eigenvalues(rho)[0])
    if low < -psd_tol:
        raise ValueError(f"density matrix is not positive semidefinite (min eigenvalue {low:.3e})")
    return rho


def reverse_basis(m) -> np.ndarray:
    """Reindex a vector or square matrix between ascending and descending basis order.

    For two qubits this swaps |00> <-> |11> and |01> <-> |10>.  The map is
    its own inverse.
    """
    m = np.asarray(m, dtype=complex)
    if m.ndim == 1:
        return m[::-1].copy()
    if m.ndim == 2:
        return m[::-1, ::-1].copy()
    raise ValueError("expected a vector or a matrix")
