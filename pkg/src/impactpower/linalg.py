"""Dense complex linear algebra for small Hilbert spaces.

All operations take and return plain ``numpy.ndarray`` values (complex128,
row-major).  Composite indices are always A-major: the row index of a
bipartite operator is ``i_A * d_B + i_B``, so ``tensor`` is the plain
Kronecker product and an operator on A alone embeds as ``tensor(op, eye(d_B))``.

Hermitian eigendecomposition is done in-house with a cyclic Jacobi
iteration.  Target dimensions are tiny (<= ~16), where explicit tolerances
and bitwise-reproducible behaviour matter more than speed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NoConvergence, NotHermitian

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)

#: default absolute tolerance on max entrywise deviation from A = A^dagger
HERMITICITY_TOL = 1e-9

_MAX_JACOBI_SWEEPS = 60


def dag(a: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return np.asarray(a).conj().T


def is_hermitian(a: np.ndarray, tol: float = HERMITICITY_TOL) -> bool:
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        return False
    return float(np.max(np.abs(a - a.conj().T))) <= tol


def tensor(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product with A-major index ordering."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def _bipartite_view(a: np.ndarray, dims: tuple[int, int]) -> np.ndarray:
    d_a, d_b = int(dims[0]), int(dims[1])
    a = np.asarray(a, dtype=complex)
    n = d_a * d_b
    if a.shape != (n, n):
        raise DimensionMismatch(
            f"expected a {n}x{n} matrix for dims {d_a}x{d_b}, got {a.shape}"
        )
    return a.reshape(d_a, d_b, d_a, d_b)


def partial_trace_B(a: np.ndarray, dims: tuple[int, int]) -> np.ndarray:
    """Trace out subsystem B, returning a d_A x d_A matrix."""
    return np.einsum("ibjb->ij", _bipartite_view(a, dims))


def partial_trace_A(a: np.ndarray, dims: tuple[int, int]) -> np.ndarray:
    """Trace out subsystem A, returning a d_B x d_B matrix."""
    return np.einsum("aiaj->ij", _bipartite_view(a, dims))


def hs_norm_sq(a: np.ndarray) -> float:
    """Squared Hilbert-Schmidt (Frobenius) norm, sum of |a_ij|^2."""
    a = np.asarray(a)
    return float(np.vdot(a, a).real)


def trace_norm(a: np.ndarray, tol: float = HERMITICITY_TOL) -> float:
    """Trace norm of a Hermitian matrix, the sum of |eigenvalue|."""
    return float(np.sum(np.abs(hermitian_eigenvalues(a, tol=tol))))


@dataclass(frozen=True, eq=False)
class HermitianEig:
    """Spectral decomposition A = V diag(w) V^dagger.

    ``eigenvalues`` are real and ascending; ``eigenvectors`` holds the
    matching orthonormal eigenvectors as columns.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def hermitian_eigendecompose(a: np.ndarray, tol: float = HERMITICITY_TOL) -> HermitianEig:
    """Eigendecompose a Hermitian matrix by cyclic Jacobi rotations.

    Raises NotHermitian if any entry of A - A^dagger exceeds ``tol`` in
    magnitude, and NoConvergence if the off-diagonal norm fails to reach
    ~1e-14 of the Frobenius norm within the sweep budget (does not happen
    for Hermitian input at these sizes).
    """
    work = _checked_hermitian_part(a, tol)
    vals, vecs = _jacobi(work, want_vectors=True)
    return HermitianEig(eigenvalues=vals, eigenvectors=vecs)


def hermitian_eigenvalues(a: np.ndarray, tol: float = HERMITICITY_TOL) -> np.ndarray:
    """Ascending eigenvalues of a Hermitian matrix (no eigenvectors)."""
    work = _checked_hermitian_part(a, tol)
    vals, _ = _jacobi(work, want_vectors=False)
    return vals


def _checked_hermitian_part(a: np.ndarray, tol: float) -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {a.shape}")
    dev = float(np.max(np.abs(a - a.conj().T)))
    if dev > tol:
        raise NotHermitian(
            f"matrix is not Hermitian: max |A - A^dagger| = {dev:.3e} exceeds {tol:.1e}"
        )
    return (a + a.conj().T) / 2.0


def _off_diagonal_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diagonal(a))
    return math.sqrt(hs_norm_sq(off))


def _jacobi(work: np.ndarray, want_vectors: bool) -> tuple[np.ndarray, np.ndarray | None]:
    n = work.shape[0]
    vecs = np.eye(n, dtype=complex) if want_vectors else None
    if n == 1:
        vals = np.array([work[0, 0].real])
        return vals, vecs

    work = work.copy()
    fro = math.sqrt(hs_norm_sq(work))
    stop = max(1e-14 * fro, 1e-300)
    skip = stop / n

    for _ in range(_MAX_JACOBI_SWEEPS):
        if _off_diagonal_norm(work) <= stop:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = work[p, q]
                r = abs(apq)
                if r <= skip:
                    continue
                phase = apq / r
                alpha = work[p, p].real
                beta = work[q, q].real
                tau = (beta - alpha) / (2.0 * r)
                t = math.copysign(1.0, tau) / (abs(tau) + math.hypot(1.0, tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                sp = s * phase
                spc = s * phase.conjugate()

                col_p = c * work[:, p] - spc * work[:, q]
                col_q = sp * work[:, p] + c * work[:, q]
                work[:, p] = col_p
                work[:, q] = col_q
                row_p = c * work[p, :] - sp * work[q, :]
                row_q = spc * work[p, :] + c * work[q, :]
                work[p, :] = row_p
                work[q, :] = row_q
                work[p, q] = 0.0
                work[q, p] = 0.0
                work[p, p] = work[p, p].real
                work[q, q] = work[q, q].real

                if vecs is not None:
                    v_p = c * vecs[:, p] - spc * vecs[:, q]
                    v_q = sp * vecs[:, p] + c * vecs[:, q]
                    vecs[:, p] = v_p
                    vecs[:, q] = v_q
    else:
        raise NoConvergence(
            f"Jacobi iteration did not converge in {_MAX_JACOBI_SWEEPS} sweeps "
            f"(off-diagonal norm {_off_diagonal_norm(work):.3e})"
        )

    vals = np.diagonal(work).real.copy()
    order = np.argsort(vals, kind="stable")
    vals = vals[order]
    if vecs is not None:
        vecs = vecs[:, order]
    return vals, vecs


def haar_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random d x d unitary (QR of a Ginibre matrix, phases fixed)."""
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / math.sqrt(2.0)
    q, r = np.linalg.qr(z)
    ph = np.diagonal(r).copy()
    ph /= np.abs(ph)
    return q * ph


def matrix_to_pairs(a: np.ndarray) -> list[list[float]]:
    """Flatten a complex matrix to row-major [re, im] pairs (JSON codec)."""
    return [[float(z.real), float(z.imag)] for z in np.asarray(a, dtype=complex).ravel()]


def pairs_to_matrix(pairs: list[list[float]], rows: int, cols: int) -> np.ndarray:
    """Inverse of :func:`matrix_to_pairs`."""
    flat = np.asarray(pairs, dtype=float)
    if flat.ndim != 2 or flat.shape != (rows * cols, 2):
        raise DimensionMismatch(
            f"expected {rows * cols} [re, im] pairs for a {rows}x{cols} matrix, "
            f"got array of shape {flat.shape}"
        )
    return (flat[:, 0] + 1j * flat[:, 1]).reshape(rows, cols)
