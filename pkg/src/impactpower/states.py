"""Bipartite density matrices: validation, named families, sampling, Bloch data.

A state lives on H_A (x) H_B with the A-major index convention from
:mod:`impactpower.linalg`.  Construction always validates the density-operator
invariants (Hermitian, unit trace, positive semidefinite); eigenvalues in
[-1e-9, 0) are treated as round-off, clamped to zero and the state is
renormalized.  Anything worse is rejected.
"""

from __future__ import annotations

import json
import math
from dataclasses import InitVar, dataclass

import numpy as np

from . import linalg
from .errors import (
    DimensionMismatch,
    InvalidDensityMatrix,
    NotNormalized,
    OutOfRange,
)

HERMITIAN_TOL = 1e-9
TRACE_TOL = 1e-9
EIGENVALUE_FLOOR = -1e-9


def _validated_density(mat: np.ndarray, dim: int) -> np.ndarray:
    if mat.shape != (dim, dim):
        raise DimensionMismatch(
            f"state matrix has shape {mat.shape}, expected {(dim, dim)}"
        )
    dev = float(np.max(np.abs(mat - mat.conj().T)))
    if dev > HERMITIAN_TOL:
        raise InvalidDensityMatrix(
            f"hermiticity violated: max |rho - rho^dagger| = {dev:.3e} > {HERMITIAN_TOL:.1e}"
        )
    mat = (mat + mat.conj().T) / 2.0
    tr = float(np.trace(mat).real)
    if abs(tr - 1.0) > TRACE_TOL:
        raise InvalidDensityMatrix(
            f"trace invariant violated: Tr[rho] = {tr!r}, expected 1 within {TRACE_TOL:.1e}"
        )
    mat = mat / tr
    eig = linalg.hermitian_eigendecompose(mat)
    smallest = float(eig.eigenvalues[0])
    if smallest < EIGENVALUE_FLOOR:
        raise InvalidDensityMatrix(
            f"positivity violated: smallest eigenvalue {smallest:.3e} < {EIGENVALUE_FLOOR:.1e}"
        )
    if smallest < 0.0:
        vals = np.clip(eig.eigenvalues, 0.0, None)
        v = eig.eigenvectors
        mat = (v * vals) @ v.conj().T
        mat = (mat + mat.conj().T) / 2.0
        mat = mat / float(np.trace(mat).real)
    purity = float(np.vdot(mat, mat).real)
    if not (1.0 / dim - 1e-9 <= purity <= 1.0 + 1e-9):
        raise InvalidDensityMatrix(
            f"purity {purity!r} outside [1/{dim} - 1e-9, 1 + 1e-9]"
        )
    return mat


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Validated density operator on a d_A x d_B bipartite space."""

    mat: np.ndarray
    dims: tuple[int, int]
    validate: InitVar[bool] = True

    def __post_init__(self, validate: bool) -> None:
        d_a, d_b = int(self.dims[0]), int(self.dims[1])
        if d_a < 1 or d_b < 1:
            raise DimensionMismatch(f"subsystem dimensions must be >= 1, got {self.dims}")
        mat = np.asarray(self.mat, dtype=complex)
        if validate:
            mat = _validated_density(mat, d_a * d_b)
        object.__setattr__(self, "mat", mat)
        object.__setattr__(self, "dims", (d_a, d_b))

    @property
    def d_a(self) -> int:
        return self.dims[0]

    @property
    def d_b(self) -> int:
        return self.dims[1]

    @property
    def dim(self) -> int:
        return self.dims[0] * self.dims[1]

    @property
    def purity(self) -> float:
        """Tr[rho^2]."""
        return float(np.vdot(self.mat, self.mat).real)

    def reduced_a(self) -> np.ndarray:
        """Marginal on A (B traced out)."""
        return linalg.partial_trace_B(self.mat, self.dims)

    def reduced_b(self) -> np.ndarray:
        """Marginal on B (A traced out)."""
        return linalg.partial_trace_A(self.mat, self.dims)


def from_pure(vec: np.ndarray, dims: tuple[int, int]) -> DensityMatrix:
    """Rank-one projector |psi><psi| for a normalized state vector."""
    vec = np.asarray(vec, dtype=complex).reshape(-1)
    d_a, d_b = int(dims[0]), int(dims[1])
    if vec.size != d_a * d_b:
        raise DimensionMismatch(
            f"vector of length {vec.size} does not fit dims {d_a}x{d_b}"
        )
    nrm = float(np.linalg.norm(vec))
    if abs(nrm - 1.0) > 1e-9:
        raise NotNormalized(f"state vector norm {nrm!r} is not 1 within 1e-9")
    vec = vec / nrm
    return DensityMatrix(np.outer(vec, vec.conj()), (d_a, d_b), validate=False)


def phi_plus(d: int = 2) -> np.ndarray:
    """Maximally entangled vector sum_k |kk> / sqrt(d) on a d x d space."""
    v = np.zeros(d * d, dtype=complex)
    v[:: d + 1] = 1.0 / math.sqrt(d)
    return v


def swap_operator(d: int = 2) -> np.ndarray:
    """Permutation operator F = sum_{k,l} |k><l| (x) |l><k|."""
    f = np.zeros((d * d, d * d), dtype=complex)
    for k in range(d):
        for l in range(d):
            f[k * d + l, l * d + k] = 1.0
    return f


def werner(x: float) -> DensityMatrix:
    """Two-qubit Werner state (2-x)/6 * Id + (2x-1)/6 * F, x in [-1, 1].

    Purity is (x^2 - x + 1)/3; the family runs from the singlet (x = -1)
    through the maximally mixed state (x = 1/2) to the symmetric edge (x = 1).
    """
    x = float(x)
    if not -1.0 <= x <= 1.0:
        raise OutOfRange(f"werner parameter {x!r} outside [-1, 1]")
    mat = (2.0 - x) / 6.0 * np.eye(4, dtype=complex) + (2.0 * x - 1.0) / 6.0 * swap_operator(2)
    return DensityMatrix(mat, (2, 2))


def isotropic(f: float, d: int = 2) -> DensityMatrix:
    """Isotropic state on d x d: fidelity-f mixture of |phi+><phi+| and its complement.

    rho = (1-f)/(d^2-1) * (Id - P) + f * P with P the maximally entangled
    projector; invariant under U (x) U* twirling.
    """
    f = float(f)
    if not 0.0 <= f <= 1.0:
        raise OutOfRange(f"isotropic fidelity {f!r} outside [0, 1]")
    if d < 2:
        raise OutOfRange(f"isotropic local dimension must be >= 2, got {d}")
    p = np.outer(phi_plus(d), phi_plus(d).conj())
    mat = (1.0 - f) / (d * d - 1.0) * (np.eye(d * d, dtype=complex) - p) + f * p
    return DensityMatrix(mat, (d, d))


@dataclass(frozen=True, eq=False)
class ClassicalQuantumSpec:
    """Data for a classically correlated state sum_i p_i |i><i| (x) omega_i.

    ``basis`` holds the orthonormal A-side vectors |i> as columns, ``blocks``
    the matching B-side density operators.
    """

    probabilities: np.ndarray
    basis: np.ndarray
    blocks: tuple[np.ndarray, ...]

    def __post_init__(self) -> None:
        probs = np.asarray(self.probabilities, dtype=float).reshape(-1)
        basis = np.asarray(self.basis, dtype=complex)
        blocks = tuple(np.asarray(b, dtype=complex) for b in self.blocks)
        n = probs.size
        if basis.ndim != 2 or basis.shape[1] != n or len(blocks) != n:
            raise DimensionMismatch(
                f"need one basis column and one block per probability "
                f"(got {n} probabilities, basis {basis.shape}, {len(blocks)} blocks)"
            )
        if np.any(probs < -1e-12):
            raise OutOfRange(f"negative probability {float(probs.min())!r}")
        if abs(float(probs.sum()) - 1.0) > 1e-12:
            raise OutOfRange(f"probabilities sum to {float(probs.sum())!r}, expected 1")
        gram = basis.conj().T @ basis
        if float(np.max(np.abs(gram - np.eye(n)))) > 1e-10:
            raise NotNormalized("basis columns are not orthonormal within 1e-10")
        d_b = blocks[0].shape[0]
        for b in blocks:
            if b.shape != (d_b, d_b):
                raise DimensionMismatch("B-side blocks have inconsistent shapes")
            _validated_density(b, d_b)
        object.__setattr__(self, "probabilities", np.clip(probs, 0.0, None))
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "blocks", blocks)

    @property
    def d_a(self) -> int:
        return self.basis.shape[0]

    @property
    def d_b(self) -> int:
        return self.blocks[0].shape[0]


def classical_quantum(spec: ClassicalQuantumSpec) -> DensityMatrix:
    """Assemble the zero-discord state sum_i p_i |i><i| (x) omega_i."""
    d_a, d_b = spec.d_a, spec.d_b
    mat = np.zeros((d_a * d_b, d_a * d_b), dtype=complex)
    for p, vec, block in zip(spec.probabilities, spec.basis.T, spec.blocks):
        mat += p * linalg.tensor(np.outer(vec, vec.conj()), block)
    return DensityMatrix(mat, (d_a, d_b))


def random_state(
    dims: tuple[int, int],
    rank: int | None = None,
    seed: int | np.random.Generator | None = None,
) -> DensityMatrix:
    """Sample a random state by tracing out a rank-sized purification.

    G is a (d x rank) complex Ginibre matrix and rho = G G^dagger / Tr;
    at full rank this is the Hilbert-Schmidt induced measure.  Deterministic
    for a given seed.
    """
    d_a, d_b = int(dims[0]), int(dims[1])
    dim = d_a * d_b
    if rank is None:
        rank = dim
    if not 1 <= rank <= dim:
        raise OutOfRange(f"rank {rank} outside [1, {dim}]")
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((dim, rank)) + 1j * rng.standard_normal((dim, rank))
    mat = g @ g.conj().T
    mat /= float(np.trace(mat).real)
    return DensityMatrix(mat, (d_a, d_b))


def random_cq_spec(
    dims: tuple[int, int],
    n_blocks: int | None = None,
    seed: int | np.random.Generator | None = None,
) -> ClassicalQuantumSpec:
    """Sample a random classical-quantum spec (Haar basis, Dirichlet weights)."""
    d_a, d_b = int(dims[0]), int(dims[1])
    if n_blocks is None:
        n_blocks = d_a
    if not 1 <= n_blocks <= d_a:
        raise OutOfRange(f"block count {n_blocks} outside [1, {d_a}]")
    rng = np.random.default_rng(seed)
    basis = linalg.haar_unitary(d_a, rng)[:, :n_blocks]
    probs = rng.dirichlet(np.ones(n_blocks))
    blocks = tuple(random_state((d_b, 1), seed=rng).mat for _ in range(n_blocks))
    return ClassicalQuantumSpec(probs, basis, blocks)


@dataclass(frozen=True, eq=False)
class BlochTwoQubit:
    """Local Bloch vectors x, y and correlation matrix T of a two-qubit state."""

    x: np.ndarray
    y: np.ndarray
    t: np.ndarray


def bloch_decompose(rho: DensityMatrix) -> BlochTwoQubit:
    """Pauli expectations x_i = <sigma_i (x) 1>, y_i = <1 (x) sigma_i>, T_ij = <sigma_i (x) sigma_j>."""
    if rho.dims != (2, 2):
        raise DimensionMismatch(f"Bloch decomposition needs a 2x2 system, got {rho.dims}")
    eye2 = np.eye(2, dtype=complex)
    x = np.array([np.trace(rho.mat @ linalg.tensor(s, eye2)).real for s in linalg.PAULIS])
    y = np.array([np.trace(rho.mat @ linalg.tensor(eye2, s)).real for s in linalg.PAULIS])
    t = np.array(
        [
            [np.trace(rho.mat @ linalg.tensor(si, sj)).real for sj in linalg.PAULIS]
            for si in linalg.PAULIS
        ]
    )
    return BlochTwoQubit(x=x, y=y, t=t)


def bloch_reconstruct(b: BlochTwoQubit) -> DensityMatrix:
    """Rebuild the state (1/4)(1 + x.sigma (x) 1 + 1 (x) y.sigma + sum T_ij sigma_i (x) sigma_j)."""
    eye2 = np.eye(2, dtype=complex)
    mat = linalg.tensor(eye2, eye2).astype(complex)
    for i, s in enumerate(linalg.PAULIS):
        mat += b.x[i] * linalg.tensor(s, eye2)
        mat += b.y[i] * linalg.tensor(eye2, s)
    for i, si in enumerate(linalg.PAULIS):
        for j, sj in enumerate(linalg.PAULIS):
            mat += b.t[i, j] * linalg.tensor(si, sj)
    return DensityMatrix(mat / 4.0, (2, 2))


def swap_parties(rho: DensityMatrix) -> DensityMatrix:
    """Exchange the roles of A and B (dims become (d_B, d_A))."""
    d_a, d_b = rho.dims
    mat = rho.mat.reshape(d_a, d_b, d_a, d_b).transpose(1, 0, 3, 2).reshape(rho.dim, rho.dim)
    return DensityMatrix(mat, (d_b, d_a), validate=False)


# --- JSON interface -------------------------------------------------------
#
# {"dims": [dA, dB], "matrix": [[re, im], ...]}  with the matrix flattened
# row-major, one [re, im] pair per entry.


def state_to_dict(rho: DensityMatrix) -> dict:
    return {"dims": [rho.d_a, rho.d_b], "matrix": linalg.matrix_to_pairs(rho.mat)}


def state_from_dict(data: dict) -> DensityMatrix:
    try:
        d_a, d_b = (int(v) for v in data["dims"])
        pairs = data["matrix"]
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidDensityMatrix(f"malformed state object: {exc}") from exc
    dim = d_a * d_b
    mat = linalg.pairs_to_matrix(pairs, dim, dim)
    return DensityMatrix(mat, (d_a, d_b))


def load_state(path) -> DensityMatrix:
    with open(path, "r", encoding="utf-8") as fh:
        return state_from_dict(json.load(fh))


def save_state(rho: DensityMatrix, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(state_to_dict(rho), fh)
