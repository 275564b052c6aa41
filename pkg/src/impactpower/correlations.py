"""Closed-form quantumness measures built on the impact power.

For qubit A the impact power of a nondegenerate H_A with measurement axis r
equals Tr[rho^2] - r^T M r, where M_ij = Tr[rho sigma_i^A rho sigma_j^A].
The extreme eigenvalues of M therefore give the largest and smallest
achievable impact power, and half the smallest one is the geometric discord
(squared Hilbert-Schmidt distance from the classical-quantum set).

For two qubits the same quantity has a Bloch-data form built from
K = x x^T + T T^T, and it obeys the purity bound
p_min <= (4/3) Tr[rho^2] - 1/3, saturated by the Werner family.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import dynamics, linalg
from .errors import DegenerateHamiltonian, DimensionMismatch
from .states import DensityMatrix, bloch_decompose

SATURATION_TOL = 1e-9
EIGENVALUE_TIE_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class MMatrix:
    """M_ij = Tr[rho sigma_i^A rho sigma_j^A] with its ascending spectrum."""

    m: np.ndarray
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


@dataclass(frozen=True, eq=False)
class KMatrix:
    """K = x x^T + T T^T from two-qubit Bloch data, with its top eigenvalue."""

    k: np.ndarray
    k_max: float


class BoundCheck(NamedTuple):
    lhs: float
    rhs: float
    saturates: bool


class GeneralBoundCheck(NamedTuple):
    p: float
    bound: float


@dataclass(frozen=True)
class CorrelationReport:
    """Bundle of the correlation quantities for one state.

    ``p_min``/``p_max`` and the purity-bound fields are only defined when the
    relevant closed forms apply (qubit A, respectively two qubits) and are
    None otherwise.  ``method`` records how the discord was obtained.
    """

    purity: float
    p_min: float | None
    p_max: float | None
    discord: float
    bound_rhs: float | None
    saturates_bound: bool | None
    method: str

    def to_dict(self) -> dict:
        return {
            "purity": self.purity,
            "p_min": self.p_min,
            "p_max": self.p_max,
            "discord": self.discord,
            "bound_rhs": self.bound_rhs,
            "saturates_bound": self.saturates_bound,
            "method": self.method,
        }


def _require_qubit_a(rho: DensityMatrix, what: str) -> None:
    if rho.d_a != 2:
        raise DimensionMismatch(f"{what} requires d_A = 2, got d_A = {rho.d_a}")


def m_matrix(rho: DensityMatrix) -> MMatrix:
    """The 3x3 impact-power quadratic form for qubit A (any d_B)."""
    _require_qubit_a(rho, "m_matrix")
    eye_b = np.eye(rho.d_b, dtype=complex)
    x = [rho.mat @ linalg.tensor(s, eye_b) for s in linalg.PAULIS]
    m = np.empty((3, 3))
    for i in range(3):
        for j in range(i, 3):
            val = complex(np.sum(x[i] * x[j].T))
            m[i, j] = m[j, i] = val.real
    eig = linalg.hermitian_eigendecompose(m.astype(complex))
    return MMatrix(m=m, eigenvalues=eig.eigenvalues, eigenvectors=eig.eigenvectors.real)


def _canonical_axis(vec: np.ndarray) -> np.ndarray:
    v = vec / np.linalg.norm(vec)
    for comp in v:
        if abs(comp) > 1e-12:
            if comp < 0.0:
                v = -v
            break
    return v


def extremal_axes(mm: MMatrix) -> tuple[np.ndarray, np.ndarray]:
    """Measurement axes attaining p_min and p_max.

    Under eigenvalue ties the lexicographically smallest canonical
    eigenvector is returned, so the output is deterministic.
    """
    axes = []
    for extreme in (mm.eigenvalues[-1], mm.eigenvalues[0]):
        idx = np.nonzero(np.abs(mm.eigenvalues - extreme) <= EIGENVALUE_TIE_TOL)[0]
        candidates = [_canonical_axis(mm.eigenvectors[:, i]) for i in idx]
        axes.append(min(candidates, key=lambda v: tuple(v)))
    return axes[0], axes[1]


def p_extrema(rho: DensityMatrix) -> tuple[float, float]:
    """(p_min, p_max) for qubit A: purity minus the extreme eigenvalues of M."""
    mm = m_matrix(rho)
    purity = rho.purity
    p_min = purity - float(mm.eigenvalues[-1])
    p_max = purity - float(mm.eigenvalues[0])
    if -1e-10 <= p_min < 0.0:
        p_min = 0.0
    if -1e-10 <= p_max < 0.0:
        p_max = 0.0
    return p_min, p_max


# --- numeric discord for d_A > 2 -------------------------------------------


def _measurement_objective(rho4: np.ndarray, purity: float, u: np.ndarray) -> float:
    # distance ||rho - Phi(rho)||^2 for dephasing in the basis of u's columns;
    # equals Tr[rho^2] minus the diagonal-block weight in the rotated frame
    rot = np.einsum("ai,abcd,cj->ibjd", u.conj(), rho4, u)
    diag_blocks = np.einsum("ibid->ibd", rot)
    return purity - float(np.vdot(diag_blocks, diag_blocks).real)


def _column_rotation(u: np.ndarray, p: int, q: int, theta: float, imag: bool) -> np.ndarray:
    c, s = math.cos(theta), math.sin(theta)
    out = u.copy()
    if imag:
        out[:, p] = c * u[:, p] - 1j * s * u[:, q]
        out[:, q] = -1j * s * u[:, p] + c * u[:, q]
    else:
        out[:, p] = c * u[:, p] + s * u[:, q]
        out[:, q] = -s * u[:, p] + c * u[:, q]
    return out


def _refine_measurement(
    rho4: np.ndarray,
    purity: float,
    u: np.ndarray,
    step0: float,
    step_min: float,
) -> tuple[float, np.ndarray]:
    d = u.shape[0]
    best = _measurement_objective(rho4, purity, u)
    step = step0
    while step > step_min:
        improved = False
        for p in range(d - 1):
            for q in range(p + 1, d):
                for imag in (False, True):
                    for theta in (step, -step):
                        cand = _column_rotation(u, p, q, theta, imag)
                        val = _measurement_objective(rho4, purity, cand)
                        if val < best - 1e-18:
                            u, best = cand, val
                            improved = True
        if not improved:
            step *= 0.5
    return best, u


def measurement_min_discord(
    rho: DensityMatrix,
    starts: int = 12,
    seed: int | np.random.Generator | None = 0,
    step_min: float = 1e-8,
) -> float:
    """Minimize ||rho - Phi(rho)||^2 over rank-one projective measurements on A.

    Random multistart over Haar bases plus Givens-rotation coordinate descent.
    The result is an upper bound on the distance that tightens with more
    starts; for d_A = 2 it reproduces the closed form.
    """
    rng = np.random.default_rng(seed)
    d_a = rho.d_a
    rho4 = rho.mat.reshape(d_a, rho.d_b, d_a, rho.d_b)
    purity = rho.purity
    unitaries = [np.eye(d_a, dtype=complex)]
    unitaries += [linalg.haar_unitary(d_a, rng) for _ in range(max(starts - 1, 0))]
    best = math.inf
    for u in unitaries:
        val, _ = _refine_measurement(rho4, purity, u, step0=0.5, step_min=step_min)
        best = min(best, val)
    return max(best, 0.0)


def geometric_discord(
    rho: DensityMatrix,
    starts: int = 12,
    seed: int | np.random.Generator | None = 0,
) -> tuple[float, str]:
    """Geometric discord of rho with respect to measurements on A.

    Qubit A: exact, p_min/2 from the M-matrix ("closed-form").  Larger A:
    numeric von Neumann measurement minimization ("numeric"), an upper bound.
    """
    if rho.d_a == 2:
        return p_extrema(rho)[0] / 2.0, "closed-form"
    return measurement_min_discord(rho, starts=starts, seed=seed), "numeric"


def k_matrix(rho: DensityMatrix) -> KMatrix:
    """K = x x^T + T T^T for a two-qubit state."""
    if rho.dims != (2, 2):
        raise DimensionMismatch(f"k_matrix requires dims (2, 2), got {rho.dims}")
    b = bloch_decompose(rho)
    k = np.outer(b.x, b.x) + b.t @ b.t.T
    k_max = float(linalg.hermitian_eigenvalues(k.astype(complex))[-1])
    return KMatrix(k=k, k_max=k_max)


def k_matrix_discord(rho: DensityMatrix) -> float:
    """Two-qubit discord (1/4)(|x|^2 + |T|^2 - k_max) from Bloch data alone."""
    if rho.dims != (2, 2):
        raise DimensionMismatch(f"k_matrix_discord requires dims (2, 2), got {rho.dims}")
    b = bloch_decompose(rho)
    km = k_matrix(rho)
    norms = float(b.x @ b.x) + float(np.sum(b.t * b.t))
    return 0.25 * (norms - km.k_max)


def purity_bound_check(rho: DensityMatrix) -> BoundCheck:
    """Evaluate p_min <= (4/3) Tr[rho^2] - 1/3 for a two-qubit state."""
    if rho.dims != (2, 2):
        raise DimensionMismatch(f"purity bound requires dims (2, 2), got {rho.dims}")
    lhs = p_extrema(rho)[0]
    rhs = (4.0 / 3.0) * rho.purity - 1.0 / 3.0
    return BoundCheck(lhs=lhs, rhs=rhs, saturates=abs(lhs - rhs) <= SATURATION_TOL)


def general_dim_bound_check(
    rho: DensityMatrix,
    h: dynamics.LocalHamiltonian,
    starts: int = 12,
    seed: int | np.random.Generator | None = 0,
) -> GeneralBoundCheck:
    """Impact power against its discord lower bound 4 D / (d_A (d_A - 1)).

    Requires a fully nondegenerate H_A.  For d_A > 2 the discord is the
    numeric measurement minimum, itself an upper bound on the distance, so
    the comparison is conservative.
    """
    if not h.fully_nondegenerate:
        raise DegenerateHamiltonian(
            "general-dimension bound requires a fully nondegenerate Hamiltonian "
            f"({h.distinct_levels()[0].size} distinct levels on d_A = {h.d_a})"
        )
    p = dynamics.impact_power(rho, h)
    d, _ = geometric_discord(rho, starts=starts, seed=seed)
    d_a = rho.d_a
    return GeneralBoundCheck(p=p, bound=4.0 * d / (d_a * (d_a - 1.0)))


def report(
    rho: DensityMatrix,
    starts: int = 12,
    seed: int | np.random.Generator | None = 0,
) -> CorrelationReport:
    """Assemble purity, impact-power extrema, discord and bound data."""
    purity = rho.purity
    if rho.d_a == 2:
        p_min, p_max = p_extrema(rho)
        discord = p_min / 2.0
        method = "closed-form"
        if rho.d_b == 2:
            check = purity_bound_check(rho)
            bound_rhs: float | None = check.rhs
            saturates: bool | None = check.saturates
        else:
            bound_rhs = None
            saturates = None
        return CorrelationReport(
            purity=purity,
            p_min=p_min,
            p_max=p_max,
            discord=discord,
            bound_rhs=bound_rhs,
            saturates_bound=saturates,
            method=method,
        )
    discord, method = geometric_discord(rho, starts=starts, seed=seed)
    return CorrelationReport(
        purity=purity,
        p_min=None,
        p_max=None,
        discord=discord,
        bound_rhs=None,
        saturates_bound=None,
        method=method,
    )
