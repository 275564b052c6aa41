"""Brute-force reference implementations of the closed-form quantities.

Everything here recomputes its target by direct optimization or direct
series evaluation, sharing only the :mod:`impactpower.linalg` kernel with
the production code paths, so agreement between the two routes is a real
check.  These routines trade speed for independence.
"""

from __future__ import annotations

import math
from typing import Callable, NamedTuple

import numpy as np

from . import linalg
from .errors import DegenerateHamiltonian, DimensionMismatch
from .states import DensityMatrix
from .dynamics import LocalHamiltonian

_TIME_TOL = 1e-12
_ANGLE_STEP0 = 0.1
_ANGLE_STEP_MIN = 1e-8


class GridMax(NamedTuple):
    value: float
    t: float


class AxisSearch(NamedTuple):
    value: float
    axis: np.ndarray


def fibonacci_sphere_axes(
    n: int,
    seed: int | np.random.Generator | None = None,
    jitter: float = 0.0,
) -> np.ndarray:
    """n near-uniform unit vectors on S^2 (Fibonacci lattice), optionally jittered.

    The lattice itself is deterministic; ``jitter`` adds seeded Gaussian
    perturbations of size jitter * lattice spacing so repeated searches with
    different seeds probe different gap locations.
    """
    i = np.arange(n, dtype=float)
    z = 1.0 - 2.0 * (i + 0.5) / n
    radius = np.sqrt(np.clip(1.0 - z * z, 0.0, None))
    phi = math.pi * (3.0 - math.sqrt(5.0)) * i
    axes = np.column_stack([radius * np.cos(phi), radius * np.sin(phi), z])
    if jitter > 0.0:
        rng = np.random.default_rng(seed)
        spacing = math.sqrt(4.0 * math.pi / n)
        axes = axes + jitter * spacing * rng.standard_normal(axes.shape)
        axes /= np.linalg.norm(axes, axis=1)[:, None]
    return axes


def _tangent_basis(axis: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    helper = np.zeros(3)
    helper[int(np.argmin(np.abs(axis)))] = 1.0
    t1 = np.cross(axis, helper)
    t1 /= np.linalg.norm(t1)
    return t1, np.cross(axis, t1)


def _refine_axis(
    objective: Callable[[np.ndarray], float],
    axis: np.ndarray,
    minimize: bool = True,
    step0: float = _ANGLE_STEP0,
    step_min: float = _ANGLE_STEP_MIN,
) -> tuple[float, np.ndarray]:
    """Derivative-free descent on the sphere: rotate towards tangent directions,
    halving the step angle from ``step0`` down to ``step_min``."""
    sign = 1.0 if minimize else -1.0
    best = sign * objective(axis)
    step = step0
    while step > step_min:
        improved = False
        t1, t2 = _tangent_basis(axis)
        for direction in (t1, -t1, t2, -t2):
            cand = math.cos(step) * axis + math.sin(step) * direction
            cand /= np.linalg.norm(cand)
            val = sign * objective(cand)
            if val < best - 1e-18:
                axis, best = cand, val
                improved = True
                t1, t2 = _tangent_basis(axis)
        if not improved:
            step *= 0.5
    return sign * best, axis


def _golden_max(f: Callable[[float], float], lo: float, hi: float, tol: float) -> tuple[float, float]:
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    x1 = b - inv_phi * (b - a)
    x2 = a + inv_phi * (b - a)
    f1, f2 = f(x1), f(x2)
    while b - a > tol:
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + inv_phi * (b - a)
            f2 = f(x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - inv_phi * (b - a)
            f1 = f(x1)
    return (f1, x1) if f1 >= f2 else (f2, x2)


def _qubit_projectors(axis: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    r_sigma = (
        axis[0] * linalg.SIGMA_X + axis[1] * linalg.SIGMA_Y + axis[2] * linalg.SIGMA_Z
    )
    eye2 = np.eye(2, dtype=complex)
    return (eye2 + r_sigma) / 2.0, (eye2 - r_sigma) / 2.0


def _dephasing_distance(rho: DensityMatrix, axis: np.ndarray) -> float:
    """2 ||rho - sum_i Pi_i rho Pi_i||^2 for the qubit measurement along ``axis``."""
    p_plus, p_minus = _qubit_projectors(axis)
    eye_b = np.eye(rho.d_b, dtype=complex)
    p0 = linalg.tensor(p_plus, eye_b)
    p1 = linalg.tensor(p_minus, eye_b)
    dephased = p0 @ rho.mat @ p0 + p1 @ rho.mat @ p1
    return 2.0 * linalg.hs_norm_sq(rho.mat - dephased)


def _direct_impact_factory(rho: DensityMatrix, h: LocalHamiltonian) -> Callable[[float], float]:
    eye_b = np.eye(rho.d_b, dtype=complex)
    embedded = [linalg.tensor(p, eye_b) for p in h.projectors]
    energies = h.energies
    mat = rho.mat

    def direct_impact(t: float) -> float:
        u = sum(np.exp(-1j * e * t) * p for e, p in zip(energies, embedded))
        return 0.5 * linalg.hs_norm_sq(u @ mat @ u.conj().T - mat)

    return direct_impact


def impact_power_grid(
    rho: DensityMatrix, h: LocalHamiltonian, grid_points: int = 4096
) -> GridMax:
    """Maximize the impact over a dense time grid, then polish by golden section.

    The grid spans one period of the slowest pairwise oscillation,
    2 pi / min gap.  Each profile point is a direct evolve-and-subtract
    evaluation; no coefficient formula is involved.
    """
    if h.d_a != rho.d_a:
        raise DimensionMismatch(
            f"Hamiltonian acts on dimension {h.d_a}, state has d_A = {rho.d_a}"
        )
    levels, _ = h.distinct_levels()
    if levels.size < 2:
        raise DegenerateHamiltonian("impact power grid search needs at least two distinct levels")
    span = 2.0 * math.pi / float(np.min(np.diff(levels)))
    direct_impact = _direct_impact_factory(rho, h)
    step = span / grid_points
    best_val = -1.0
    best_t = step
    for j in range(1, grid_points + 1):
        t = j * step
        val = direct_impact(t)
        if val > best_val:
            best_val, best_t = val, t
    lo = max(best_t - step, step * 1e-9)
    hi = min(best_t + step, span)
    val, t = _golden_max(direct_impact, lo, hi, _TIME_TOL)
    if val >= best_val:
        return GridMax(value=val, t=t)
    return GridMax(value=best_val, t=best_t)


def p_min_search(
    rho: DensityMatrix, samples: int = 1000, seed: int | np.random.Generator | None = 0
) -> AxisSearch:
    """Minimal impact power by axis sampling: min_r 2 ||rho - Phi_r(rho)||^2.

    Scans ``samples`` jittered Fibonacci-lattice axes and refines the best
    one by derivative-free descent, deterministic for a given seed.
    """
    if rho.d_a != 2:
        raise DimensionMismatch(f"p_min_search requires d_A = 2, got {rho.d_a}")
    objective = lambda axis: _dephasing_distance(rho, axis)
    axes = fibonacci_sphere_axes(samples, seed=seed, jitter=0.5)
    values = [objective(axis) for axis in axes]
    best = int(np.argmin(values))
    value, axis = _refine_axis(objective, axes[best], minimize=True)
    return AxisSearch(value=value, axis=axis)


def p_max_search(
    rho: DensityMatrix,
    samples: int = 1000,
    seed: int | np.random.Generator | None = 0,
    grid_points: int = 24,
) -> AxisSearch:
    """Maximal impact power by axis sampling over time-grid maxima.

    For every axis the impact power is recomputed with
    :func:`impact_power_grid` (unit gap), so the only shared machinery with
    the closed form is the linear-algebra kernel.
    """
    if rho.d_a != 2:
        raise DimensionMismatch(f"p_max_search requires d_A = 2, got {rho.d_a}")

    def objective(axis: np.ndarray) -> float:
        p_plus, p_minus = _qubit_projectors(axis)
        h = LocalHamiltonian(np.array([0.0, 1.0]), (p_plus, p_minus))
        return impact_power_grid(rho, h, grid_points=grid_points).value

    axes = fibonacci_sphere_axes(samples, seed=seed, jitter=0.5)
    values = [objective(axis) for axis in axes]
    best = int(np.argmax(values))
    value, axis = _refine_axis(objective, axes[best], minimize=False)
    return AxisSearch(value=value, axis=axis)


def unitary_expm_evolve(rho: DensityMatrix, h: LocalHamiltonian, t: float) -> DensityMatrix:
    """Evolve by a scaling-and-squaring Taylor exponential of -i H_A t (x) 1_B.

    Independent of the spectral route used by :func:`impactpower.dynamics.evolve`.
    """
    if h.d_a != rho.d_a:
        raise DimensionMismatch(
            f"Hamiltonian acts on dimension {h.d_a}, state has d_A = {rho.d_a}"
        )
    generator = -1j * float(t) * linalg.tensor(h.matrix(), np.eye(rho.d_b, dtype=complex))
    norm = math.sqrt(linalg.hs_norm_sq(generator))
    squarings = max(0, int(math.ceil(math.log2(norm))) + 1) if norm > 1.0 else 0
    scaled = generator / (2.0 ** squarings)
    dim = scaled.shape[0]
    term = np.eye(dim, dtype=complex)
    u = np.eye(dim, dtype=complex)
    for k in range(1, 40):
        term = term @ scaled / k
        u = u + term
        if math.sqrt(linalg.hs_norm_sq(term)) < 1e-20:
            break
    for _ in range(squarings):
        u = u @ u
    return DensityMatrix(u @ rho.mat @ u.conj().T, rho.dims)


def discord_cq_search(
    rho: DensityMatrix, samples: int = 12, seed: int | np.random.Generator | None = 0
) -> float:
    """Geometric discord of a two-qubit state by direct search over CQ states.

    A candidate is parameterized by a measurement axis (two angles), a weight
    p, and two B-side Bloch vectors; the distance ||rho - omega||^2 is then
    minimized by multistart coordinate descent, ``samples`` starts in total.
    The result is an upper bound that tightens with more starts.
    """
    if rho.dims != (2, 2):
        raise DimensionMismatch(f"discord_cq_search requires dims (2, 2), got {rho.dims}")
    rng = np.random.default_rng(seed)
    target = rho.mat

    def _bloch_block(b1: float, b2: float, b3: float) -> np.ndarray:
        nrm_sq = b1 * b1 + b2 * b2 + b3 * b3
        if nrm_sq > 1.0:
            scale = 1.0 / math.sqrt(nrm_sq)
            b1, b2, b3 = b1 * scale, b2 * scale, b3 * scale
        return 0.5 * np.array([[1.0 + b3, b1 - 1j * b2], [b1 + 1j * b2, 1.0 - b3]])

    def objective(axis: np.ndarray, rest: np.ndarray) -> float:
        # rest = [p, u_x, u_y, u_z, v_x, v_y, v_z]
        p = min(max(rest[0], 0.0), 1.0)
        ax, ay, az = axis
        pp = 0.5 * np.array([[1.0 + az, ax - 1j * ay], [ax + 1j * ay, 1.0 - az]])
        block_u = p * _bloch_block(rest[1], rest[2], rest[3])
        block_v = (1.0 - p) * _bloch_block(rest[4], rest[5], rest[6])
        omega = np.empty((4, 4), dtype=complex)
        omega[:2, :2] = pp[0, 0] * block_u + (1.0 - pp[0, 0]) * block_v
        omega[:2, 2:] = pp[0, 1] * block_u - pp[0, 1] * block_v
        omega[2:, :2] = pp[1, 0] * block_u - pp[1, 0] * block_v
        omega[2:, 2:] = pp[1, 1] * block_u + (1.0 - pp[1, 1]) * block_v
        diff = target - omega
        return float(np.vdot(diff, diff).real)

    def conditional_rest(axis: np.ndarray) -> np.ndarray:
        # weight and block Bloch vectors read off the measured state, the
        # optimal feasible point for this axis
        p_plus, p_minus = _qubit_projectors(axis)
        eye2 = np.eye(2, dtype=complex)
        rest = np.zeros(7)
        for offset, proj in ((1, p_plus), (4, p_minus)):
            embedded = linalg.tensor(proj, eye2)
            block = linalg.partial_trace_A(embedded @ rho.mat @ embedded, rho.dims)
            weight = float(np.trace(block).real)
            if offset == 1:
                rest[0] = weight
            if weight > 1e-12:
                block = block / weight
                for i, s in enumerate(linalg.PAULIS):
                    rest[offset + i] = float(np.trace(block @ s).real)
        return rest

    lattice_starts = max(samples // 2, 1)
    start_axes = list(fibonacci_sphere_axes(lattice_starts))
    while len(start_axes) < samples:
        axis = rng.standard_normal(3)
        start_axes.append(axis / np.linalg.norm(axis))

    best = math.inf
    for axis in start_axes:
        rest = conditional_rest(axis)
        value = objective(axis, rest)
        step = 0.25
        while step > 1e-5:
            improved = False
            t1, t2 = _tangent_basis(axis)
            for direction in (t1, -t1, t2, -t2):
                cand_axis = math.cos(step) * axis + math.sin(step) * direction
                cand_axis /= np.linalg.norm(cand_axis)
                val = objective(cand_axis, rest)
                if val < value - 1e-18:
                    axis, value = cand_axis, val
                    improved = True
                    t1, t2 = _tangent_basis(axis)
            for i in range(7):
                for delta in (step, -step):
                    cand = rest.copy()
                    cand[i] += delta
                    val = objective(axis, cand)
                    if val < value - 1e-18:
                        rest, value = cand, val
                        improved = True
            # exact block-coordinate step: re-optimize weight and blocks for
            # the current axis, which the conditional data achieves
            cand = conditional_rest(axis)
            val = objective(axis, cand)
            if val < value - 1e-18:
                rest, value = cand, val
                improved = True
            if not improved:
                step *= 0.5
        best = min(best, value)
    return max(best, 0.0)


def trace_p_min_probe(
    rho: DensityMatrix, samples: int = 1000, seed: int | np.random.Generator | None = 0
) -> float:
    """Axis-sampled trace-norm analogue of the impact power gap.

    For each sampled axis the trace impact is evaluated at t = pi/dE, the
    time where the Hilbert-Schmidt impact of that axis peaks, and the minimum
    over axes is returned.  Since the trace impact dominates the
    Hilbert-Schmidt one pointwise, the result can only exceed the
    corresponding Hilbert-Schmidt gap estimate.
    """
    if rho.d_a != 2:
        raise DimensionMismatch(f"trace_p_min_probe requires d_A = 2, got {rho.d_a}")
    eye_b = np.eye(rho.d_b, dtype=complex)
    best = math.inf
    for axis in fibonacci_sphere_axes(samples, seed=seed, jitter=0.5):
        p_plus, p_minus = _qubit_projectors(axis)
        # unit gap, so the Hilbert-Schmidt peak time is exactly pi
        u = linalg.tensor(p_plus - p_minus, eye_b)
        delta = u @ rho.mat @ u.conj().T - rho.mat
        best = min(best, 0.5 * linalg.trace_norm(delta) ** 2)
    return best
