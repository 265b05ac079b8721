"""State preparation, propagation and distance-to-target curves."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NonPhysicalSteadyState, NonUniqueSteadyState, StepTooLarge
from .model import ModelParams, liouvillian
from .superop import (
    PSD_TOL,
    SpectralDecomposition,
    check_density_matrix,
    from_coherence_vector,
    spectral_decompose,
    to_coherence_vector,
)

STATIONARY_TOL = 1e-8
NORM_MODES = ("hilbert-schmidt", "trace")


@dataclass(frozen=True)
class Trajectory:
    times: np.ndarray
    states: np.ndarray  # (n_times, 4) coherence vectors

    def __post_init__(self):
        if self.states.shape != (len(self.times), 4):
            raise ValueError("states must have shape (len(times), 4)")

    def density_matrices(self) -> np.ndarray:
        return from_coherence_vector(self.states)


@dataclass(frozen=True)
class DistanceCurve:
    times: np.ndarray
    values: np.ndarray


def _check_times(times) -> np.ndarray:
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or len(times) == 0:
        raise ValueError("times must be a non-empty 1-D sequence")
    if times[0] != 0.0:
        raise ValueError(f"times must start at 0, got {times[0]}")
    if np.any(np.diff(times) <= 0):
        raise ValueError("times must be strictly increasing")
    return times


def _as_state_vector(rho0) -> np.ndarray:
    """Accept a 2x2 density matrix or a 4-component coherence vector."""
    arr = np.asarray(rho0)
    if arr.shape == (2, 2):
        return to_coherence_vector(check_density_matrix(arr))
    if arr.shape == (4,):
        return np.asarray(arr, dtype=float)
    raise ValueError(f"initial state must be 2x2 or a 4-vector, got {arr.shape}")


def stationary_indices(decomp: SpectralDecomposition) -> np.ndarray:
    return np.flatnonzero(np.abs(decomp.eigenvalues.real) < STATIONARY_TOL)


def slowest_decay_rate(decomp: SpectralDecomposition) -> float:
    """``|Re lambda|`` of the slowest decaying (non-stationary) mode."""
    decaying = decomp.eigenvalues.real[decomp.eigenvalues.real <= -STATIONARY_TOL]
    if len(decaying) == 0:
        raise NonUniqueSteadyState("no decaying mode")
    return float(-decaying.max())


def steady_state_vector(decomp: SpectralDecomposition) -> np.ndarray:
    idx = stationary_indices(decomp)
    if len(idx) != 1:
        raise NonUniqueSteadyState(
            f"{len(idx)} eigenvalues with |Re| < {STATIONARY_TOL}: {decomp.eigenvalues[idx]}"
        )
    vec = decomp.right[:, idx[0]]
    if abs(vec[0]) < 1e-12:
        raise NonPhysicalSteadyState("stationary mode is traceless")
    vec = vec / vec[0]
    if np.max(np.abs(vec.imag)) > 1e-9:
        raise NonPhysicalSteadyState(f"steady state is complex: {vec}")
    return vec.real.copy()


def steady_state(decomp: SpectralDecomposition) -> np.ndarray:
    """Unique trace-one stationary state as a 2x2 density matrix."""
    rho = from_coherence_vector(steady_state_vector(decomp))
    lowest = np.linalg.eigvalsh(rho)[0]
    if lowest < -PSD_TOL:
        raise NonPhysicalSteadyState(f"steady state has eigenvalue {lowest:.3e}")
    return rho


def prepare_initial_state(params: ModelParams, hamiltonian_mode: str = "lz") -> np.ndarray:
    """Thermalize the driven qubit with the squeezed bath at ``params.theta``."""
    return steady_state(spectral_decompose(liouvillian(params, hamiltonian_mode)))


def evolve_spectral(decomp: SpectralDecomposition, rho0, times) -> Trajectory:
    """Mode expansion ``sum_n c_n exp(lambda_n t) |R_n>>`` with ``c_n = <<L_n|rho0>>``."""
    times = _check_times(times)
    v0 = _as_state_vector(rho0)
    coeffs = decomp.left @ v0
    phases = np.exp(np.outer(times, decomp.eigenvalues))
    states = (phases * coeffs) @ decomp.right.T
    imag = np.max(np.abs(states.imag))
    if imag > 1e-9:
        raise ArithmeticError(f"spectral propagation left imaginary residue {imag:.3e}")
    return Trajectory(times=times, states=states.real.copy())


def rk4_step(f, t: float, y: np.ndarray, h: float) -> np.ndarray:
    k1 = f(t, y)
    k2 = f(t + h / 2, y + h / 2 * k1)
    k3 = f(t + h / 2, y + h / 2 * k2)
    k4 = f(t + h, y + h * k3)
    return y + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)


def default_rk4_dt(params: ModelParams) -> float:
    return 1e-3 / (params.gamma0 * (2 * params.n_th + 1))


def integrate_rk4(matrix: np.ndarray, v0: np.ndarray, times, dt: float) -> np.ndarray:
    """Fixed-step RK4 for ``dv/dt = matrix @ v`` sampled at ``times``.

    Each sampling interval is split into the fewest equal steps no longer than
    ``dt``. The system is linear and autonomous, so one RK4 step is the fixed
    matrix obtained by stepping the identity; ``k`` steps are its ``k``-th
    power.
    """
    times = _check_times(times)
    if not dt > 0:
        raise ValueError(f"dt must be positive, got {dt}")
    rhs = lambda _t, y: matrix @ y  # noqa: E731
    eye = np.eye(len(v0))
    cache: dict[tuple[int, float], np.ndarray] = {}
    out = np.empty((len(times), len(v0)))
    out[0] = v = np.asarray(v0, dtype=float)
    for i, span in enumerate(np.diff(times), start=1):
        steps = max(1, math.ceil(span / dt - 1e-9))
        key = (steps, float(span))
        if key not in cache:
            one = rk4_step(rhs, 0.0, eye, span / steps)
            cache[key] = np.linalg.matrix_power(one, steps)
        v = cache[key] @ v
        out[i] = v
    return out


def evolve_rk4(
    params: ModelParams,
    rho0,
    times,
    dt: float | None = None,
    hamiltonian_mode: str = "lz",
    check: bool = True,
    check_tol: float = 1e-6,
) -> Trajectory:
    """Independent RK4 propagation, used to cross-check :func:`evolve_spectral`."""
    times = _check_times(times)
    v0 = _as_state_vector(rho0)
    mat = liouvillian(params, hamiltonian_mode)
    dt = default_rk4_dt(params) if dt is None else dt
    states = integrate_rk4(mat, v0, times, dt)
    if check:
        halved = integrate_rk4(mat, v0, times, dt / 2)
        dev = np.max(np.abs(halved - states))
        if dev > check_tol:
            raise StepTooLarge(f"halving dt={dt:.3e} moved the solution by {dev:.3e}")
    return Trajectory(times=times, states=states)


def default_times(decomp: SpectralDecomposition, horizon_factor: float = 15.0,
                  grid_points: int = 2000) -> np.ndarray:
    tau = horizon_factor / slowest_decay_rate(decomp)
    return np.linspace(0.0, tau, grid_points)


def distance(rho, target, norm_mode: str = "hilbert-schmidt"):
    """``sqrt(Tr[(rho - target)^dag (rho - target)])``, or the trace norm.

    Broadcasts over leading axes of ``rho``.
    """
    diff = np.asarray(rho, dtype=complex) - np.asarray(target, dtype=complex)
    if norm_mode == "hilbert-schmidt":
        out = np.sqrt(np.sum(np.abs(diff) ** 2, axis=(-2, -1)))
    elif norm_mode == "trace":
        out = np.sum(np.linalg.svd(diff, compute_uv=False), axis=-1)
    else:
        raise ValueError(f"unknown norm_mode {norm_mode!r}")
    return float(out) if np.ndim(out) == 0 else out


def distance_curve(traj: Trajectory, target, norm_mode: str = "hilbert-schmidt") -> DistanceCurve:
    values = distance(traj.density_matrices(), target, norm_mode)
    return DistanceCurve(times=traj.times, values=np.atleast_1d(values))
