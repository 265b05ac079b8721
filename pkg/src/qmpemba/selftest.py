"""Analytic-oracle and invariant checks behind the ``selftest`` subcommand."""

from __future__ import annotations

import math
import tempfile
import time
from pathlib import Path

import numpy as np

from .analysis import mpemba_parameter
from .dynamics import (
    DistanceCurve,
    evolve_rk4,
    evolve_spectral,
    prepare_initial_state,
    steady_state,
)
from .files import emit_curves
from .model import ModelParams, liouvillian, lindblad_apply
from .scenario import ScenarioConfig, run_scenario
from .superop import (
    PAULI_BASIS,
    from_coherence_vector,
    spectral_decompose,
    to_coherence_vector,
)


class CheckFailed(AssertionError):
    pass


def _ensure(condition, detail=None):
    if not condition:
        raise CheckFailed("" if detail is None else repr(detail))


def random_params(rng: np.random.Generator) -> ModelParams:
    delta0 = rng.uniform(0.25, 2.0)
    return ModelParams(
        delta0=delta0,
        omega=rng.uniform(0.0, 2.0) * delta0,
        phi_d=rng.uniform(0, 2 * math.pi),
        r=rng.uniform(0.0, 1.2),
        phi_s=rng.uniform(0, 2 * math.pi),
        theta=math.exp(rng.uniform(math.log(0.1), math.log(100.0))),
    )


def random_state(rng: np.random.Generator) -> np.ndarray:
    """Uniform point in the Bloch ball, as a density matrix."""
    direction = rng.normal(size=3)
    bloch = direction / np.linalg.norm(direction) * rng.uniform() ** (1 / 3)
    return from_coherence_vector(np.concatenate([[1.0], bloch]))


def check_basis():
    gram = np.einsum("nij,mij->nm", PAULI_BASIS, PAULI_BASIS.conj())
    _ensure(np.allclose(gram, 2 * np.eye(4), atol=1e-15), gram)


def check_round_trip(rng):
    for _ in range(50):
        rho = random_state(rng)
        back = from_coherence_vector(to_coherence_vector(rho))
        _ensure(np.max(np.abs(back - rho)) < 1e-14)


def check_trace_preservation(rng):
    for _ in range(20):
        p = random_params(rng)
        _ensure(np.max(np.abs(liouvillian(p)[0])) < 1e-12)
        x = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        _ensure(abs(np.trace(lindblad_apply(p, x))) < 1e-12)


def check_amplitude_damping_spectrum():
    decomp = spectral_decompose(liouvillian(ModelParams(delta0=0.0, theta=100.0)))
    expected = np.array([0.0, -0.5, -0.5, -1.0])
    _ensure(np.max(np.abs(decomp.eigenvalues - expected)) < 1e-10, decomp.eigenvalues)


def check_thermal_steady_state():
    for theta in (math.log(2.0), 2.0, 0.1):
        n = 1.0 / math.expm1(theta)
        rho = prepare_initial_state(ModelParams(omega=0.0, theta=theta))
        _ensure(abs(rho[0, 0].real - n / (2 * n + 1)) < 1e-10, (theta, rho))


def check_decay_law():
    decomp = spectral_decompose(liouvillian(ModelParams(delta0=0.0, theta=100.0)))
    times = np.array([0.0, 0.5, 1.0, 2.0])
    traj = evolve_spectral(decomp, np.diag([1.0, 0.0]), times)
    rho_ee = 0.5 * (traj.states[:, 0] + traj.states[:, 3])
    _ensure(np.max(np.abs(rho_ee - np.exp(-times))) < 1e-10, rho_ee)


def check_spectral_vs_rk4(rng, draws=5):
    times = np.linspace(0.0, 10.0, 41)
    for _ in range(draws):
        p = random_params(rng)
        rho0 = random_state(rng)
        spec = evolve_spectral(spectral_decompose(liouvillian(p)), rho0, times)
        rk4 = evolve_rk4(p, rho0, times)
        _ensure(np.max(np.abs(spec.states - rk4.states)) < 1e-8)


def check_biorthogonality(rng):
    for _ in range(50):
        d = spectral_decompose(liouvillian(random_params(rng)))
        right, left = d.residuals()
        _ensure(max(right.max(), left.max()) < 1e-10)
        _ensure(d.biorthogonality_residual() < 1e-10)
        _ensure(d.completeness_residual() < 1e-9)
        _ensure(abs(d.eigenvalues.sum() - np.trace(d.matrix)) < 1e-10)
        _ensure(np.all(d.eigenvalues.real <= 1e-10))
        _ensure(np.all(np.diff(d.eigenvalues.real) <= 1e-12))


def check_positivity(rng):
    for _ in range(10):
        p = random_params(rng)
        d = spectral_decompose(liouvillian(p))
        traj = evolve_spectral(d, random_state(rng), np.linspace(0, 20, 200))
        rhos = traj.density_matrices()
        _ensure(np.max(np.abs(traj.states[:, 0] - 1)) < 1e-10)
        _ensure(np.linalg.eigvalsh(rhos).min() >= -1e-8)
        target = steady_state(d)
        _ensure(np.max(np.abs(lindblad_apply(p, target))) < 1e-9)


def check_quadrature():
    t = np.linspace(0.0, 1.0, 1001)
    m, crossings = mpemba_parameter(DistanceCurve(t, 1 - t / 2), DistanceCurve(t, 2 - 2 * t))
    _ensure(abs(m - 0.2) < 1e-6, m)
    _ensure(len(crossings) == 1 and abs(crossings[0] - 2 / 3) < 1e-9, crossings)


def check_m_range(rng):
    for _ in range(6):
        cfg = ScenarioConfig(
            r=rng.uniform(0, 1.2),
            phi_d=rng.uniform(0, 0.2 * math.pi),
            omega_ratio=rng.choice([0.5, 1.0]),
            grid_points=500,
        )
        m = run_scenario(cfg).report.m_value
        _ensure(0.0 <= m < 1.0, m)


def check_csv_determinism():
    cfg = ScenarioConfig(r=0.98, phi_d=0.025 * math.pi, grid_points=300)
    with tempfile.TemporaryDirectory() as tmp:
        a = emit_curves(run_scenario(cfg), Path(tmp) / "a.csv").read_bytes()
        b = emit_curves(run_scenario(cfg), Path(tmp) / "b.csv").read_bytes()
    _ensure(a == b)


CHECKS = {
    "pauli basis orthogonality": lambda rng: check_basis(),
    "coherence-vector round trip": check_round_trip,
    "trace preservation": check_trace_preservation,
    "amplitude-damping spectrum": lambda rng: check_amplitude_damping_spectrum(),
    "thermal steady state": lambda rng: check_thermal_steady_state(),
    "spontaneous decay law": lambda rng: check_decay_law(),
    "spectral vs RK4 propagation": check_spectral_vs_rk4,
    "biorthogonality and completeness": check_biorthogonality,
    "positivity along trajectories": check_positivity,
    "M quadrature on linear curves": lambda rng: check_quadrature(),
    "0 <= M < 1": check_m_range,
    "CSV determinism": lambda rng: check_csv_determinism(),
}


def run(seed: int = 2024, echo=print) -> dict[str, str | None]:
    """Run every check; returns ``{name: None or failure message}``."""
    rng = np.random.default_rng(seed)
    results: dict[str, str | None] = {}
    start = time.perf_counter()
    for name, check in CHECKS.items():
        try:
            check(rng)
            results[name] = None
            echo(f"PASS  {name}")
        except Exception as exc:  # report, keep going
            results[name] = f"{type(exc).__name__}: {exc}"
            echo(f"FAIL  {name}: {results[name]}")
    echo(f"{sum(v is None for v in results.values())}/{len(results)} checks passed "
         f"in {time.perf_counter() - start:.1f}s")
    return results
