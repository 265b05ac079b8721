"""Prepare -> cool -> analyze orchestration and parameter sweeps."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields, replace

import numpy as np

from .analysis import MpembaReport, mpemba_report
from .dynamics import (
    NORM_MODES,
    DistanceCurve,
    default_times,
    distance,
    distance_curve,
    evolve_spectral,
    prepare_initial_state,
    steady_state,
)
from .errors import ConfigError, InitialOrderViolated, MpembaError
from .model import HAMILTONIAN_MODES, ModelParams, liouvillian
from .superop import SpectralDecomposition, spectral_decompose

# temperatures from the reference experiment: hot, cold, target
THETA_HOT = 0.1
THETA_COLD = 2.0
THETA_TARGET = 100.0


@dataclass(frozen=True)
class ScenarioConfig:
    """Everything needed for one hot/cold cooling run.

    The drive amplitude is given either absolutely (``omega``) or relative to
    the detuning (``omega_ratio`` = Omega/Delta0); the ratio wins by default.
    """

    gamma0: float = 1.0
    delta0: float = 1.0
    omega_ratio: float | None = 1.0
    omega: float | None = None
    phi_d: float = 0.0
    r: float = 0.0
    phi_s: float = 0.0
    theta_hot: float = THETA_HOT
    theta_cold: float = THETA_COLD
    theta_target: float = THETA_TARGET
    horizon_factor: float = 15.0
    grid_points: int = 2000
    norm_mode: str = "hilbert-schmidt"
    hamiltonian_mode: str = "lz"

    def __post_init__(self):
        if (self.omega is None) == (self.omega_ratio is None):
            raise ConfigError("set exactly one of omega and omega_ratio")
        if self.norm_mode not in NORM_MODES:
            raise ConfigError(f"norm_mode must be one of {NORM_MODES}, got {self.norm_mode!r}")
        if self.hamiltonian_mode not in HAMILTONIAN_MODES:
            raise ConfigError(
                f"hamiltonian_mode must be one of {HAMILTONIAN_MODES}, got {self.hamiltonian_mode!r}"
            )
        for name in ("theta_hot", "theta_cold", "theta_target", "horizon_factor"):
            val = getattr(self, name)
            if not (val > 0 and math.isfinite(val)):
                raise ConfigError(f"{name} must be positive and finite, got {val}")
        if not self.theta_hot <= self.theta_cold < self.theta_target:
            raise ConfigError(
                "need theta_hot <= theta_cold < theta_target (hot is the largest temperature), got "
                f"{self.theta_hot}, {self.theta_cold}, {self.theta_target}"
            )
        if int(self.grid_points) != self.grid_points or self.grid_points < 2:
            raise ConfigError(f"grid_points must be an integer >= 2, got {self.grid_points}")
        self.model(self.theta_target)  # validates the physical parameters

    @property
    def drive_amplitude(self) -> float:
        return self.omega if self.omega is not None else self.omega_ratio * self.delta0

    def model(self, theta: float) -> ModelParams:
        return ModelParams(
            gamma0=self.gamma0,
            delta0=self.delta0,
            omega=self.drive_amplitude,
            phi_d=self.phi_d,
            r=self.r,
            phi_s=self.phi_s,
            theta=theta,
        )


CONFIG_KEYS = tuple(f.name for f in fields(ScenarioConfig))


@dataclass(frozen=True)
class ScenarioResult:
    config: ScenarioConfig
    report: MpembaReport
    curve_cold: DistanceCurve
    curve_hot: DistanceCurve
    decomposition: SpectralDecomposition
    rho_hot: np.ndarray
    rho_cold: np.ndarray
    rho_target: np.ndarray

    @property
    def times(self) -> np.ndarray:
        return self.curve_cold.times


def prepare_states(cfg: ScenarioConfig):
    """Hot and cold initial states plus the cooling decomposition and its target."""
    rho_hot = prepare_initial_state(cfg.model(cfg.theta_hot))
    rho_cold = prepare_initial_state(cfg.model(cfg.theta_cold))
    decomp = spectral_decompose(liouvillian(cfg.model(cfg.theta_target), cfg.hamiltonian_mode))
    return rho_hot, rho_cold, decomp, steady_state(decomp)


def run_scenario(cfg: ScenarioConfig) -> ScenarioResult:
    rho_hot, rho_cold, decomp, target = prepare_states(cfg)
    b_hot = distance(rho_hot, target, cfg.norm_mode)
    b_cold = distance(rho_cold, target, cfg.norm_mode)
    if not b_cold < b_hot:
        raise InitialOrderViolated(
            f"cold state must start closer to the target: B_c(0)={b_cold!r}, B_h(0)={b_hot!r}"
        )
    times = default_times(decomp, cfg.horizon_factor, int(cfg.grid_points))
    curve_h = distance_curve(evolve_spectral(decomp, rho_hot, times), target, cfg.norm_mode)
    curve_c = distance_curve(evolve_spectral(decomp, rho_cold, times), target, cfg.norm_mode)
    report = mpemba_report(decomp, rho_hot, rho_cold, curve_c, curve_h)
    return ScenarioResult(
        config=cfg,
        report=report,
        curve_cold=curve_c,
        curve_hot=curve_h,
        decomposition=decomp,
        rho_hot=rho_hot,
        rho_cold=rho_cold,
        rho_target=target,
    )


AXIS_NAMES = ("r", "phi_d", "phi_s", "omega_ratio", "omega", "delta0")


@dataclass(frozen=True)
class Axis:
    name: str
    min: float
    max: float
    steps: int

    def __post_init__(self):
        if self.name not in AXIS_NAMES:
            raise ConfigError(f"unknown sweep axis {self.name!r}; choose from {AXIS_NAMES}")
        if int(self.steps) != self.steps or self.steps < 2:
            raise ConfigError(f"axis {self.name}: steps must be an integer >= 2")
        if not self.min < self.max:
            raise ConfigError(f"axis {self.name}: need min < max")

    @property
    def values(self) -> np.ndarray:
        return np.linspace(self.min, self.max, int(self.steps))


@dataclass(frozen=True)
class SweepSpec:
    axis1: Axis
    fixed: ScenarioConfig
    axis2: Axis | None = None

    @property
    def axes(self) -> list[Axis]:
        return [self.axis1] if self.axis2 is None else [self.axis1, self.axis2]

    def points(self) -> list[tuple[float, ...]]:
        """Grid points in row-major order (axis1 outer)."""
        if self.axis2 is None:
            return [(float(a),) for a in self.axis1.values]
        return [(float(a), float(b)) for a in self.axis1.values for b in self.axis2.values]


def apply_axis(cfg: ScenarioConfig, name: str, value: float) -> ScenarioConfig:
    if name == "omega_ratio":
        return replace(cfg, omega_ratio=value, omega=None)
    if name == "omega":
        return replace(cfg, omega=value, omega_ratio=None)
    return replace(cfg, **{name: value})


SWEEP_COLUMNS = ("m_value", "i_b_lambda", "i_b_hot", "i_b_cold", "verdict", "n_crossings", "error")


def run_point(fixed: ScenarioConfig, names: tuple[str, ...], values: tuple[float, ...]) -> dict:
    """One sweep point; numerical failures are recorded in the ``error`` column."""
    row: dict = dict(zip(names, values))
    try:
        cfg = fixed
        for name, value in zip(names, values):
            cfg = apply_axis(cfg, name, value)
        rep = run_scenario(cfg).report
    except (MpembaError, np.linalg.LinAlgError, ArithmeticError) as exc:
        row.update({k: None for k in SWEEP_COLUMNS})
        row["error"] = type(exc).__name__
        return row
    row.update(
        m_value=rep.m_value,
        i_b_lambda=rep.i_b_lambda,
        i_b_hot=rep.i_b_hot,
        i_b_cold=rep.i_b_cold,
        verdict=rep.verdict,
        n_crossings=len(rep.crossings),
        error=None,
    )
    return row


def _run_point_args(args):
    return run_point(*args)


def run_sweep(spec: SweepSpec, jobs: int = 1) -> list[dict]:
    """Evaluate every grid point; row order is row-major regardless of ``jobs``."""
    names = tuple(a.name for a in spec.axes)
    tasks = [(spec.fixed, names, pt) for pt in spec.points()]
    if jobs <= 1:
        return [_run_point_args(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_run_point_args, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
