"""Driven qubit coupled to a squeezed thermal reservoir.

Units: hbar = k_B = 1 and ``gamma0`` sets the time unit. Temperature only
enters through ``theta = hbar*omega0 / (k_B T)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import ConfigError, NonPositiveTheta
from .superop import build_liouvillian

# (|e>, |g>) ordering: sigma_minus = |g><e|
SIGMA_MINUS = np.array([[0, 0], [1, 0]], dtype=complex)
SIGMA_PLUS = SIGMA_MINUS.conj().T
EXCITED_PROJECTOR = SIGMA_PLUS @ SIGMA_MINUS

HAMILTONIAN_MODES = ("lz", "bare")


def n_thermal(theta: float) -> float:
    """Bose-Einstein occupation ``1 / (exp(theta) - 1)``."""
    if not theta > 0 or not math.isfinite(theta):
        raise NonPositiveTheta(f"theta must be positive and finite, got {theta}")
    return 1.0 / math.expm1(theta)


@dataclass(frozen=True)
class ModelParams:
    gamma0: float = 1.0
    delta0: float = 1.0
    omega: float = 0.0
    phi_d: float = 0.0
    r: float = 0.0
    phi_s: float = 0.0
    theta: float = 100.0

    def __post_init__(self):
        for name in ("gamma0", "delta0", "omega", "phi_d", "r", "phi_s", "theta"):
            val = getattr(self, name)
            if not math.isfinite(val):
                raise ConfigError(f"{name} must be finite, got {val}")
        if self.gamma0 <= 0:
            raise ConfigError(f"gamma0 must be positive, got {self.gamma0}")
        if self.r < 0:
            raise ConfigError(f"squeeze degree r must be >= 0, got {self.r}")
        if self.theta <= 0:
            raise NonPositiveTheta(f"theta must be positive, got {self.theta}")

    @property
    def n_th(self) -> float:
        return n_thermal(self.theta)

    def at_theta(self, theta: float) -> "ModelParams":
        return replace(self, theta=theta)


def squeezed_lowering(r: float, phi_s: float) -> np.ndarray:
    """``cosh(r) sigma_minus + exp(i phi_s) sinh(r) sigma_plus``."""
    return math.cosh(r) * SIGMA_MINUS + np.exp(1j * phi_s) * math.sinh(r) * SIGMA_PLUS


def jump_operators(params: ModelParams) -> tuple[np.ndarray, np.ndarray]:
    n = params.n_th
    base = squeezed_lowering(params.r, params.phi_s)
    r1 = math.sqrt(params.gamma0 * (n + 1.0)) * base
    r2 = math.sqrt(params.gamma0 * n) * base.conj().T
    return r1, r2


def lz_hamiltonian(delta0: float, omega: float, phi_d: float) -> np.ndarray:
    """Landau-Zener drive ``delta0 s+s- + omega (e^{i phi} s+ + e^{-i phi} s-)``."""
    drive = np.exp(1j * phi_d) * SIGMA_PLUS
    return delta0 * EXCITED_PROJECTOR + omega * (drive + drive.conj().T)


def hamiltonian(params: ModelParams, hamiltonian_mode: str = "lz") -> np.ndarray:
    if hamiltonian_mode == "lz":
        return lz_hamiltonian(params.delta0, params.omega, params.phi_d)
    if hamiltonian_mode == "bare":
        return params.delta0 * EXCITED_PROJECTOR
    raise ConfigError(f"unknown hamiltonian_mode {hamiltonian_mode!r}")


def lindblad_apply(params: ModelParams, x, hamiltonian_mode: str = "lz") -> np.ndarray:
    """Action of the squeezed-bath Lindblad generator on a 2x2 operator."""
    x = np.asarray(x, dtype=complex)
    h = hamiltonian(params, hamiltonian_mode)
    out = -1j * (h @ x - x @ h)
    for rn in jump_operators(params):
        rd = rn.conj().T
        rdr = rd @ rn
        out = out + rn @ x @ rd - 0.5 * (rdr @ x + x @ rdr)
    return out


def liouvillian(params: ModelParams, hamiltonian_mode: str = "lz") -> np.ndarray:
    """Real 4x4 Pauli-basis matrix of :func:`lindblad_apply`."""
    return build_liouvillian(lambda x: lindblad_apply(params, x, hamiltonian_mode))
