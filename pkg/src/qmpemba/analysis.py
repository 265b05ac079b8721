"""Mpemba parameter, mode populations and coefficient-ordering diagnostics."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .dynamics import DistanceCurve, _as_state_vector
from .errors import (
    DegenerateCurves,
    InitialOrderViolated,
    MismatchedDecomposition,
    SlowModeUnpopulated,
    ZeroSlowMode,
)
from .superop import SpectralDecomposition

AREA_TOL = 1e-12
ORDER_RTOL = 1e-9
UNPOPULATED_TOL = 1e-14

STRONG = "Strong"
MODERATE = "Moderate"
NONE = "None"


@dataclass(frozen=True)
class CoefficientVector:
    """Projections ``c_n = <<L_n|rho0>>`` tagged with the eigenvalues they belong to."""

    gammas: np.ndarray
    eigenvalues: np.ndarray

    @property
    def magnitudes(self) -> np.ndarray:
        return np.abs(self.gammas)


def coefficients(decomp: SpectralDecomposition, rho0, tol: float = 1e-10) -> CoefficientVector:
    v0 = _as_state_vector(rho0)
    gammas = decomp.left @ v0
    resid = np.linalg.norm(decomp.right @ gammas - v0)
    if resid >= tol:
        raise ArithmeticError(f"mode expansion does not reproduce the state: {resid:.3e}")
    return CoefficientVector(gammas=gammas, eigenvalues=decomp.eigenvalues.copy())


def _segment_areas(t, d):
    """Exact positive-part and absolute integrals of the piecewise-linear ``d``."""
    h = np.diff(t)
    d0, d1 = d[:-1], d[1:]
    pos = np.where((d0 >= 0) & (d1 >= 0), 0.5 * (d0 + d1) * h, 0.0)
    tot = 0.5 * np.abs(d0 + d1) * h
    # segments with a strict sign change are split at the interpolated root
    flip = d0 * d1 < 0
    if np.any(flip):
        f = d0[flip] / (d0[flip] - d1[flip])
        left = 0.5 * np.abs(d0[flip]) * f * h[flip]
        right = 0.5 * np.abs(d1[flip]) * (1 - f) * h[flip]
        pos[flip] = np.where(d0[flip] > 0, left, right)
        tot[flip] = left + right
    return pos.sum(), tot.sum()


def find_crossings(times, diff) -> list[float]:
    """Times where ``diff`` changes sign, linearly interpolated.

    Samples that are exactly zero are skipped over: a crossing is recorded
    only when the sign on either side of them differs.
    """
    crossings = []
    last_i = None
    for i, d in enumerate(diff):
        if d == 0:
            continue
        if last_i is not None and np.sign(d) != np.sign(diff[last_i]):
            if i == last_i + 1:
                d0, d1 = diff[last_i], d
                crossings.append(float(times[last_i] + (times[i] - times[last_i]) * d0 / (d0 - d1)))
            else:
                crossings.append(float(times[last_i + 1]))
        last_i = i
    return crossings


def gap_areas(curve_c: DistanceCurve, curve_h: DistanceCurve) -> tuple[float, float]:
    """Time averages of ``|B_c - B_h|`` over ``B_c > B_h`` and over the whole run."""
    t = np.asarray(curve_c.times, dtype=float)
    d = np.asarray(curve_c.values, dtype=float) - np.asarray(curve_h.values, dtype=float)
    pos, tot = _segment_areas(t, d)
    tau = t[-1] - t[0]
    return pos / tau, tot / tau


def mpemba_parameter(curve_c: DistanceCurve, curve_h: DistanceCurve) -> tuple[float, list[float]]:
    """Fraction of the hot/cold gap area where the cold curve is farther away.

    Returns ``(M, crossing_times)`` with ``0 <= M < 1``.
    """
    if not np.array_equal(curve_c.times, curve_h.times):
        raise ValueError("distance curves must share a time grid")
    if len(curve_c.times) < 2:
        raise ValueError("need at least two samples")
    bc0, bh0 = curve_c.values[0], curve_h.values[0]
    if not bc0 < bh0:
        raise InitialOrderViolated(f"need B_c(0) < B_h(0), got B_c(0)={bc0!r}, B_h(0)={bh0!r}")
    diff = np.asarray(curve_c.values) - np.asarray(curve_h.values)
    crossings = find_crossings(curve_c.times, diff)
    above, total = gap_areas(curve_c, curve_h)
    if total < 1e-14:
        warnings.warn("hot and cold curves coincide; M set to 0", DegenerateCurves, stacklevel=2)
        return 0.0, crossings
    if above * (curve_c.times[-1] - curve_c.times[0]) < AREA_TOL:
        return 0.0, crossings
    return above / total, crossings


def decay_ratio_bels(decomp: SpectralDecomposition) -> float:
    """``log10(Re lambda_3 / Re lambda_1)``: fastest over slowest decay, in Bel."""
    re = decomp.eigenvalues.real
    if abs(re[1]) < 1e-12:
        raise ZeroSlowMode(f"Re lambda_1 = {re[1]:.3e}; several stationary states")
    return math.log10(re[-1] / re[1])


def population_ratio_bels(gammas: CoefficientVector) -> float:
    """``log10(|c_3| / |c_1|)`` in Bel."""
    mags = gammas.magnitudes
    if mags[1] < UNPOPULATED_TOL:
        raise SlowModeUnpopulated(f"|c_1| = {mags[1]:.3e}")
    if mags[-1] == 0:
        return -math.inf
    return math.log10(mags[-1] / mags[1])


def population_ratio_bels_re(gammas: CoefficientVector) -> float | None:
    """Real-part variant ``log10(Re c_3 / Re c_1)``; ``None`` where undefined."""
    re1, re3 = gammas.gammas[1].real, gammas.gammas[-1].real
    if re1 == 0 or re3 == 0 or np.sign(re1) != np.sign(re3):
        return None
    return math.log10(re3 / re1)


def _strictly_less(a: float, b: float) -> bool:
    return b - a > ORDER_RTOL * max(abs(a), abs(b))


def check_conditions(gamma_hot: CoefficientVector, gamma_cold: CoefficientVector) -> str:
    """``Strong`` if the hot and cold orderings both hold, else ``Moderate``.

    Hot: ``|c3| < |c2| < |c1|``; cold: ``|c3| > |c2| > |c1|``. Near-ties
    (relative ``1e-9``) count as violations.
    """
    if not np.allclose(gamma_hot.eigenvalues, gamma_cold.eigenvalues, rtol=0, atol=1e-12):
        raise MismatchedDecomposition("coefficients come from different Liouvillians")
    h = gamma_hot.magnitudes
    c = gamma_cold.magnitudes
    hot_ok = _strictly_less(h[3], h[2]) and _strictly_less(h[2], h[1])
    cold_ok = _strictly_less(c[1], c[2]) and _strictly_less(c[2], c[3])
    return STRONG if hot_ok and cold_ok else MODERATE


def _complex_list(z: np.ndarray) -> list[list[float]]:
    return [[float(v.real), float(v.imag)] for v in z]


def _finite_or_none(x: float | None) -> float | None:
    return None if x is None or not math.isfinite(x) else float(x)


@dataclass(frozen=True)
class MpembaReport:
    m_value: float
    crossings: list[float]
    gamma_hot: CoefficientVector
    gamma_cold: CoefficientVector
    i_b_lambda: float
    i_b_hot: float
    i_b_cold: float
    verdict: str
    i_b_hot_re: float | None = None
    i_b_cold_re: float | None = None
    flags: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        """JSON-ready view; complex numbers become ``[re, im]`` pairs, non-finite values ``None``."""
        return {
            "m_value": float(self.m_value),
            "crossings": [float(t) for t in self.crossings],
            "i_b_lambda": _finite_or_none(self.i_b_lambda),
            "i_b_hot": _finite_or_none(self.i_b_hot),
            "i_b_cold": _finite_or_none(self.i_b_cold),
            "verdict": self.verdict,
            "gamma_hot": _complex_list(self.gamma_hot.gammas),
            "gamma_cold": _complex_list(self.gamma_cold.gammas),
            "eigenvalues": _complex_list(self.gamma_hot.eigenvalues),
            "i_b_hot_re": _finite_or_none(self.i_b_hot_re),
            "i_b_cold_re": _finite_or_none(self.i_b_cold_re),
            "flags": list(self.flags),
        }


def _bels_or_flag(gammas: CoefficientVector, label: str, flags: list[str]) -> float:
    try:
        return population_ratio_bels(gammas)
    except SlowModeUnpopulated:
        flags.append(f"slow_mode_unpopulated_{label}")
        return math.inf


def mpemba_report(
    decomp: SpectralDecomposition,
    rho_hot,
    rho_cold,
    curve_c: DistanceCurve,
    curve_h: DistanceCurve,
) -> MpembaReport:
    """Combine M with the spectral diagnostics of one hot/cold pair."""
    m, crossings = mpemba_parameter(curve_c, curve_h)
    g_hot = coefficients(decomp, rho_hot)
    g_cold = coefficients(decomp, rho_cold)
    flags: list[str] = []
    try:
        i_lam = decay_ratio_bels(decomp)
    except ZeroSlowMode:
        flags.append("zero_slow_mode")
        i_lam = math.nan
    verdict = NONE if m == 0 else check_conditions(g_hot, g_cold)
    return MpembaReport(
        m_value=m,
        crossings=crossings,
        gamma_hot=g_hot,
        gamma_cold=g_cold,
        i_b_lambda=i_lam,
        i_b_hot=_bels_or_flag(g_hot, "hot", flags),
        i_b_cold=_bels_or_flag(g_cold, "cold", flags),
        verdict=verdict,
        i_b_hot_re=population_ratio_bels_re(g_hot),
        i_b_cold_re=population_ratio_bels_re(g_cold),
        flags=flags,
    )
