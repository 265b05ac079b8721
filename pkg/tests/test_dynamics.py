import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from qmpemba.dynamics import (
    default_times,
    distance,
    distance_curve,
    evolve_rk4,
    evolve_spectral,
    integrate_rk4,
    prepare_initial_state,
    slowest_decay_rate,
    steady_state,
)
from qmpemba.errors import StepTooLarge
from qmpemba.model import ModelParams, lindblad_apply, liouvillian
from qmpemba.superop import from_coherence_vector, spectral_decompose, to_coherence_vector

AMP_DAMP = ModelParams(delta0=0.0, omega=0.0, r=0.0, theta=100.0)
EXCITED = np.diag([1.0, 0.0])
GROUND = np.diag([0.0, 1.0])

# excited population of the undriven thermal state, n / (2n + 1) = 1 / (1 + e^theta)
RHO_EE_THETA_2 = 0.119202922022117556
RHO_EE_THETA_0P1 = 0.475020812521060014


def bloch_vectors():
    return arrays(float, 3, elements=st.floats(-1, 1)).filter(lambda v: np.linalg.norm(v) <= 1)


def test_zero_temperature_steady_state_is_ground():
    rho = steady_state(spectral_decompose(liouvillian(AMP_DAMP)))
    np.testing.assert_allclose(rho, GROUND, atol=1e-12)


def test_steady_state_one_thermal_photon():
    p = ModelParams(delta0=0.0, omega=0.0, r=0.0, theta=math.log(2.0))
    rho = steady_state(spectral_decompose(liouvillian(p)))
    np.testing.assert_allclose(rho, np.diag([1 / 3, 2 / 3]), atol=1e-12)
    # long-time RK4 run from the excited state lands on the same state
    traj = evolve_rk4(p, EXCITED, [0.0, 40.0], check=False)
    np.testing.assert_allclose(traj.density_matrices()[-1], rho, atol=1e-10)


@pytest.mark.parametrize("theta, rho_ee", [(2.0, RHO_EE_THETA_2), (0.1, RHO_EE_THETA_0P1)])
def test_prepare_undriven_thermal_state(theta, rho_ee):
    rho = prepare_initial_state(ModelParams(omega=0.0, theta=theta))
    assert rho[0, 0].real == pytest.approx(rho_ee, abs=1e-12)
    assert abs(rho[0, 1]) < 1e-12


@settings(max_examples=50, deadline=None)
@given(st.floats(0.2, 3), st.floats(0, 3), st.floats(0, 2 * math.pi), st.floats(0, 1.2),
       st.floats(0, 2 * math.pi), st.floats(0.1, 100))
def test_prepared_state_is_stationary_and_physical(delta0, omega, phi_d, r, phi_s, theta):
    p = ModelParams(delta0=delta0, omega=omega, phi_d=phi_d, r=r, phi_s=phi_s, theta=theta)
    rho = prepare_initial_state(p)
    assert abs(np.trace(rho) - 1) < 1e-12
    assert np.linalg.eigvalsh(rho)[0] > -1e-10
    assert np.max(np.abs(lindblad_apply(p, rho))) < 1e-9


def test_spontaneous_decay():
    times = np.linspace(0.0, 5.0, 11)
    traj = evolve_spectral(spectral_decompose(liouvillian(AMP_DAMP)), EXCITED, times)
    rho_ee = traj.density_matrices()[:, 0, 0].real
    np.testing.assert_allclose(rho_ee, np.exp(-times), atol=1e-10)


def test_slowest_rate_amplitude_damping():
    assert slowest_decay_rate(spectral_decompose(liouvillian(AMP_DAMP))) == pytest.approx(0.5, abs=1e-10)
    times = default_times(spectral_decompose(liouvillian(AMP_DAMP)))
    assert len(times) == 2000 and times[-1] == pytest.approx(30.0, abs=1e-8)


def test_rk4_step_exact_for_cubic():
    from qmpemba.dynamics import rk4_step
    # RK4 integrates polynomials of degree <= 3 in t exactly
    y = rk4_step(lambda t, y: 3 * t ** 2 + 1, 0.5, np.array([0.0]), 0.25)
    assert y[0] == pytest.approx(0.75 ** 3 - 0.5 ** 3 + 0.25, abs=1e-15)


def test_rk4_zero_generator_is_identity():
    v0 = np.array([1.0, 0.2, -0.1, 0.3])
    out = integrate_rk4(np.zeros((4, 4)), v0, [0.0, 1.0, 3.0], 1e-2)
    np.testing.assert_array_equal(out, np.tile(v0, (3, 1)))


@settings(max_examples=15, deadline=None)
@given(st.floats(0.25, 2), st.floats(0, 2), st.floats(0, 2 * math.pi), st.floats(0, 1.2),
       st.floats(0, 2 * math.pi), st.floats(math.log(0.1), math.log(100)), bloch_vectors())
def test_rk4_agrees_with_spectral(delta0, ratio, phi_d, r, phi_s, log_theta, bloch):
    p = ModelParams(delta0=delta0, omega=ratio * delta0, phi_d=phi_d, r=r, phi_s=phi_s,
                    theta=math.exp(log_theta))
    rho0 = from_coherence_vector(np.concatenate([[1.0], bloch]))
    times = np.linspace(0.0, 10.0, 21)
    spec = evolve_spectral(spectral_decompose(liouvillian(p)), rho0, times)
    rk4 = evolve_rk4(p, rho0, times)
    assert np.max(np.abs(spec.states - rk4.states)) < 1e-8


def test_rk4_large_step_detected():
    with pytest.raises(StepTooLarge):
        evolve_rk4(AMP_DAMP, EXCITED, [0.0, 5.0], dt=0.5)


def test_semigroup():
    p = ModelParams(delta0=0.8, omega=0.6, phi_d=0.3, r=0.9, phi_s=0.4, theta=0.7)
    d = spectral_decompose(liouvillian(p))
    v0 = to_coherence_vector(EXCITED)
    direct = d.propagator(2.5) @ v0
    split = d.propagator(1.0) @ (d.propagator(1.5) @ v0)
    assert np.max(np.abs(direct - split)) < 1e-12


@settings(max_examples=30, deadline=None)
@given(st.floats(0.25, 2), st.floats(0, 4), st.floats(0, 1.2), st.floats(0.1, 100), bloch_vectors())
def test_positivity_and_trace_along_trajectory(delta0, omega, r, theta, bloch):
    p = ModelParams(delta0=delta0, omega=omega, r=r, phi_d=0.2, phi_s=0.5, theta=theta)
    rho0 = from_coherence_vector(np.concatenate([[1.0], bloch]))
    traj = evolve_spectral(spectral_decompose(liouvillian(p)), rho0, np.linspace(0, 30, 120))
    assert np.max(np.abs(traj.states[:, 0] - 1)) < 1e-10
    assert np.linalg.eigvalsh(traj.density_matrices()).min() > -1e-8


def test_distance_between_poles():
    assert distance(EXCITED, GROUND) == pytest.approx(math.sqrt(2), abs=1e-15)
    assert distance(EXCITED, GROUND, "trace") == pytest.approx(2.0, abs=1e-15)


@given(bloch_vectors(), bloch_vectors())
def test_distance_is_half_bloch_separation(a, b):
    ra = from_coherence_vector(np.concatenate([[1.0], a]))
    rb = from_coherence_vector(np.concatenate([[1.0], b]))
    sep = np.linalg.norm(a - b)
    assert distance(ra, rb) == pytest.approx(sep / math.sqrt(2), abs=1e-14)
    # for a qubit the trace norm is a fixed multiple of the Hilbert-Schmidt norm
    assert distance(ra, rb, "trace") == pytest.approx(sep, abs=1e-12)


def test_distance_curve_amplitude_damping():
    d = spectral_decompose(liouvillian(AMP_DAMP))
    traj = evolve_spectral(d, EXCITED, [0.0, 0.5, 1.0, 2.0])
    curve = distance_curve(traj, steady_state(d))
    np.testing.assert_allclose(curve.values, math.sqrt(2) * np.exp(-curve.times), atol=1e-10)


@pytest.mark.parametrize("times", [[0.5, 1.0], [0.0, 1.0, 1.0], [0.0, 2.0, 1.0]])
def test_bad_time_grid(times):
    d = spectral_decompose(liouvillian(AMP_DAMP))
    with pytest.raises(ValueError):
        evolve_spectral(d, EXCITED, times)
