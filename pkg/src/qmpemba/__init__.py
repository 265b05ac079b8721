"""Quantum Mpemba effect of a driven qubit cooled by a squeezed thermal reservoir."""

from .analysis import (
    CoefficientVector,
    MpembaReport,
    check_conditions,
    coefficients,
    decay_ratio_bels,
    mpemba_parameter,
    population_ratio_bels,
)
from .dynamics import (
    DistanceCurve,
    Trajectory,
    distance,
    distance_curve,
    evolve_rk4,
    evolve_spectral,
    prepare_initial_state,
    steady_state,
)
from .model import ModelParams, lindblad_apply, liouvillian, lz_hamiltonian, n_thermal, squeezed_lowering
from .scenario import Axis, ScenarioConfig, SweepSpec, run_scenario, run_sweep
from .superop import (
    SpectralDecomposition,
    build_liouvillian,
    from_coherence_vector,
    spectral_decompose,
    to_coherence_vector,
)

__version__ = "0.1.0"
