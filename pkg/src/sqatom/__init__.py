"""Driven two-level atom coupled to a finite-bandwidth squeezed vacuum.

Computes the bath's Lorentzian squeezing spectra, the effective
master-equation coefficients they induce, the atomic dynamics and
steady states, the coherence and dwell timescales of a weakly
interrogated atom, and the squeezing-phase condition under which the
coherence survives repeated interrogation indefinitely.
"""

from .bath import (
    BathConfig,
    ConstantPhase,
    LinearPhase,
    LorentzianWidths,
    PhaseModel,
    lorentzian_widths,
    photon_number_spectrum,
    squeezing_phase,
    two_photon_spectrum_abs,
)
from .coherence import (
    EvolutionSpec,
    TimescaleReport,
    coherence_function_numeric,
    coherence_function_windowed,
    coherence_time,
    coherence_time_squeezed,
    decay_parameter_squeezed,
    degree_of_coherence,
    steady_oscillation,
)
from .config import (
    RunConfig,
    SpectrumGrid,
    SweepSpec,
    Tolerances,
    TrajectorySettings,
    apply_parameter,
    parse_config,
)
from .dynamics import (
    BlochState,
    BlochTrajectory,
    DensityDiagnostics,
    SteadyState,
    bloch_coefficients,
    bloch_from_density,
    bloch_rhs,
    density_diagnostics,
    density_from_bloch,
    density_trajectory,
    integrate_bloch,
    master_superoperator,
    propagate_density,
    steady_state_analytic,
    steady_state_integrated,
    steady_state_numeric,
)
from .effective import (
    AtomConfig,
    EffectiveParams,
    PhysicalityResult,
    effective_params,
    physicality_check,
    spectral_contrast,
)
from .errors import (
    ConfigError,
    DegenerateConfigurationError,
    QuadratureError,
    SingularDenominatorError,
    StiffnessError,
)
from .sustainability import (
    SustainabilitySolution,
    im_M_tilde,
    omega_tilde_condition,
    solve_phi_closed_form,
    solve_phi_root,
)
from .zeno import (
    MeasurementWindow,
    RatioResult,
    coherence_dwell_ratio,
    dwell_time_frequent,
    dwell_time_weak,
    survival_weak_value,
    survival_weak_value_general,
)

__version__ = "0.1.0"

__all__ = [
    "AtomConfig",
    "BathConfig",
    "BlochState",
    "BlochTrajectory",
    "ConfigError",
    "ConstantPhase",
    "DegenerateConfigurationError",
    "DensityDiagnostics",
    "EffectiveParams",
    "EvolutionSpec",
    "LinearPhase",
    "LorentzianWidths",
    "MeasurementWindow",
    "PhaseModel",
    "PhysicalityResult",
    "QuadratureError",
    "RatioResult",
    "RunConfig",
    "SingularDenominatorError",
    "SpectrumGrid",
    "SteadyState",
    "StiffnessError",
    "SustainabilitySolution",
    "SweepSpec",
    "TimescaleReport",
    "Tolerances",
    "TrajectorySettings",
    "apply_parameter",
    "bloch_coefficients",
    "bloch_from_density",
    "bloch_rhs",
    "coherence_dwell_ratio",
    "coherence_function_numeric",
    "coherence_function_windowed",
    "coherence_time",
    "coherence_time_squeezed",
    "decay_parameter_squeezed",
    "degree_of_coherence",
    "density_diagnostics",
    "density_from_bloch",
    "density_trajectory",
    "dwell_time_frequent",
    "dwell_time_weak",
    "effective_params",
    "im_M_tilde",
    "integrate_bloch",
    "lorentzian_widths",
    "master_superoperator",
    "omega_tilde_condition",
    "parse_config",
    "photon_number_spectrum",
    "physicality_check",
    "propagate_density",
    "solve_phi_closed_form",
    "solve_phi_root",
    "spectral_contrast",
    "squeezing_phase",
    "steady_oscillation",
    "steady_state_analytic",
    "steady_state_integrated",
    "steady_state_numeric",
    "survival_weak_value",
    "survival_weak_value_general",
    "two_photon_spectrum_abs",
]
