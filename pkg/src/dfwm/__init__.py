"""Squeezed-light projections for degenerate four-wave mixing in atomic vapor."""

from .atomvapor import (
    AtomModel,
    ComplexRateFactors,
    DriveConfig,
    Susceptibility,
    avg_thermal_velocity,
    doppler_average,
    rabi_frequency,
    saturation_intensity,
    steady_state_numeric,
    susceptibility,
    two_level_susceptibility,
    wall_collision_rate,
)
from .fwmcoupling import (
    THRESHOLD,
    CouplingStrength,
    Geometry,
    GeometryConfig,
    coupling_ffwm,
    coupling_pc,
    gain,
    phase_match_angle,
    phase_mismatch,
    pump_phase_delta,
)
from .quantumnoise import (
    Detection,
    DetectionConfig,
    LossChannel,
    ModeTransform,
    SqueezingResult,
    apply_loss,
    ffwm_mode_transform,
    intensity_diff_exact,
    intensity_diff_squeezing_db,
    intensity_diff_statistics,
    joint_quadrature_variance,
    mode_transform,
    output_photon_numbers,
    pc_mode_transform,
    quadrature_squeezing_db,
)
from .errors import (
    AboveThresholdError,
    ConfigError,
    InsufficientBrightnessError,
    IntegrationConvergenceError,
    PhysicsDomainError,
    SingularSteadyStateError,
)

__version__ = "0.1.0"
