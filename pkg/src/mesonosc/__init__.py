"""Flavor-oscillation probabilities of neutral mesons under collapse-model
and phenomenological decoherence damping, with a stochastic verification
oracle and likelihood-based parameter inference."""

from .constants import (
    CONSTANTS,
    ConfigError,
    CslParams,
    DEFAULT_CONFIG,
    MesonSpecies,
    PhysicalConstants,
    Registry,
    default_registry,
    dump_config,
    energy,
    load_config,
)
from .entangle import (
    FinalProjection,
    ImaginaryResidueError,
    JointQuery,
    TwoParticleState,
    antisymmetric_state,
    equal_width_joint_probability,
    flavor_coefficients,
    flavor_projection,
    joint_probability,
    min_time_joint_probability,
    zeta_joint_probability,
)
from .inference import (
    EventRecord,
    FitResult,
    default_time_grid,
    events_from_csv,
    events_to_csv,
    fit_zeta,
    generate_events,
    lambda_ratio,
    lambda_to_zeta,
    zeta_to_lambda,
)
from .kernels import (
    ExponentialKernel,
    GaussianKernel,
    KernelError,
    NoiseKernel,
    TabulatedKernel,
    WhiteKernel,
    spatial_zero,
    tabulated_from_csv,
)
from .oracle import (
    OracleResult,
    PlanError,
    SimulationPlan,
    convergence_sweep,
    simulate_damping,
)
from .oscillation import (
    CslDamping,
    DampingSpec,
    Eigenstate,
    FlavorState,
    LindbladDamping,
    NoDamping,
    csl_damping_rate,
    csl_damping_rate_relativistic,
    damping_exponent,
    energy_difference,
    lindblad_density_matrix,
    momentum_spread_diagnostic,
    phase_magnitude_diagnostic,
    pkj,
    transition_probability,
)
from .wavepackets import (
    GaussianPacket,
    cross_term_kernel_overlap,
    suppression_ratio,
)

__version__ = "0.1.0"

__all__ = [
    "CONSTANTS",
    "ConfigError",
    "CslParams",
    "DEFAULT_CONFIG",
    "MesonSpecies",
    "PhysicalConstants",
    "Registry",
    "default_registry",
    "dump_config",
    "energy",
    "load_config",
    "FinalProjection",
    "ImaginaryResidueError",
    "JointQuery",
    "TwoParticleState",
    "antisymmetric_state",
    "equal_width_joint_probability",
    "flavor_coefficients",
    "flavor_projection",
    "joint_probability",
    "min_time_joint_probability",
    "zeta_joint_probability",
    "EventRecord",
    "FitResult",
    "default_time_grid",
    "events_from_csv",
    "events_to_csv",
    "fit_zeta",
    "generate_events",
    "lambda_ratio",
    "lambda_to_zeta",
    "zeta_to_lambda",
    "ExponentialKernel",
    "GaussianKernel",
    "KernelError",
    "NoiseKernel",
    "TabulatedKernel",
    "WhiteKernel",
    "spatial_zero",
    "tabulated_from_csv",
    "OracleResult",
    "PlanError",
    "SimulationPlan",
    "convergence_sweep",
    "simulate_damping",
    "CslDamping",
    "DampingSpec",
    "Eigenstate",
    "FlavorState",
    "LindbladDamping",
    "NoDamping",
    "csl_damping_rate",
    "csl_damping_rate_relativistic",
    "damping_exponent",
    "energy_difference",
    "lindblad_density_matrix",
    "momentum_spread_diagnostic",
    "phase_magnitude_diagnostic",
    "pkj",
    "transition_probability",
    "GaussianPacket",
    "cross_term_kernel_overlap",
    "suppression_ratio",
    "__version__",
]
