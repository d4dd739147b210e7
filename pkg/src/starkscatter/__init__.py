"""Numerics for Stark-Hamiltonian scattering: classical flows, parabolic
phase calculus, transport symbols, oscillatory integrals and Born-level
scattering kernels."""

from .errors import (
    BudgetError,
    ConfigError,
    ConvergenceError,
    DomainError,
    StarkScatterError,
)
from .potentials import (
    PotentialSpec,
    coulomb,
    eval_potential,
    grad_potential,
    homogeneous,
    zero_potential,
)
from .special import KernelLaw, airy_ai, c1_constant, c2_constant, gamma_fn
from .parabolic import (
    ParabolicPoint,
    PhaseData,
    eikonal_residual,
    jacobian_det,
    theta1_calculus,
    theta1_value,
    theta_calculus,
    to_parabolic,
)
from .classical import (
    GammaObservables,
    PhasePoint,
    Trajectory,
    asymptotic_momentum,
    decay_slope,
    energy,
    free_flow,
    gamma_observables,
    in_region_X,
    integrate_orbit,
    mourre_ratio,
)
from .transport import (
    SymbolResult,
    SymbolValue,
    decay_fit_symbols,
    symbol_b,
    symbol_b_result,
    symbol_q,
    transport_residual,
)
from .oscillatory import (
    BumpProfile,
    EigenfunctionSample,
    airy_reduction,
    asymptotic_convergence,
    eigenfunction_sample,
    free_eigenfunction,
    stationary_phase_eigenfunction,
)
from .kernel import (
    FftFit,
    SymbolGrid,
    apply_taper,
    born_symbol,
    homogeneous_symbol_asymptote,
    kernel_fft_check,
    kernel_singularity_law,
    kernel_transform,
    populate_grid,
)

__version__ = "0.1.0"

__all__ = [
    "BudgetError",
    "ConfigError",
    "ConvergenceError",
    "DomainError",
    "StarkScatterError",
    "PotentialSpec",
    "coulomb",
    "homogeneous",
    "zero_potential",
    "eval_potential",
    "grad_potential",
    "KernelLaw",
    "airy_ai",
    "c1_constant",
    "c2_constant",
    "gamma_fn",
    "ParabolicPoint",
    "PhaseData",
    "to_parabolic",
    "theta_calculus",
    "theta1_calculus",
    "theta1_value",
    "jacobian_det",
    "eikonal_residual",
    "PhasePoint",
    "Trajectory",
    "GammaObservables",
    "free_flow",
    "integrate_orbit",
    "energy",
    "asymptotic_momentum",
    "gamma_observables",
    "decay_slope",
    "in_region_X",
    "mourre_ratio",
    "SymbolValue",
    "SymbolResult",
    "symbol_b",
    "symbol_b_result",
    "symbol_q",
    "transport_residual",
    "decay_fit_symbols",
    "BumpProfile",
    "EigenfunctionSample",
    "airy_reduction",
    "free_eigenfunction",
    "stationary_phase_eigenfunction",
    "eigenfunction_sample",
    "asymptotic_convergence",
    "SymbolGrid",
    "FftFit",
    "born_symbol",
    "homogeneous_symbol_asymptote",
    "kernel_singularity_law",
    "populate_grid",
    "apply_taper",
    "kernel_transform",
    "kernel_fft_check",
]
