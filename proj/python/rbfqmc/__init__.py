"""Meshless laboratory: RBF interpolation, DRM/QMC particular solutions,
MFS Poisson solves and node-placement studies."""

from rbfqmc._core import (
    NumericalError,
    Interpolant,
    PoissonSolution,
    convergence,
    curse_reference,
    fit_error_exponent,
    fit_interpolant,
    fundamental_solution,
    gs_rbf_phi,
    integrate_qmc,
    list_problems,
    newton_potential,
    nodes,
    phi,
    psi,
    qmc_particular,
    sample_boundary,
    sigma,
    solve,
    timespace_radius,
)

__all__ = [
    "NumericalError",
    "Interpolant",
    "PoissonSolution",
    "convergence",
    "curse_reference",
    "fit_error_exponent",
    "fit_interpolant",
    "fundamental_solution",
    "gs_rbf_phi",
    "integrate_qmc",
    "list_problems",
    "newton_potential",
    "nodes",
    "phi",
    "psi",
    "qmc_particular",
    "sample_boundary",
    "sigma",
    "solve",
    "timespace_radius",
]

__version__ = "0.1.0"
