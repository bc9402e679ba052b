"""Finite-volume schemes for scalar conservation laws whose fluxes follow
Dafermos' entropy rate criterion on recovered admissible intervals."""

from .exact import backtrack_value, exact_cell_means, field_error, riemann_rarefaction_burgers
from .flux import (dafermos_flux_burgers, dafermos_flux_search, dissipation_rate,
                   godunov_flux, llf_flux, mlf_flux)
from .grid import (BoundaryCondition, CellField, Grid1D, ghost_extend,
                   project_initial_condition, total_entropy, total_variation)
from .harness import ExperimentSpec, convergence_study, entropy_compare, run_experiment
from .law import BURGERS, Burgers, ScalarLaw
from .problems import PROBLEMS, get_problem
from .radius import (AdmissibleInterval, PredictorKind, bounding_sphere_predictor,
                     surface_discard_predictor, variance_predictor)
from .recon import RecoverySet, StencilOperator, recover_interface_values, stencil_coefficients
from .timeint import SchemeConfig, SchemeFailure, cfl_dt, dp8_step, integrate, semidiscrete_rhs
from .visc import (MollifierKernel, ViscosityProfile, assemble_flux, build_profile,
                   hann_kernel, redistribute)

__version__ = "0.1.0"
