"""Projection-operator (time-convolutionless) expansion of the evolution operator."""

from .core import (DimensionError, NotDiagonalError, NotHermitianError, OperatorError, adjoint,
                   exp_diagonal, exp_hermitian, frobenius_norm, identity, kron, matmul, trace)
from .expansion import Tcl2StepResult, dyson2_step, k2_integral, sigma2_matrix, tcl2_step
from .hamfile import HamiltonianFileError, load_custom_hamiltonian
from .interaction import (InteractionFrame, integrate_diagonal_phase, interaction_hamiltonian,
                          recombine, u_zero)
from .models import (FIG1_PARAMS, LambdaParams, TimeDependentHamiltonian, XYChainParams,
                     constant_hamiltonian, domain_wall_count, lambda_f, lambda_g, lambda_h,
                     lambda_hamiltonian, xy_hamiltonian)
from .projection import ProjectorPair, project_diag, project_offdiag
from .propagation import (Method, ObservableSeries, PropagatorTrajectory, average_series,
                          population, propagate, reference_inverse, reference_propagate)
from .quadrature import QuadratureSpec
from .thermo import (PartitionResult, partition_sweep, z_closed_form_dyson_n10,
                     z_closed_form_tcl_n10, z_dyson2, z_exact, z_tcl2)

__version__ = "0.1.0"
