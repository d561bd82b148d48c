"""Cost functions, TEE regularizer, gradients, optimizers and drivers."""

from .costs import CostSpec, RegularizerConfig, bare_cost, c_tee, tee2_values
from .experiments import ScalingCell, min_params_for_infidelity, variance_of_tee_gradient
from .gradients import (
    grad_cost_parameter_shift,
    grad_ctee_parameter_shift,
    grad_s2_parameter_shift,
    grad_tee2_parameter_shift,
    regularized_value_and_grad,
)
from .optimize import RunRecord, optimize
from .optimizers import AdamWConfig, CGConfig, OptimizerConfig
from .regions import OmegaSet, RegionTriplet, build_omega_contiguous, build_omega_lshape
