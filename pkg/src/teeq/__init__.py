"""Statevector simulator and experiment harness for TEE-regularized VQAs."""

from .statevector import (
    InvalidStateError,
    ReducedDensityOperator,
    Region,
    StateVector,
    qft,
    reduced_density,
)
from .entropy import (
    mutual_information,
    nn_mutual_information_mean,
    renyi_entropy,
    tee,
    tee_contiguous,
)
from .ansatz import (
    BrickworkAnsatz,
    RotationGateSpec,
    apply_ansatz,
    circuit_operator_distance,
    dense_unitary,
    fourth_root_y_state,
    haar_su4_layer,
)

__version__ = "0.1.0"
