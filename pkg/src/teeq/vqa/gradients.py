"""Parameter-shift and adjoint gradients of the VQA costs.

The parameter-shift rule for R = exp(-i theta sigma/2) gives the exact
derivative from evaluations at theta +/- pi/2; the adjoint path computes
the same numbers (up to roundoff) in a single backward sweep and is what
the optimizer uses.  Both are implemented and cross-checked in the tests;
the shift form is also exposed per-quantity since it is what a hardware
implementation would run.
"""

from __future__ import annotations

import numpy as np

from .. import _kernels
from ..ansatz import BrickworkAnsatz, apply_ansatz
from ..statevector import Region, StateVector, as_region, region_purity, region_split
from .costs import CostSpec, bare_cost, bare_cost_lambda, c_tee_with_lambda
from .regions import OmegaSet, RegionTriplet

SHIFT = np.pi / 2.0


def _shifted(theta: np.ndarray, j: int, delta: float) -> np.ndarray:
    out = np.asarray(theta, dtype=float).copy()
    out[j] += delta
    return out


def grad_cost_parameter_shift(
    ansatz: BrickworkAnsatz, theta, psi0: StateVector, spec: CostSpec
) -> np.ndarray:
    """dC/dtheta_j = (C(theta_j + pi/2) - C(theta_j - pi/2)) / 2 for every j."""
    theta = np.asarray(theta, dtype=float)
    grads = np.zeros(ansatz.num_parameters)
    for j in range(ansatz.num_parameters):
        cp = bare_cost(apply_ansatz(ansatz, _shifted(theta, j, SHIFT), psi0), spec)
        cm = bare_cost(apply_ansatz(ansatz, _shifted(theta, j, -SHIFT), psi0), spec)
        grads[j] = 0.5 * (cp - cm)
    return grads


def cross_purity(amps_a: np.ndarray, amps_b: np.ndarray, n: int, region: Region) -> float:
    """Tr(rho_A[psi_a] rho_A[psi_b]) contracted on the cheaper side.

    Unlike a single state's purity this is not invariant under swapping
    the region for its complement, so the region is kept as given; only
    the contraction order adapts: Tr(G_a G_b) on the region side, or
    ||M_b^dag M_a||_F^2 on the environment side.
    """
    region = as_region(region)
    ma = region_split(amps_a, n, region)
    mb = region_split(amps_b, n, region)
    if ma.shape[0] <= ma.shape[1]:
        ga = ma @ ma.conj().T
        gb = mb @ mb.conj().T
        return float(np.vdot(gb, ga).real)
    x = mb.conj().T @ ma
    return float(np.sum(np.abs(x) ** 2))


def grad_s2_parameter_shift(
    ansatz: BrickworkAnsatz,
    theta,
    psi0: StateVector,
    region: Region,
    param_index: int,
) -> float:
    """d S^(2)_A / d theta_j = -Tr{(rho+ - rho-) rho} / Tr rho^2, with rho+/-
    the region RDOs of the states at theta_j +/- pi/2."""
    theta = np.asarray(theta, dtype=float)
    psi = apply_ansatz(ansatz, theta, psi0)
    purity = region_purity(psi.amps, psi.n, as_region(region))
    if purity < 1e-14:
        raise FloatingPointError(f"purity {purity} too small for a stable S2 gradient")
    plus = apply_ansatz(ansatz, _shifted(theta, param_index, SHIFT), psi0)
    minus = apply_ansatz(ansatz, _shifted(theta, param_index, -SHIFT), psi0)
    num = cross_purity(plus.amps, psi.amps, psi.n, region) - cross_purity(
        minus.amps, psi.amps, psi.n, region
    )
    return -num / purity


def grad_tee2_parameter_shift(
    ansatz: BrickworkAnsatz,
    theta,
    psi0: StateVector,
    triplet: RegionTriplet,
    param_index: int,
) -> float:
    """Shift-rule gradient of the order-2 TEE of one triplet.

    The three circuit executions are shared across the seven regions of
    the expansion.
    """
    theta = np.asarray(theta, dtype=float)
    psi = apply_ansatz(ansatz, theta, psi0)
    plus = apply_ansatz(ansatz, _shifted(theta, param_index, SHIFT), psi0)
    minus = apply_ansatz(ansatz, _shifted(theta, param_index, -SHIFT), psi0)
    a, b, c = triplet.regions()
    combos = (
        (a, 1), (b, 1), (c, 1),
        (a.union(b), -1), (a.union(c), -1), (b.union(c), -1),
        (a.union(b).union(c), 1),
    )
    total = 0.0
    for region, sign in combos:
        purity = region_purity(psi.amps, psi.n, region)
        if purity < 1e-14:
            raise FloatingPointError(f"purity {purity} too small for a stable S2 gradient")
        num = cross_purity(plus.amps, psi.amps, psi.n, region) - cross_purity(
            minus.amps, psi.amps, psi.n, region
        )
        total += sign * (-num / purity)
    return total


def grad_ctee_parameter_shift(
    ansatz: BrickworkAnsatz, theta, psi0: StateVector, omega: OmegaSet
) -> np.ndarray:
    """Shift-rule gradient of the penalty, with sign(0) := 0 on the
    subgradient of the absolute value."""
    from .costs import tee2_values

    theta = np.asarray(theta, dtype=float)
    psi = apply_ansatz(ansatz, theta, psi0)
    signs = np.sign(tee2_values(psi, omega))
    grads = np.zeros(ansatz.num_parameters)
    for j in range(ansatz.num_parameters):
        total = 0.0
        for sgn, triplet in zip(signs, omega.triplets):
            if sgn == 0.0:
                continue
            total += sgn * grad_tee2_parameter_shift(ansatz, theta, psi0, triplet, j)
        grads[j] = total / len(omega)
    return grads


# ---------------------------------------------------------------------------
# adjoint fast path
# ---------------------------------------------------------------------------


def regularized_value_and_grad(
    ansatz: BrickworkAnsatz,
    theta,
    psi0: StateVector,
    spec: CostSpec,
    omega: OmegaSet | None = None,
    gamma: float = 0.0,
) -> tuple[float, float, np.ndarray]:
    """(bare cost, penalty, full gradient) in one forward + one backward sweep.

    The penalty is evaluated (and differentiated) whenever omega is given;
    tee_only runs use gamma = 1 with a constant bare cost of zero.
    """
    theta = np.asarray(theta, dtype=float)
    psi = apply_ansatz(ansatz, theta, psi0)
    cost = bare_cost(psi, spec)
    w = bare_cost_lambda(psi.amps, spec)
    penalty = 0.0
    if omega is not None:
        penalty, w_tee = c_tee_with_lambda(psi, omega)
        w = gamma * w_tee if w is None else w + gamma * w_tee
    if w is None:
        return cost, penalty, np.zeros(ansatz.num_parameters)
    grads = _kernels.adjoint_gradient(
        psi.amps, w, ansatz.n, ansatz.program, theta, ansatz.num_parameters
    )
    return cost, penalty, grads
