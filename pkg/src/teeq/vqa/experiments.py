"""Higher-level VQA experiment routines: barren-plateau and scaling sweeps."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..ansatz import BrickworkAnsatz, apply_ansatz
from ..encodings import GridFunction, amplitude_encode
from ..entropy import contiguous_quarters
from ..statevector import StateVector
from .costs import CostSpec
from .gradients import grad_tee2_parameter_shift
from .optimize import optimize
from .optimizers import CGConfig, OptimizerConfig
from .regions import RegionTriplet


def variance_of_tee_gradient(
    n: int,
    dtot_list,
    trials: int,
    rng: np.random.Generator,
    triplet: RegionTriplet | None = None,
) -> list[dict]:
    """Variance over random initializations of the order-2 TEE gradient.

    The probed parameter sits at depth 1 on qubit floor(n/8); axes and
    angles are redrawn for every trial.  One row per total depth.
    """
    if trials < 2:
        raise ValueError("need at least two trials for a variance")
    if triplet is None:
        a, b, c = contiguous_quarters(n)
        triplet = RegionTriplet(a, b, c)
    qubit = n // 8
    psi0 = StateVector.zero(n)
    rows = []
    for dtot in dtot_list:
        grads = np.empty(trials)
        for t in range(trials):
            ansatz = BrickworkAnsatz.with_random_axes(n, dtot, rng)
            theta = rng.uniform(0.0, 2.0 * np.pi, ansatz.num_parameters)
            grads[t] = grad_tee2_parameter_shift(ansatz, theta, psi0, triplet, qubit)
        rows.append(
            {
                "n": n,
                "dtot": int(dtot),
                "param_qubit": qubit,
                "trials": trials,
                "grad_mean": float(np.mean(grads)),
                "grad_variance": float(np.var(grads)),
            }
        )
    return rows


@dataclass(frozen=True)
class ScalingCell:
    """Outcome of the layer-growth search at one (n, threshold)."""

    n: int
    eps_th: float
    layers: int | None
    min_params: int | None
    infidelity: float

    @property
    def reached(self) -> bool:
        return self.layers is not None


def _best_infidelity(ansatz, target, theta_init, rng, steps, restarts, eps_th):
    spec = CostSpec.infidelity(target)
    psi0 = StateVector.zero(ansatz.n)
    opt = OptimizerConfig(kind="cg", steps=steps, cg=CGConfig())
    best_cost = np.inf
    best_theta = theta_init
    candidates = [theta_init] + [
        rng.uniform(0.0, 2.0 * np.pi, ansatz.num_parameters) for _ in range(restarts)
    ]
    for theta0 in candidates:
        rec = optimize(ansatz, theta0, psi0, spec, None, opt, stop_below=eps_th * 0.5)
        if rec.final_cost < best_cost:
            best_cost = rec.final_cost
            best_theta = rec.theta_final
        if best_cost <= eps_th * 0.5:
            break
    return best_cost, best_theta


def min_params_for_infidelity(
    target: GridFunction,
    eps_th: float,
    n_range,
    rng: np.random.Generator,
    max_layers: int = 48,
    steps: int = 300,
    restarts: int = 2,
) -> list[ScalingCell]:
    """Smallest y-rotation brickwork parameter count reaching the target
    infidelity, grown layer by layer and re-optimized at every size.

    For each n the target is the first 2**n samples of ``target``; the
    circuit is restricted to y-axis rotations so amplitudes stay real.
    A cell whose budget runs out is reported with layers=None, not fatal.
    """
    cells = []
    for n in n_range:
        vals = target.values[: 1 << n]
        ref = amplitude_encode(GridFunction(n, vals))
        prev_theta = None
        cell = None
        for layers in range(1, max_layers + 1):
            ansatz = BrickworkAnsatz.with_fixed_axis(n, layers, "y")
            if prev_theta is None:
                warm = np.zeros(ansatz.num_parameters)
            else:
                warm = np.concatenate([prev_theta, np.zeros(n)])
            cost, theta = _best_infidelity(ansatz, ref, warm, rng, steps, restarts, eps_th)
            prev_theta = theta
            if cost <= eps_th:
                cell = ScalingCell(n, eps_th, layers, ansatz.num_parameters, float(cost))
                break
        if cell is None:
            cell = ScalingCell(n, eps_th, None, None, float(cost))
        cells.append(cell)
    return cells
