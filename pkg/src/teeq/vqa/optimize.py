"""Optimization driver producing fully populated run records."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from ..ansatz import BrickworkAnsatz, apply_ansatz
from ..statevector import StateVector
from .costs import CostSpec, RegularizerConfig, bare_cost, c_tee
from .gradients import regularized_value_and_grad
from .optimizers import AdamW, ConjugateGradient, OptimizerConfig


@dataclass
class RunRecord:
    """Per-step trajectory of one optimization run.

    Row s describes the state before the s-th update; the final row
    (step == steps taken) is the end state.  ``extra`` holds any
    additional per-step metrics collected by the caller's callback.
    """

    step: np.ndarray
    cost: np.ndarray
    cost_tee: np.ndarray
    gamma: np.ndarray
    grad_norm: np.ndarray
    theta_final: np.ndarray
    seed: int | None
    wall_time: float
    converged_early: bool = False
    aborted: bool = False
    message: str = ""
    extra: dict[str, np.ndarray] = field(default_factory=dict)

    @property
    def final_cost(self) -> float:
        return float(self.cost[-1])

    def columns(self) -> dict[str, np.ndarray]:
        cols = {
            "step": self.step,
            "cost": self.cost,
            "cost_tee": self.cost_tee,
            "gamma": self.gamma,
            "grad_norm": self.grad_norm,
        }
        cols.update(self.extra)
        return cols


def optimize(
    ansatz: BrickworkAnsatz,
    theta0,
    psi0: StateVector,
    spec: CostSpec,
    reg: RegularizerConfig | None,
    opt: OptimizerConfig,
    seed: int | None = None,
    metrics=None,
    stop_below: float | None = None,
) -> RunRecord:
    """Minimize C(theta) + gamma(s) * C_TEE(theta) for the configured budget.

    gamma(s) is recomputed every step; the trajectory is a pure function
    of (ansatz, theta0, psi0, configs).  ``metrics``, if given, maps the
    per-step output state to a dict of floats recorded alongside.
    ``stop_below`` ends the run early once the bare cost reaches the
    target (off by default).
    """
    t_start = time.perf_counter()
    theta = np.asarray(theta0, dtype=float).copy()
    if theta.size != ansatz.num_parameters:
        raise ValueError(
            f"theta0 has {theta.size} entries, ansatz needs {ansatz.num_parameters}"
        )
    omega = reg.omega if reg is not None else None

    rows: list[tuple] = []
    extras: dict[str, list[float]] = {}
    aborted = False
    message = ""
    converged = False

    adamw = AdamW(opt.adamw, theta.size) if opt.kind == "adamw" else None
    cg = ConjugateGradient(opt.cg) if opt.kind == "cg" else None

    def record(s, cost_val, tee_val, gamma_s, gnorm):
        rows.append((s, cost_val, tee_val, gamma_s, gnorm))
        if metrics is not None:
            psi = apply_ansatz(ansatz, theta, psi0)
            for key, val in metrics(psi).items():
                extras.setdefault(key, []).append(float(val))

    steps_taken = 0
    for s in range(opt.steps):
        gamma_s = reg.gamma(s) if reg is not None else 0.0
        cost_val, tee_val, grads = regularized_value_and_grad(
            ansatz, theta, psi0, spec, omega, gamma_s
        )
        gnorm = float(np.linalg.norm(grads))
        if not (np.isfinite(cost_val) and np.isfinite(gnorm)):
            aborted = True
            message = f"non-finite cost or gradient at step {s}"
            record(s, cost_val, tee_val, gamma_s, gnorm)
            break
        record(s, cost_val, tee_val, gamma_s, gnorm)
        if stop_below is not None and cost_val <= stop_below:
            converged = True
            break
        if opt.kind == "adamw":
            theta = adamw.step(theta, grads)
        else:
            total = cost_val + gamma_s * tee_val

            def evaluate(candidate):
                psi = apply_ansatz(ansatz, candidate, psi0)
                val = bare_cost(psi, spec)
                if omega is not None and gamma_s != 0.0:
                    val += gamma_s * c_tee(psi, omega)
                return val

            theta, _ = cg.step(theta, grads, total, evaluate)
        steps_taken = s + 1

    if not aborted and not converged:
        # closing row: the state after the last update
        s = steps_taken
        gamma_s = reg.gamma(s) if reg is not None else 0.0
        cost_val, tee_val, grads = regularized_value_and_grad(
            ansatz, theta, psi0, spec, omega, gamma_s
        )
        record(s, cost_val, tee_val, gamma_s, float(np.linalg.norm(grads)))

    arr = np.asarray(rows, dtype=float)
    return RunRecord(
        step=arr[:, 0].astype(int),
        cost=arr[:, 1],
        cost_tee=arr[:, 2],
        gamma=arr[:, 3],
        grad_norm=arr[:, 4],
        theta_final=theta,
        seed=seed,
        wall_time=time.perf_counter() - t_start,
        converged_early=converged,
        aborted=aborted,
        message=message,
        extra={k: np.asarray(v) for k, v in extras.items()},
    )
