"""In-repo optimizers: AdamW and Polak-Ribiere(+) conjugate gradient.

Both are deterministic given the same sequence of gradients/costs, which
is what makes fixed-seed runs bit-reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class AdamWConfig:
    learning_rate: float = 1e-3
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8
    weight_decay: float = 0.01

    def __post_init__(self):
        if min(self.learning_rate, self.eps) <= 0 or self.weight_decay < 0:
            raise ValueError("AdamW rates must be positive (weight decay nonnegative)")
        if not (0 <= self.beta1 < 1 and 0 <= self.beta2 < 1):
            raise ValueError("AdamW moment factors must lie in [0, 1)")


@dataclass(frozen=True)
class CGConfig:
    armijo_c: float = 1e-4
    backtrack: float = 0.5
    initial_step: float = 1.0
    grow: float = 2.0
    max_line_evals: int = 30
    max_expand: int = 3  # doublings attempted once the first trial passes

    def __post_init__(self):
        if not 0 < self.armijo_c < 1 or not 0 < self.backtrack < 1:
            raise ValueError("invalid line-search parameters")
        if self.initial_step <= 0 or self.grow < 1 or self.max_line_evals < 1:
            raise ValueError("invalid line-search parameters")
        if self.max_expand < 0:
            raise ValueError("invalid line-search parameters")


@dataclass(frozen=True)
class OptimizerConfig:
    kind: str = "adamw"  # "adamw" | "cg"
    steps: int = 200
    adamw: AdamWConfig = field(default_factory=AdamWConfig)
    cg: CGConfig = field(default_factory=CGConfig)

    def __post_init__(self):
        if self.kind not in ("adamw", "cg"):
            raise ValueError(f"unknown optimizer kind {self.kind!r}")
        if self.steps < 1:
            raise ValueError("step budget must be positive")


class AdamW:
    """Decoupled weight decay variant; moments start at zero."""

    def __init__(self, cfg: AdamWConfig, num_params: int):
        self.cfg = cfg
        self.m = np.zeros(num_params)
        self.v = np.zeros(num_params)
        self.t = 0

    def step(self, theta: np.ndarray, grad: np.ndarray) -> np.ndarray:
        c = self.cfg
        self.t += 1
        self.m = c.beta1 * self.m + (1 - c.beta1) * grad
        self.v = c.beta2 * self.v + (1 - c.beta2) * grad**2
        m_hat = self.m / (1 - c.beta1**self.t)
        v_hat = self.v / (1 - c.beta2**self.t)
        return theta - c.learning_rate * (m_hat / (np.sqrt(v_hat) + c.eps) + c.weight_decay * theta)


class ConjugateGradient:
    """Polak-Ribiere(+) directions with automatic restart and a
    backtracking Armijo line search (sufficient-decrease constant c,
    step halving)."""

    def __init__(self, cfg: CGConfig):
        self.cfg = cfg
        self.prev_grad: np.ndarray | None = None
        self.direction: np.ndarray | None = None
        self.prev_step: float | None = None

    def _new_direction(self, grad: np.ndarray) -> np.ndarray:
        if self.prev_grad is None or self.direction is None:
            return -grad
        denom = float(self.prev_grad @ self.prev_grad)
        if denom <= 0.0:
            return -grad
        beta = max(0.0, float(grad @ (grad - self.prev_grad)) / denom)  # PR+
        direction = -grad + beta * self.direction
        if float(grad @ direction) >= 0.0:  # not a descent direction: restart
            return -grad
        return direction

    def step(self, theta: np.ndarray, grad: np.ndarray, cost: float, evaluate) -> tuple[np.ndarray, float]:
        """One update; ``evaluate`` maps a parameter vector to the cost."""
        cfg = self.cfg
        direction = self._new_direction(grad)
        slope = float(grad @ direction)
        if slope >= 0.0 or not np.isfinite(slope):
            self.prev_grad = grad
            self.direction = None
            self.prev_step = None
            return theta, cost
        t = cfg.initial_step if self.prev_step is None else min(
            cfg.initial_step, self.prev_step * cfg.grow
        )
        accepted = None
        for _ in range(cfg.max_line_evals):
            f = evaluate(theta + t * direction)
            if np.isfinite(f) and f <= cost + cfg.armijo_c * t * slope:
                accepted = (t, f)
                break
            t *= cfg.backtrack
        self.prev_grad = grad
        if accepted is None:
            # stalled: force a steepest-descent restart on the next step
            self.direction = None
            self.prev_step = None
            return theta, cost
        t, f = accepted
        # bracket upward while the sufficient-decrease condition keeps holding
        for _ in range(cfg.max_expand):
            f2 = evaluate(theta + 2 * t * direction)
            if np.isfinite(f2) and f2 <= cost + cfg.armijo_c * 2 * t * slope and f2 < f:
                t, f = 2 * t, f2
            else:
                break
        self.direction = direction
        self.prev_step = t
        return theta + t * direction, f
