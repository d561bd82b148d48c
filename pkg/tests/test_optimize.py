import numpy as np
import pytest

from teeq.ansatz import BrickworkAnsatz, fourth_root_y_state
from teeq.hamiltonians import LatticeSpec, build_af2dnnh, exact_ground_energy
from teeq.statevector import StateVector
from teeq.vqa import (
    AdamWConfig,
    CGConfig,
    CostSpec,
    OptimizerConfig,
    RegularizerConfig,
    build_omega_contiguous,
    optimize,
)
from teeq.vqa.optimizers import AdamW, ConjugateGradient


# ---------------------------------------------------------------------------
# optimizers on a convex synthetic cost
# ---------------------------------------------------------------------------


def quadratic(theta):
    scales = np.linspace(1.0, 5.0, theta.size)
    return float(np.sum(scales * theta**2))


def quadratic_grad(theta):
    scales = np.linspace(1.0, 5.0, theta.size)
    return 2.0 * scales * theta


def test_adamw_converges_on_quadratic():
    opt = AdamW(AdamWConfig(learning_rate=0.05, weight_decay=0.0), 6)
    theta = np.linspace(-1.0, 1.0, 6)
    for _ in range(500):
        theta = opt.step(theta, quadratic_grad(theta))
    assert quadratic(theta) < 1e-8


def test_cg_converges_on_quadratic():
    cg = ConjugateGradient(CGConfig())
    theta = np.linspace(-1.0, 1.0, 6)
    cost = quadratic(theta)
    for _ in range(500):
        theta, cost = cg.step(theta, quadratic_grad(theta), cost, quadratic)
        if cost < 1e-12:
            break
    assert cost < 1e-8


def test_optimizer_config_validation():
    with pytest.raises(ValueError):
        OptimizerConfig(kind="lbfgs")
    with pytest.raises(ValueError):
        AdamWConfig(learning_rate=-1.0)
    with pytest.raises(ValueError):
        CGConfig(armijo_c=2.0)


# ---------------------------------------------------------------------------
# optimize() driver
# ---------------------------------------------------------------------------


def test_tee_only_fixed_point_at_zero_angles():
    n = 6
    ansatz = BrickworkAnsatz.with_fixed_axis(n, 4, "y")
    omega = build_omega_contiguous(n, 2)
    reg = RegularizerConfig(omega, gamma0=1.0, beta=1.0)
    rec = optimize(
        ansatz,
        np.zeros(ansatz.num_parameters),
        StateVector.zero(n),
        CostSpec.tee_only(),
        reg,
        OptimizerConfig(kind="adamw", steps=10),
    )
    assert np.abs(rec.cost_tee).max() < 1e-10
    assert np.abs(rec.grad_norm).max() < 1e-10
    assert rec.step.size == 11  # initial rows plus the closing row


def test_run_record_is_bit_reproducible():
    rng = np.random.default_rng(21)
    n = 5
    ansatz = BrickworkAnsatz.with_random_axes(n, 6, rng)
    theta0 = rng.uniform(0, 2 * np.pi, ansatz.num_parameters)
    omega = build_omega_contiguous(n, 1)
    spec = CostSpec.energy(build_af2dnnh(LatticeSpec(5, 1), 1.0, 2.0))
    reg = RegularizerConfig(omega, gamma0=0.1, beta=0.5)
    opt = OptimizerConfig(kind="cg", steps=15)
    rec1 = optimize(ansatz, theta0, fourth_root_y_state(n), spec, reg, opt, seed=7)
    rec2 = optimize(ansatz, theta0, fourth_root_y_state(n), spec, reg, opt, seed=7)
    assert np.array_equal(rec1.cost, rec2.cost)
    assert np.array_equal(rec1.theta_final, rec2.theta_final)
    assert np.array_equal(rec1.cost_tee, rec2.cost_tee)
    assert rec1.seed == 7


def test_gamma_annealing_recorded():
    rng = np.random.default_rng(22)
    n = 4
    ansatz = BrickworkAnsatz.with_random_axes(n, 3, rng)
    omega = build_omega_contiguous(n, 1)
    reg = RegularizerConfig(omega, gamma0=0.8, beta=0.5)
    rec = optimize(
        ansatz,
        rng.uniform(0, 2 * np.pi, ansatz.num_parameters),
        StateVector.zero(n),
        CostSpec.tee_only(),
        reg,
        OptimizerConfig(kind="adamw", steps=5),
    )
    np.testing.assert_allclose(rec.gamma, 0.8 * 0.5 ** np.arange(6))


def test_energy_run_respects_variational_bound():
    rng = np.random.default_rng(23)
    n = 4
    ham = build_af2dnnh(LatticeSpec(2, 2), 1.0, 2.0)
    e_g, _ = exact_ground_energy(ham)
    ansatz = BrickworkAnsatz.with_random_axes(n, 8, rng)
    rec = optimize(
        ansatz,
        rng.uniform(0, 2 * np.pi, ansatz.num_parameters),
        fourth_root_y_state(n),
        CostSpec.energy(ham),
        None,
        OptimizerConfig(kind="cg", steps=60),
    )
    assert rec.cost.min() >= e_g - 1e-9
    assert rec.cost[-1] < rec.cost[0]  # made progress


def test_infidelity_run_decreases_and_stays_bounded():
    rng = np.random.default_rng(24)
    n = 4
    target = StateVector.haar_random(n, rng)
    ansatz = BrickworkAnsatz.with_random_axes(n, 10, rng)
    rec = optimize(
        ansatz,
        rng.uniform(0, 2 * np.pi, ansatz.num_parameters),
        fourth_root_y_state(n),
        CostSpec.infidelity(target),
        None,
        OptimizerConfig(kind="cg", steps=80),
    )
    assert np.all(rec.cost >= -1e-12)
    assert np.all(rec.cost <= 1.0 + 1e-12)
    assert rec.cost[-1] < 0.5 * rec.cost[0]


def test_stop_below_records_early_convergence():
    rng = np.random.default_rng(25)
    n = 3
    target = StateVector.zero(n)
    ansatz = BrickworkAnsatz.with_fixed_axis(n, 2, "y")
    rec = optimize(
        ansatz,
        np.zeros(ansatz.num_parameters),
        StateVector.zero(n),
        CostSpec.infidelity(target),
        None,
        OptimizerConfig(kind="cg", steps=50),
        stop_below=1e-9,
    )
    assert rec.converged_early
    assert rec.step.size < 51


def test_metrics_callback_collected():
    from teeq.entropy import nn_mutual_information_mean

    rng = np.random.default_rng(26)
    n = 4
    ansatz = BrickworkAnsatz.with_random_axes(n, 3, rng)
    omega = build_omega_contiguous(n, 1)
    rec = optimize(
        ansatz,
        rng.uniform(0, 2 * np.pi, ansatz.num_parameters),
        fourth_root_y_state(n),
        CostSpec.tee_only(),
        RegularizerConfig(omega, 1.0, 1.0),
        OptimizerConfig(kind="adamw", steps=4),
        metrics=lambda psi: {"i2_nn": nn_mutual_information_mean(psi, 2)},
    )
    assert "i2_nn" in rec.extra
    assert rec.extra["i2_nn"].size == rec.step.size
