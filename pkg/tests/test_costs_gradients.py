import numpy as np
import pytest

from teeq.ansatz import BrickworkAnsatz, apply_ansatz, fourth_root_y_state
from teeq.entropy import tee
from teeq.hamiltonians import LatticeSpec, build_af2dnnh, expectation
from teeq.statevector import Region, StateVector
from teeq.vqa.costs import (
    CostSpec,
    RegularizerConfig,
    bare_cost,
    c_tee,
    tee2_values,
)
from teeq.vqa.gradients import (
    cross_purity,
    grad_cost_parameter_shift,
    grad_ctee_parameter_shift,
    grad_s2_parameter_shift,
    regularized_value_and_grad,
)
from teeq.vqa.regions import OmegaSet, RegionTriplet, build_omega_contiguous

FD_STEP = 1e-5


def finite_difference(f, theta, h=FD_STEP):
    theta = np.asarray(theta, dtype=float)
    grads = np.zeros(theta.size)
    for j in range(theta.size):
        tp, tm = theta.copy(), theta.copy()
        tp[j] += h
        tm[j] -= h
        grads[j] = (f(tp) - f(tm)) / (2 * h)
    return grads


def product_state(n, rng):
    amps = np.array([1.0 + 0j])
    for _ in range(n):
        v = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        amps = np.kron(amps, v / np.linalg.norm(v))
    return StateVector(n, amps)


# ---------------------------------------------------------------------------
# cost values
# ---------------------------------------------------------------------------


def test_cost_spec_validation():
    with pytest.raises(ValueError):
        CostSpec("nonsense")
    with pytest.raises(ValueError):
        CostSpec("infidelity")
    with pytest.raises(ValueError):
        CostSpec("energy")


def test_infidelity_bounds_and_values():
    rng = np.random.default_rng(0)
    ref = StateVector.haar_random(4, rng)
    spec = CostSpec.infidelity(ref)
    assert abs(bare_cost(ref, spec)) < 1e-12
    other = StateVector.haar_random(4, rng)
    val = bare_cost(other, spec)
    assert 0.0 <= val <= 1.0


def test_energy_cost_matches_expectation():
    rng = np.random.default_rng(1)
    ham = build_af2dnnh(LatticeSpec(2, 2), 1.0, 2.0)
    spec = CostSpec.energy(ham)
    psi = StateVector.haar_random(4, rng)
    assert abs(bare_cost(psi, spec) - expectation(psi, ham)) < 1e-10


def test_c_tee_product_state_zero():
    omega = build_omega_contiguous(6, 2)
    psi = product_state(6, np.random.default_rng(2))
    assert c_tee(psi, omega) < 1e-10


def test_c_tee_ghz_single_site_triplets():
    omega = build_omega_contiguous(6, 1)
    val = c_tee(StateVector.ghz(6), omega)
    assert abs(val - np.log(2.0)) < 1e-10


def test_c_tee_haar_magnitude():
    rng = np.random.default_rng(3)
    omega = build_omega_contiguous(9, 2)
    psi = StateVector.haar_random(9, rng)
    val = c_tee(psi, omega)
    assert val > 0.2  # order ln 2 for scrambled states
    assert val < 3.0


def test_tee2_values_match_entropy_module():
    rng = np.random.default_rng(4)
    psi = StateVector.haar_random(8, rng)
    omega = build_omega_contiguous(8, 2)
    vals = tee2_values(psi, omega)
    for v, t in zip(vals, omega.triplets):
        ref = tee(psi, t.a, t.b, t.c, 2)
        assert abs(v - ref) < 1e-10


def test_regularizer_schedule():
    reg = RegularizerConfig(build_omega_contiguous(6, 2), gamma0=0.1, beta=0.5)
    assert reg.gamma(0) == 0.1
    assert abs(reg.gamma(3) - 0.0125) < 1e-15
    with pytest.raises(ValueError):
        RegularizerConfig(reg.omega, gamma0=-1.0, beta=0.5)
    with pytest.raises(ValueError):
        RegularizerConfig(reg.omega, gamma0=1.0, beta=0.0)


def test_cross_purity_consistency():
    rng = np.random.default_rng(5)
    n = 6
    a = StateVector.haar_random(n, rng).amps
    b = StateVector.haar_random(n, rng).amps
    region = Region([0, 1])
    # oracle: dense rho product trace
    from teeq.statevector import reduced_density

    ra = reduced_density(StateVector(n, a), region).mat
    rb = reduced_density(StateVector(n, b), region).mat
    oracle = float(np.trace(ra @ rb).real)
    assert abs(cross_purity(a, b, n, region) - oracle) < 1e-12
    # large region: same quantity contracted on the environment side
    big = Region([0, 1, 2, 3])
    ra = reduced_density(StateVector(n, a), big).mat
    rb = reduced_density(StateVector(n, b), big).mat
    oracle = float(np.trace(ra @ rb).real)
    assert abs(cross_purity(a, b, n, big) - oracle) < 1e-12


# ---------------------------------------------------------------------------
# parameter-shift gradients vs finite differences
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("kind", ["energy", "infidelity"])
def test_parameter_shift_matches_finite_difference(kind):
    rng = np.random.default_rng(10)
    n, dtot = 4, 4
    ansatz = BrickworkAnsatz.with_random_axes(n, dtot, rng)
    theta = rng.uniform(0, 2 * np.pi, ansatz.num_parameters)
    psi0 = fourth_root_y_state(n)
    if kind == "energy":
        spec = CostSpec.energy(build_af2dnnh(LatticeSpec(2, 2), 1.0, 2.0))
    else:
        spec = CostSpec.infidelity(StateVector.haar_random(n, rng))
    grads = grad_cost_parameter_shift(ansatz, theta, psi0, spec)
    fd = finite_difference(lambda t: bare_cost(apply_ansatz(ansatz, t, psi0), spec), theta)
    assert np.abs(grads - fd).max() < 1e-6


def test_parameter_shift_zero_at_symmetric_point():
    # z-rotations on |0...0>: the cost is independent of every angle
    ansatz = BrickworkAnsatz.with_fixed_axis(4, 2, "z")
    theta = np.full(8, 0.3)
    spec = CostSpec.infidelity(StateVector.zero(4))
    grads = grad_cost_parameter_shift(ansatz, theta, StateVector.zero(4), spec)
    assert np.abs(grads).max() < 1e-12


def test_grad_s2_matches_finite_difference():
    rng = np.random.default_rng(11)
    n, dtot = 6, 6
    ansatz = BrickworkAnsatz.with_random_axes(n, dtot, rng)
    theta = rng.uniform(0, 2 * np.pi, ansatz.num_parameters)
    psi0 = fourth_root_y_state(n)
    region = Region([0, 1])
    from teeq.entropy import entropy_of_region

    for j in (0, 7, 23):
        g = grad_s2_parameter_shift(ansatz, theta, psi0, region, j)
        fd = finite_difference(
            lambda t: entropy_of_region(apply_ansatz(ansatz, t, psi0), region, 2),
            theta,
        )[j]
        assert abs(g - fd) < 1e-6


def test_grad_s2_outside_lightcone_is_zero():
    # depth-1 circuit: parameters on qubits far from the region cannot move S2
    rng = np.random.default_rng(12)
    n = 8
    ansatz = BrickworkAnsatz.with_random_axes(n, 1, rng)
    theta = rng.uniform(0, 2 * np.pi, n)
    region = Region([0, 1])
    g = grad_s2_parameter_shift(ansatz, theta, StateVector.zero(n), region, 5)
    assert abs(g) < 1e-10


def test_grad_ctee_matches_finite_difference():
    rng = np.random.default_rng(13)
    n, dtot = 6, 4
    ansatz = BrickworkAnsatz.with_random_axes(n, dtot, rng)
    theta = rng.uniform(0, 2 * np.pi, ansatz.num_parameters)
    psi0 = fourth_root_y_state(n)
    omega = build_omega_contiguous(n, 2)
    grads = grad_ctee_parameter_shift(ansatz, theta, psi0, omega)
    fd = finite_difference(lambda t: c_tee(apply_ansatz(ansatz, t, psi0), omega), theta)
    assert np.abs(grads - fd).max() < 1e-6


# ---------------------------------------------------------------------------
# adjoint fast path agrees with the shift rule
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("kind", ["energy", "infidelity", "tee_only"])
def test_adjoint_equals_parameter_shift(kind):
    rng = np.random.default_rng(14)
    n, dtot = 5, 4
    ansatz = BrickworkAnsatz.with_random_axes(n, dtot, rng)
    theta = rng.uniform(0, 2 * np.pi, ansatz.num_parameters)
    psi0 = fourth_root_y_state(n)
    omega = build_omega_contiguous(n, 1)
    if kind == "energy":
        spec = CostSpec.energy(build_af2dnnh(LatticeSpec(5, 1), 1.0, 0.7))
        gamma = 0.0
        reference = grad_cost_parameter_shift(ansatz, theta, psi0, spec)
    elif kind == "infidelity":
        spec = CostSpec.infidelity(StateVector.haar_random(n, rng))
        gamma = 0.0
        reference = grad_cost_parameter_shift(ansatz, theta, psi0, spec)
    else:
        spec = CostSpec.tee_only()
        gamma = 1.0
        reference = grad_ctee_parameter_shift(ansatz, theta, psi0, omega)
    _, _, grads = regularized_value_and_grad(
        ansatz, theta, psi0, spec, omega if kind == "tee_only" else None, gamma
    )
    assert np.abs(grads - reference).max() < 1e-9


def test_adjoint_regularized_combination():
    rng = np.random.default_rng(15)
    n, dtot = 5, 3
    ansatz = BrickworkAnsatz.with_random_axes(n, dtot, rng)
    theta = rng.uniform(0, 2 * np.pi, ansatz.num_parameters)
    psi0 = fourth_root_y_state(n)
    omega = build_omega_contiguous(n, 1)
    spec = CostSpec.infidelity(StateVector.haar_random(n, rng))
    gamma = 0.37
    cost, penalty, grads = regularized_value_and_grad(ansatz, theta, psi0, spec, omega, gamma)
    fd = finite_difference(
        lambda t: bare_cost(apply_ansatz(ansatz, t, psi0), spec)
        + gamma * c_tee(apply_ansatz(ansatz, t, psi0), omega),
        theta,
    )
    assert np.abs(grads - fd).max() < 1e-6
    psi = apply_ansatz(ansatz, theta, psi0)
    assert abs(cost - bare_cost(psi, spec)) < 1e-12
    assert abs(penalty - c_tee(psi, omega)) < 1e-12
