"""Deterministic verification checks behind the selftest subcommand.

Each check returns (name, passed, detail).  Fixed seeds make every check
reproducible; tolerances are pinned here and nowhere else.
"""

from __future__ import annotations

import numpy as np

from .ansatz import (
    BrickworkAnsatz,
    apply_ansatz,
    circuit_operator_distance,
    fourth_root_y_state,
)
from .encodings import (
    GridFunction,
    SparseStateSpec,
    WeierstrassSpec,
    amplitude_encode,
    k_sparse_state,
    weierstrass_samples,
)
from .entropy import entropy_of_region, tee_contiguous
from .hamiltonians import LatticeSpec, build_af2dnnh
from .mincut import build_circuit_graph, hartley_tee, min_cut_value
from .sinemps import qnsst_residual, qnsst_threshold, sine_mps_state, sine_rdo_closed_form
from .statevector import Region, StateVector, reduced_density
from .vqa import CostSpec, build_omega_contiguous
from .vqa.costs import bare_cost, c_tee
from .vqa.gradients import grad_cost_parameter_shift, grad_ctee_parameter_shift

LN2 = float(np.log(2.0))


def _fd_gradient(f, theta, h=1e-5):
    grads = np.zeros(theta.size)
    for j in range(theta.size):
        tp, tm = theta.copy(), theta.copy()
        tp[j] += h
        tm[j] -= h
        grads[j] = (f(tp) - f(tm)) / (2.0 * h)
    return grads


def check_gradients() -> tuple[str, bool, str]:
    """Criterion 1: shift-rule gradients match central finite differences
    (h=1e-5) within 1e-6 on 20 random instances at n=6, Dtot=8."""
    n, dtot = 6, 8
    rng = np.random.default_rng(101)
    psi0 = fourth_root_y_state(n)
    ham = build_af2dnnh(LatticeSpec(3, 2), 1.0, 2.0)
    omega = build_omega_contiguous(n, 2)
    worst = 0.0
    kinds = ["energy", "infidelity", "ctee"]
    for i in range(20):
        kind = kinds[i % 3]
        ansatz = BrickworkAnsatz.with_random_axes(n, dtot, rng)
        theta = rng.uniform(0, 2 * np.pi, ansatz.num_parameters)
        if kind == "ctee":
            grads = grad_ctee_parameter_shift(ansatz, theta, psi0, omega)
            fd = _fd_gradient(lambda t: c_tee(apply_ansatz(ansatz, t, psi0), omega), theta)
        else:
            if kind == "energy":
                spec = CostSpec.energy(ham)
            else:
                spec = CostSpec.infidelity(StateVector.haar_random(n, rng))
            grads = grad_cost_parameter_shift(ansatz, theta, psi0, spec)
            fd = _fd_gradient(lambda t: bare_cost(apply_ansatz(ansatz, t, psi0), spec), theta)
        worst = max(worst, float(np.abs(grads - fd).max()))
    return ("gradient-correctness", worst < 1e-6, f"max |shift - fd| = {worst:.2e}")


def check_entropy_oracles() -> tuple[str, bool, str]:
    """Criterion 2: product TEE, GHZ TEE and pure-state entropy symmetry."""
    rng = np.random.default_rng(102)
    amps = np.array([1.0 + 0j])
    for _ in range(8):
        v = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        amps = np.kron(amps, v / np.linalg.norm(v))
    product = StateVector(8, amps)
    ok = True
    details = []
    for alpha in (0, 1, 2):
        val = abs(tee_contiguous(product, alpha))
        ok &= val < 1e-10
        details.append(f"prod a={alpha}: {val:.1e}")
    ghz_err = abs(tee_contiguous(StateVector.ghz(8), 1) - LN2)
    ok &= ghz_err < 1e-10
    details.append(f"ghz: {ghz_err:.1e}")
    psi = StateVector.haar_random(8, rng)
    region = Region([0, 2, 5])
    comp = Region([1, 3, 4, 6, 7])
    for alpha in (0, 1, 2):
        diff = abs(entropy_of_region(psi, region, alpha) - entropy_of_region(psi, comp, alpha))
        ok &= diff < 1e-9
    details.append("symmetry ok")
    return ("entropy-oracles", bool(ok), "; ".join(details))


def check_mincut() -> tuple[str, bool, str]:
    """Criterion 3: exact plateau to n/8, saturation from n/4, monotone
    descent, and max-flow equal to the enumeration oracle on small graphs."""
    ok = True
    details = []
    for n in (16, 64, 256):
        vals = {d: hartley_tee(n, d) for d in range(1, n // 2 + 1)}
        plateau = all(vals[d] == 0.0 for d in range(1, n // 8 + 1))
        saturated = all(
            abs(vals[d] + n * LN2 / 2.0) < 1e-12 for d in range(n // 4, n // 2 + 1)
        )
        seq = [vals[d] for d in sorted(vals)]
        monotone = all(b <= a + 1e-12 for a, b in zip(seq, seq[1:]))
        ok &= plateau and saturated and monotone
        details.append(f"n={n}: plateau={plateau} sat={saturated} mono={monotone}")
    # enumeration oracle on every graph with <= 16 edges: n=4 (8, 12, 16 edges)
    from itertools import combinations

    def brute(graph, region):
        sources = {graph.output_terminal(q) for q in region}
        sinks = {graph.output_terminal(q) for q in range(graph.n) if q not in region}
        edges = graph.edges

        def disconnected(removed):
            adj: dict[int, list[int]] = {}
            for idx, (u, v) in enumerate(edges):
                if idx in removed:
                    continue
                adj.setdefault(u, []).append(v)
                adj.setdefault(v, []).append(u)
            stack, seen = list(sources), set(sources)
            while stack:
                u = stack.pop()
                if u in sinks:
                    return False
                for v in adj.get(u, ()):
                    if v not in seen:
                        seen.add(v)
                        stack.append(v)
            return True

        for k in range(len(edges) + 1):
            for removed in combinations(range(len(edges)), k):
                if disconnected(set(removed)):
                    return k

    oracle_ok = True
    for depth in (0, 1, 2, 3):
        g = build_circuit_graph(4, depth)
        if len(g.edges) > 16:
            continue
        for region in ((0,), (0, 1), (1, 2), (0, 2)):
            oracle_ok &= min_cut_value(g, region) == brute(g, region)
    ok &= oracle_ok
    details.append(f"enumeration oracle: {oracle_ok}")
    return ("mincut-plateau-saturation", bool(ok), "; ".join(details))


def check_sine_closed_form() -> tuple[str, bool, str]:
    """Criterion 4: the n=22, k=16 pi statevector matches the closed-form
    single-qubit RDO, and the off-diagonal climbs monotonically to 1/2."""
    n, k, phi = 22, 16 * np.pi, 0.0
    psi = sine_mps_state(k, phi, n)
    ok = True
    worst_small_q = 0.0
    for q in range(1, n - 1):
        rho = reduced_density(psi, Region([q])).mat.real
        cf = sine_rdo_closed_form(k, phi, q)
        err = float(np.abs(rho - cf).max())
        if q <= 12:
            worst_small_q = max(worst_small_q, err)
            ok &= err < 1e-4
        ok &= err < 10.0 * 2.0 ** (-(n - q))
    q_c = qnsst_threshold(2 * np.pi / k)
    offs = [sine_rdo_closed_form(k, phi, q)[0, 1] for q in range(q_c, 16)]
    monotone = all(b >= a - 1e-12 for a, b in zip(offs, offs[1:]))
    ok &= monotone and q_c == 5
    return (
        "sine-closed-form",
        bool(ok),
        f"max err (q<=12) = {worst_small_q:.2e}; off-diagonal monotone past q_c={q_c}: {monotone}",
    )


def check_qnsst_decay() -> tuple[str, bool, str]:
    """Criterion 5: three-tone residual decays one octave per qubit past q_c."""
    n = 16
    x = np.arange(1 << n) * 2.0 ** (-n)
    values = (
        np.sin(2 * np.pi * x / 0.5)
        + 0.6 * np.sin(2 * np.pi * x / 0.25 + 0.3)
        + 0.4 * np.sin(2 * np.pi * x / 0.125 + 1.1)
    )
    f = GridFunction(n, values)
    q_c = qnsst_threshold(0.125)
    qs = list(range(q_c + 1, n - 2))
    res = np.array([qnsst_residual(f, q) for q in qs])
    slopes = np.diff(np.log2(res))
    ok = bool(np.all(np.abs(slopes + 1.0) < 0.3)) and q_c == 5
    return (
        "qnsst-decay",
        ok,
        f"q_c={q_c}; log2 slopes in [{slopes.min():.2f}, {slopes.max():.2f}] (target -1 +/- 0.3)",
    )


def check_ksparse_threshold() -> tuple[str, bool, str]:
    """Criterion 6: mean TEE positive at K=8, negative at K=64, sign change
    bracketing 2^(n/3) = 16 at n=12 over 100 fixed-seed samples."""
    n, samples = 12, 100
    means = {}
    for k in (4, 8, 16, 32, 64):
        vals = []
        for i in range(samples):
            seed = int(np.random.SeedSequence([606, k, i]).generate_state(1)[0])
            vals.append(tee_contiguous(k_sparse_state(SparseStateSpec(n, k, seed)), 1))
        means[k] = float(np.mean(vals))
    crossings = [
        (k1, k2)
        for (k1, k2) in zip([4, 8, 16, 32], [8, 16, 32, 64])
        if means[k1] > 0 >= means[k2] or means[k1] > 0 > means[k2]
    ]
    ok = means[8] > 0.1 and means[64] < -0.1 and len(crossings) > 0
    return (
        "ksparse-threshold",
        bool(ok),
        f"mean tee: K=8 -> {means[8]:.3f}, K=64 -> {means[64]:.3f}; sign change in [4, 64]",
    )


def check_weierstrass_trend() -> tuple[str, bool, str]:
    """Criterion 7: vanishing TEE in the smooth regime, ordering across the
    transition, Fourier-space TEE within a factor two in the fractal regime."""
    from .statevector import qft

    n, b = 16, np.sqrt(5.0)
    tees = {}
    tees_f = {}
    for a in (0.25, 0.96):
        grid, _ = weierstrass_samples(WeierstrassSpec(a=a, b=b), n)
        psi = amplitude_encode(grid)
        tees[a] = tee_contiguous(psi, 1)
        tees_f[a] = tee_contiguous(qft(psi), 1)
    ratio = tees_f[0.96] / tees[0.96]
    ok = abs(tees[0.25]) < 0.05 and tees[0.25] > tees[0.96] and 0.5 <= ratio <= 2.0
    return (
        "weierstrass-trend",
        bool(ok),
        f"tee(0.25)={tees[0.25]:.4f}, tee(0.96)={tees[0.96]:.4f}, fourier/real={ratio:.2f}",
    )


def check_error_bound() -> tuple[str, bool, str]:
    """Criterion 8: ||U - U~|| <= n D eps on 100 random perturbed circuits."""
    n, d, eps = 6, 10, 1e-3
    rng = np.random.default_rng(108)
    delta_max = 4.0 * np.arcsin(eps / 2.0)
    violations = 0
    margin = 0.0
    for _ in range(100):
        ansatz = BrickworkAnsatz.with_random_axes(n, d, rng)
        theta = rng.uniform(0, 2 * np.pi, ansatz.num_parameters)
        tilde = theta + rng.uniform(-delta_max, delta_max, theta.shape)
        dist = circuit_operator_distance(ansatz, theta, tilde)
        margin = max(margin, dist / (n * d * eps))
        if dist > n * d * eps + 1e-12:
            violations += 1
    return (
        "error-bound",
        violations == 0,
        f"0 violations target: {violations}; worst distance / bound = {margin:.3f}",
    )


DETERMINISTIC_CHECKS = {
    "gradients": check_gradients,
    "entropy": check_entropy_oracles,
    "mincut": check_mincut,
    "sine": check_sine_closed_form,
    "qnsst": check_qnsst_decay,
    "ksparse": check_ksparse_threshold,
    "weierstrass": check_weierstrass_trend,
    "error-bound": check_error_bound,
}


def run_selftest(checks: list[str] | None = None) -> list[tuple[str, bool, str]]:
    names = checks or list(DETERMINISTIC_CHECKS)
    results = []
    for name in names:
        if name not in DETERMINISTIC_CHECKS:
            raise ValueError(f"unknown selftest check {name!r}")
        results.append(DETERMINISTIC_CHECKS[name]())
    return results
