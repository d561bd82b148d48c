"""Experiment drivers: pure functions from (config, seeds) to result bundles.

Every run writes its CSV outputs plus a manifest JSON into the output
directory.  The manifest echoes the resolved config, so feeding it back
as --config re-runs the experiment; with a single worker the CSV bytes
reproduce exactly.  Floats are serialized with repr (shortest
round-trip), which is stable across runs on the same platform.

Seed policy: trajectory i of master seed s draws from
numpy SeedSequence([s, i]); paired arms (regularized / bare) share the
trajectory seed, so their initializations are identical.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .ansatz import BrickworkAnsatz, fourth_root_y_state
from .encodings import (
    GridFunction,
    SparseStateSpec,
    WeierstrassSpec,
    amplitude_encode,
    ingest_scalar_field,
    k_sparse_state,
    turbulence_surrogate,
    weierstrass_samples,
)
from .entropy import tee_contiguous
from .hamiltonians import LatticeSpec, build_af2dnnh, exact_ground_energy
from .mincut import hartley_tee
from .sinemps import qnsst_residual, qnsst_threshold
from .statevector import StateVector, qft
from .vqa import (
    CGConfig,
    CostSpec,
    OptimizerConfig,
    RegularizerConfig,
    build_omega_contiguous,
    build_omega_lshape,
    min_params_for_infidelity,
    optimize,
    variance_of_tee_gradient,
)


@dataclass
class ResultBundle:
    """Outputs of one experiment run."""

    experiment: str
    out_dir: Path
    csv_paths: list[Path]
    manifest_path: Path
    manifest: dict


def _fmt(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if value is None:
        return ""
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def write_csv(path: Path, header: list[str], rows) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")
    return path


def trajectory_seed(master: int, index: int) -> np.random.SeedSequence:
    return np.random.SeedSequence([int(master), int(index)])


def _write_manifest(
    experiment: str,
    out_dir: Path,
    config: dict,
    csv_paths: list[Path],
    wall: float,
    baselines: dict | None = None,
) -> ResultBundle:
    manifest = {
        "experiment": experiment,
        "package": "teeq",
        "version": __version__,
        "config": config,
        "outputs": [p.name for p in csv_paths],
        "baselines": baselines or {},
        "wall_time_s": wall,
    }
    path = out_dir / "manifest.json"
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return ResultBundle(experiment, out_dir, csv_paths, path, manifest)


def _pool_map(fn, jobs, threads: int):
    if threads <= 1:
        return [fn(job) for job in jobs]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, jobs))


# ---------------------------------------------------------------------------
# coarse-grained circuit sweep
# ---------------------------------------------------------------------------


def run_mincut_sweep(config: dict, out_dir: Path, threads: int = 1) -> ResultBundle:
    t0 = time.perf_counter()
    rows = []
    for n in config["n_list"]:
        if n < 4 or n & (n - 1) or n % 4:
            raise ValueError(f"n={n} must be a power of two divisible by 4")
        d_max = config["d_max"] or n // 2
        for d in range(1, d_max + 1):
            rows.append((n, d, hartley_tee(n, d)))
    csv = write_csv(out_dir / "mincut_tee.csv", ["n", "depth", "tee0_nats"], rows)
    return _write_manifest("mincut-sweep", out_dir, config, [csv], time.perf_counter() - t0)


# ---------------------------------------------------------------------------
# Weierstrass TEE in real and Fourier space
# ---------------------------------------------------------------------------


def run_weierstrass(config: dict, out_dir: Path, threads: int = 1) -> ResultBundle:
    t0 = time.perf_counter()
    n, b, alpha = config["n"], config["b"], config["alpha"]
    if n > 20:
        raise ValueError(f"n={n} exceeds the statevector cap of 20 qubits")
    rows = []
    for a in config["a_list"]:
        spec = WeierstrassSpec(a=a, b=b, m_max=config["m_max"])
        grid, tail = weierstrass_samples(spec, n)
        psi = amplitude_encode(grid)
        tee_real = tee_contiguous(psi, alpha)
        tee_fourier = tee_contiguous(qft(psi), alpha) if config["include_fourier"] else float("nan")
        rows.append((a, n, tee_real, tee_fourier, tail))
    csv = write_csv(
        out_dir / "weierstrass_tee.csv",
        ["a", "n", "tee_real_nats", "tee_fourier_nats", "series_tail_bound"],
        rows,
    )
    return _write_manifest("weierstrass", out_dir, config, [csv], time.perf_counter() - t0)


# ---------------------------------------------------------------------------
# random sparse states
# ---------------------------------------------------------------------------


def run_ksparse(config: dict, out_dir: Path, threads: int = 1) -> ResultBundle:
    t0 = time.perf_counter()
    n, alpha = config["n"], config["alpha"]
    sample_rows, summary_rows = [], []
    for k in config["k_list"]:
        vals = []
        for i in range(config["samples"]):
            seed = int(np.random.SeedSequence([config["seed"], k, i]).generate_state(1)[0])
            psi = k_sparse_state(SparseStateSpec(n=n, k=k, seed=seed))
            val = tee_contiguous(psi, alpha)
            vals.append(val)
            sample_rows.append((n, k, i, val))
        summary_rows.append((n, k, len(vals), float(np.mean(vals)), float(np.std(vals))))
    csv1 = write_csv(
        out_dir / "ksparse_samples.csv", ["n", "k", "sample", "tee_nats"], sample_rows
    )
    csv2 = write_csv(
        out_dir / "ksparse_summary.csv",
        ["n", "k", "samples", "tee_mean_nats", "tee_std_nats"],
        summary_rows,
    )
    return _write_manifest("ksparse", out_dir, config, [csv1, csv2], time.perf_counter() - t0)


# ---------------------------------------------------------------------------
# QNSST residual sweep
# ---------------------------------------------------------------------------


def run_qnsst(config: dict, out_dir: Path, threads: int = 1) -> ResultBundle:
    t0 = time.perf_counter()
    n = config["n"]
    lambdas = config["lambdas"]
    amps = config["amplitudes"]
    phases = config["phases"]
    if not (len(lambdas) == len(amps) == len(phases)):
        raise ValueError("lambdas, amplitudes and phases must have equal length")
    x = np.arange(1 << n) * 2.0 ** (-n)
    values = np.zeros_like(x)
    for lam, amp, phase in zip(lambdas, amps, phases):
        values += amp * np.sin(2.0 * np.pi * x / lam + phase)
    f = GridFunction(n, values)
    q_c = qnsst_threshold(min(lambdas))
    rows = []
    for q in range(1, n):
        res = qnsst_residual(f, q)
        rows.append((q, res, float(np.log2(res)) if res > 0 else float("-inf")))
    csv = write_csv(out_dir / "qnsst_residual.csv", ["q", "residual", "log2_residual"], rows)
    return _write_manifest(
        "qnsst", out_dir, config, [csv], time.perf_counter() - t0, baselines={"q_c": q_c}
    )


# ---------------------------------------------------------------------------
# gradient variance sweep
# ---------------------------------------------------------------------------


def run_gradvar(config: dict, out_dir: Path, threads: int = 1) -> ResultBundle:
    t0 = time.perf_counter()
    rows = []
    for n in config["n_list"]:
        rng = np.random.default_rng(trajectory_seed(config["seed"], n))
        for rec in variance_of_tee_gradient(n, config["dtot_list"], config["trials"], rng):
            rows.append(
                (rec["n"], rec["dtot"], rec["param_qubit"], rec["trials"],
                 rec["grad_mean"], rec["grad_variance"])
            )
    csv = write_csv(
        out_dir / "gradvar.csv",
        ["n", "dtot", "param_qubit", "trials", "grad_mean", "grad_variance"],
        rows,
    )
    return _write_manifest("gradvar", out_dir, config, [csv], time.perf_counter() - t0)


# ---------------------------------------------------------------------------
# paired regularized / bare optimization experiments
# ---------------------------------------------------------------------------


def _paired_trajectory(job: dict) -> list[tuple]:
    """One (trajectory, arm) optimization; returns per-step CSV rows."""
    n = job["n"]
    ss = trajectory_seed(job["master_seed"], job["index"])
    rng = np.random.default_rng(ss)
    ansatz = BrickworkAnsatz.with_random_axes(n, job["dtot"], rng)
    theta0 = np.zeros(ansatz.num_parameters)
    head = min(job["random_layers"], job["dtot"]) * n
    theta0[:head] = rng.uniform(0.0, 2.0 * np.pi, head)

    if job["kind"] == "encode":
        reference = StateVector(n, np.asarray(job["reference"]))
        spec = CostSpec.infidelity(reference)
        omega = build_omega_contiguous(n, job["n_s"])
        baseline = 0.0
    else:
        lattice = LatticeSpec(job["lx"], job["ly"])
        spec = CostSpec.energy(build_af2dnnh(lattice, job["j"], job["h"]))
        omega = build_omega_lshape(lattice)
        baseline = job["e_g"]

    gamma0 = job["gamma0"]
    reg = RegularizerConfig(omega, gamma0=gamma0, beta=job["beta"]) if gamma0 > 0 else None
    opt = OptimizerConfig(kind=job["optimizer"], steps=job["steps"], cg=CGConfig())
    rec = optimize(ansatz, theta0, fourth_root_y_state(n), spec, reg, opt, seed=job["index"])
    arm = "regularized" if gamma0 > 0 else "bare"
    rows = []
    for i in range(rec.step.size):
        rows.append(
            (arm, job["index"], int(rec.step[i]), rec.cost[i] - baseline,
             rec.cost[i], rec.cost_tee[i], rec.gamma[i], rec.grad_norm[i])
        )
    return rows


def _run_paired(kind: str, config: dict, out_dir: Path, threads: int, extra: dict,
                baselines: dict) -> ResultBundle:
    t0 = time.perf_counter()
    jobs = []
    for index in range(config["trajectories"]):
        for gamma0 in (config["gamma0"], 0.0):
            job = {
                "kind": kind,
                "index": index,
                "master_seed": config["seed"],
                "n": extra["n"],
                "dtot": config["dtot"],
                "steps": config["steps"],
                "gamma0": gamma0,
                "beta": config["beta"],
                "optimizer": config["optimizer"],
                "random_layers": config["random_layers"],
            }
            job.update(extra)
            jobs.append(job)
    results = _pool_map(_paired_trajectory, jobs, threads)
    rows = [row for chunk in results for row in chunk]
    name = "encode_steps.csv" if kind == "encode" else "vqe_steps.csv"
    value_col = "cost" if kind == "encode" else "delta_e"
    csv = write_csv(
        out_dir / name,
        ["arm", "trajectory", "step", value_col, "cost_raw", "cost_tee", "gamma", "grad_norm"],
        rows,
    )
    summary = _paired_summary(rows, config["quantile_steps"])
    summary_path = out_dir / ("encode_summary.json" if kind == "encode" else "vqe_summary.json")
    with open(summary_path, "w") as fh:
        json.dump(summary, fh, indent=2, sort_keys=True)
        fh.write("\n")
    bundle = _write_manifest(kind, out_dir, config, [csv], time.perf_counter() - t0, baselines)
    bundle.manifest["summary"] = summary
    return bundle


def _paired_summary(rows, quantile_steps) -> dict:
    by_arm_step: dict[tuple[str, int], list[float]] = {}
    final_step = max(r[2] for r in rows)
    for arm, traj, step, value, *_ in rows:
        by_arm_step.setdefault((arm, step), []).append(value)
    out: dict = {"quantiles": {}, "final": {}}
    probes = sorted(set(int(s) for s in quantile_steps) | {final_step})
    for arm in ("regularized", "bare"):
        for step in probes:
            vals = by_arm_step.get((arm, step))
            if not vals:
                continue
            key = f"{arm}@{step}"
            out["quantiles"][key] = {
                "q25": float(np.quantile(vals, 0.25)),
                "median": float(np.median(vals)),
                "q75": float(np.quantile(vals, 0.75)),
                "max": float(np.max(vals)),
                "min": float(np.min(vals)),
            }
        finals = by_arm_step.get((arm, final_step), [])
        out["final"][arm] = {
            "median": float(np.median(finals)),
            "max": float(np.max(finals)),
            "min": float(np.min(finals)),
        }
    return out


def run_encode(config: dict, out_dir: Path, threads: int = 1) -> ResultBundle:
    n = config["n"]
    if config["data_file"]:
        grid, stats = ingest_scalar_field(
            config["data_file"], n, config["extraction"], config["stride"], config["format"]
        )
    else:
        grid = turbulence_surrogate(n, seed=config["surrogate_seed"])
        stats = {
            "count": grid.values.size,
            "min": float(grid.values.min()),
            "max": float(grid.values.max()),
            "l2": float(np.linalg.norm(grid.values)),
        }
    reference = amplitude_encode(grid)
    extra = {"n": n, "n_s": config["n_s"], "reference": reference.amps.tolist()}
    return _run_paired("encode", config, out_dir, threads, extra, {"field_stats": stats})


def run_vqe(config: dict, out_dir: Path, threads: int = 1) -> ResultBundle:
    lattice = LatticeSpec(config["lx"], config["ly"])
    ham = build_af2dnnh(lattice, config["j"], config["h"])
    e_g, _ = exact_ground_energy(ham)
    extra = {
        "n": lattice.n,
        "lx": config["lx"],
        "ly": config["ly"],
        "j": config["j"],
        "h": config["h"],
        "e_g": e_g,
    }
    return _run_paired("vqe", config, out_dir, threads, extra, {"e_g": e_g})


# ---------------------------------------------------------------------------
# minimum-parameter scaling
# ---------------------------------------------------------------------------


def run_scaling(config: dict, out_dir: Path, threads: int = 1) -> ResultBundle:
    t0 = time.perf_counter()
    master, tail = weierstrass_samples(
        WeierstrassSpec(a=config["a"], b=config["b"]), config["base_n"]
    )
    rows = []
    for eps in config["eps_list"]:
        rng = np.random.default_rng(trajectory_seed(config["seed"], 0))
        cells = min_params_for_infidelity(
            master,
            eps,
            range(config["n_min"], config["n_max"] + 1),
            rng,
            max_layers=config["max_layers"],
            steps=config["steps"],
            restarts=config["restarts"],
        )
        for c in cells:
            rows.append((c.n, c.eps_th, c.layers, c.min_params, c.infidelity, c.reached))
    csv = write_csv(
        out_dir / "scaling.csv",
        ["n", "eps_th", "layers", "min_params", "infidelity", "reached"],
        rows,
    )
    return _write_manifest(
        "scaling", out_dir, config, [csv], time.perf_counter() - t0,
        baselines={"series_tail_bound": tail},
    )


RUNNERS = {
    "mincut-sweep": run_mincut_sweep,
    "weierstrass": run_weierstrass,
    "ksparse": run_ksparse,
    "qnsst": run_qnsst,
    "gradvar": run_gradvar,
    "encode": run_encode,
    "vqe": run_vqe,
    "scaling": run_scaling,
}
