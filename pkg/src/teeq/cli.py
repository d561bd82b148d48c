"""Command-line experiment harness.

One subcommand per experiment: mincut-sweep, weierstrass, ksparse, qnsst,
gradvar, encode, vqe, scaling, selftest.  Each takes an optional JSON
config (or a previous run's manifest, which re-runs it), writes CSV
outputs plus a manifest into the output directory, and exits nonzero on
any error.

Environment: TEEQ_OUTPUT_DIR overrides the default output directory,
TEEQ_THREADS the worker count (-1 keeps the single-threaded, bit-exact
mode).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .acceptance import DETERMINISTIC_CHECKS, run_selftest
from .config import ConfigError, EXPERIMENT_DEFAULTS, load_config_file, validate_config
from .harness import RUNNERS

ENV_OUT = "TEEQ_OUTPUT_DIR"
ENV_THREADS = "TEEQ_THREADS"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="teeq",
        description=(
            "Experiment harness for TEE-regularized variational quantum "
            "algorithms. Results are CSV files plus a manifest JSON that "
            "re-runs the experiment when passed back via --config. "
            f"Environment: {ENV_OUT} overrides --out, {ENV_THREADS} overrides --threads."
        ),
    )
    sub = parser.add_subparsers(dest="experiment", required=True)
    for name in list(EXPERIMENT_DEFAULTS):
        p = sub.add_parser(name, help=f"run the {name} experiment")
        p.add_argument("--config", type=Path, default=None,
                       help="JSON config or a previous manifest.json")
        p.add_argument("--out", type=Path, default=None,
                       help=f"output directory (default ./results/{name}; env {ENV_OUT})")
        p.add_argument("--threads", type=int, default=None,
                       help=f"worker processes; 1 guarantees bit-exact reruns (env {ENV_THREADS})")
        if name == "selftest":
            p.add_argument("--check", action="append", default=None,
                           choices=sorted(DETERMINISTIC_CHECKS),
                           help="run only the named check (repeatable)")
    return parser


def _resolve_threads(arg_threads: int | None, config_threads: int | None = None) -> int:
    if arg_threads is not None:
        return max(1, arg_threads)
    env = os.environ.get(ENV_THREADS)
    if env is not None:
        return max(1, int(env))
    if config_threads:
        return max(1, config_threads)
    return 1


def _resolve_out(experiment: str, arg_out: Path | None) -> Path:
    if arg_out is not None:
        return arg_out
    env = os.environ.get(ENV_OUT)
    if env:
        return Path(env) / experiment
    return Path("results") / experiment


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    experiment = args.experiment
    try:
        overrides: dict = {}
        if args.config is not None:
            file_experiment, overrides = load_config_file(args.config)
            if file_experiment is not None and file_experiment != experiment:
                raise ConfigError(
                    f"config file is for {file_experiment!r}, not {experiment!r}"
                )
        config = validate_config(experiment, overrides)

        if experiment == "selftest":
            checks = args.check or (config["checks"] or None)
            results = run_selftest(checks)
            failed = 0
            for name, passed, detail in results:
                status = "PASS" if passed else "FAIL"
                print(f"[{status}] {name}: {detail}")
                failed += 0 if passed else 1
            print(f"selftest: {len(results) - failed}/{len(results)} checks passed")
            return 1 if failed else 0

        out_dir = _resolve_out(experiment, args.out)
        threads = _resolve_threads(args.threads)
        bundle = RUNNERS[experiment](config, out_dir, threads)
        print(f"{experiment}: wrote {', '.join(p.name for p in bundle.csv_paths)} "
              f"and manifest.json to {bundle.out_dir}")
        if "summary" in bundle.manifest:
            print(json.dumps(bundle.manifest["summary"].get("final", {}), indent=2))
        return 0
    except (ConfigError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
