"""Experiment configuration: defaults, validation, manifest round-trips.

One JSON document per experiment.  Validation is strict: unknown keys are
rejected before any compute, values must match the default's type (ints
are accepted where floats are expected).  A result manifest embeds the
fully resolved config under "config", so a manifest file can be passed
back as the config to re-run an experiment bit-identically.
"""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Any

DEFAULT_TRAJECTORIES = 20  # paper-scale 100 is one config change

EXPERIMENT_DEFAULTS: dict[str, dict[str, Any]] = {
    "mincut-sweep": {
        "seed": 0,
        "n_list": [8, 16, 32, 64, 128, 256, 512],
        "d_max": 0,  # 0: sweep each n up to n/2
    },
    "weierstrass": {
        "seed": 0,
        "n": 16,
        "b": math.sqrt(5.0),
        "a_list": [0.25, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.96],
        "alpha": 1.0,
        "m_max": 0,  # 0: default truncation
        "include_fourier": True,
    },
    "ksparse": {
        "seed": 0,
        "n": 12,
        "k_list": [2, 4, 8, 16, 32, 64, 128, 256],
        "samples": 100,
        "alpha": 1.0,
    },
    "qnsst": {
        "seed": 0,
        "n": 16,
        "lambdas": [0.5, 0.25, 0.125],
        "amplitudes": [1.0, 0.6, 0.4],
        "phases": [0.0, 0.3, 1.1],
    },
    "gradvar": {
        "seed": 5,
        "n_list": [8, 12],
        "dtot_list": [2, 3, 4, 5, 6, 8, 10, 12, 16, 20, 24, 32],
        "trials": 30,
    },
    "encode": {
        "seed": 0,
        "n": 9,
        "dtot": 180,
        "steps": 200,
        "gamma0": 0.1,
        "beta": 0.5,
        "n_s": 2,
        "optimizer": "cg",
        "trajectories": DEFAULT_TRAJECTORIES,
        "random_layers": 6,
        "quantile_steps": [50, 100, 150, 200],
        "data_file": "",
        "extraction": "line",
        "stride": 1,
        "format": "auto",
        "surrogate_seed": 2024,
    },
    "vqe": {
        "seed": 0,
        "lx": 3,
        "ly": 3,
        "j": 1.0,
        "h": 2.0,
        "dtot": 180,
        "steps": 360,
        "gamma0": 100.0,
        "beta": 0.5,
        "optimizer": "cg",
        "trajectories": DEFAULT_TRAJECTORIES,
        "random_layers": 6,
        "quantile_steps": [90, 180, 270, 360],
    },
    "scaling": {
        "seed": 909,
        "n_min": 2,
        "n_max": 8,
        "eps_list": [0.1, 0.001],
        "a": 0.5,
        "b": math.sqrt(5.0),
        "base_n": 16,
        "max_layers": 48,
        "steps": 250,
        "restarts": 2,
    },
    "selftest": {
        "seed": 0,
        "checks": [],  # empty: run every deterministic criterion
    },
}


class ConfigError(ValueError):
    """Configuration document rejected before any computation."""


def _check_type(key: str, value: Any, default: Any) -> Any:
    if isinstance(default, bool):
        if not isinstance(value, bool):
            raise ConfigError(f"key {key!r} expects a boolean, got {value!r}")
        return value
    if isinstance(default, float):
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(f"key {key!r} expects a number, got {value!r}")
        return float(value)
    if isinstance(default, int):
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigError(f"key {key!r} expects an integer, got {value!r}")
        return value
    if isinstance(default, str):
        if not isinstance(value, str):
            raise ConfigError(f"key {key!r} expects a string, got {value!r}")
        return value
    if isinstance(default, list):
        if not isinstance(value, list):
            raise ConfigError(f"key {key!r} expects a list, got {value!r}")
        return value
    raise ConfigError(f"unsupported config key type for {key!r}")


def validate_config(experiment: str, overrides: dict[str, Any] | None) -> dict[str, Any]:
    """Merge overrides into the experiment defaults, rejecting unknown keys."""
    if experiment not in EXPERIMENT_DEFAULTS:
        raise ConfigError(f"unknown experiment {experiment!r}")
    defaults = EXPERIMENT_DEFAULTS[experiment]
    resolved = dict(defaults)
    for key, value in (overrides or {}).items():
        if key not in defaults:
            raise ConfigError(f"unknown key {key!r} for experiment {experiment!r}")
        resolved[key] = _check_type(key, value, defaults[key])
    return resolved


def load_config_file(path: str | Path) -> tuple[str | None, dict[str, Any]]:
    """Read a config or manifest JSON; returns (experiment or None, config)."""
    with open(path) as fh:
        doc = json.load(fh)
    if not isinstance(doc, dict):
        raise ConfigError(f"{path}: top-level JSON must be an object")
    if "config" in doc and "experiment" in doc:  # result manifest round-trip
        return str(doc["experiment"]), dict(doc["config"])
    experiment = doc.pop("experiment", None)
    return (str(experiment) if experiment is not None else None), doc
