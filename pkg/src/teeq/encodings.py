"""Classical-data state constructions: amplitude encoding, Weierstrass
functions, random sparse states, and scalar-field ingestion.

A GridFunction holds 2**n real samples f(x_j) on the dyadic grid
x_j = j * 2**-n over [0, 1); amplitude encoding normalizes those samples
into the computational-basis amplitudes of an n-qubit state (big-endian,
so the sample index is the basis index).
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .statevector import InvalidStateError, StateVector, num_qubits

WEIERSTRASS_MMAX_CAP = 2000


@dataclass(frozen=True)
class GridFunction:
    """Real samples of a scalar function on the 2**n-point dyadic grid."""

    n: int
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=np.float64)
        if vals.shape != (1 << self.n,):
            raise ValueError(f"value array of shape {vals.shape} does not match n={self.n}")
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_values(cls, values) -> "GridFunction":
        vals = np.asarray(values, dtype=np.float64).ravel()
        return cls(num_qubits(vals.size), vals)

    def grid(self) -> np.ndarray:
        return np.arange(1 << self.n) * 2.0 ** (-self.n)


def amplitude_encode(f: GridFunction) -> StateVector:
    """State with amps_i = f(x_i) / ||f||_2 (real amplitudes)."""
    norm = np.linalg.norm(f.values)
    if norm == 0.0:
        raise InvalidStateError("cannot amplitude-encode the all-zero function")
    return StateVector(f.n, (f.values / norm).astype(np.complex128))


# ---------------------------------------------------------------------------
# Weierstrass function
# ---------------------------------------------------------------------------


def default_weierstrass_mmax(a: float) -> int:
    """Terms needed for a relative series tail below 1e-16, capped at 2000."""
    return min(WEIERSTRASS_MMAX_CAP, max(1, math.ceil(-16.0 * math.log(10.0) / math.log(a))))


@dataclass(frozen=True)
class WeierstrassSpec:
    """sum_{m=0}^{m_max-1} a^m sin(b^m pi x); fractal for a >= 1/b."""

    a: float
    b: float
    m_max: int = 0  # 0 selects the default truncation for the given a

    def __post_init__(self):
        if not 0.0 < self.a < 1.0:
            raise ValueError(f"amplitude ratio a={self.a} must lie in (0, 1)")
        if self.b <= 1.0:
            raise ValueError(f"frequency ratio b={self.b} must exceed 1")
        if self.m_max == 0:
            object.__setattr__(self, "m_max", default_weierstrass_mmax(self.a))
        if self.m_max < 1:
            raise ValueError("m_max must be at least 1")

    def tail_bound(self) -> float:
        return self.a**self.m_max / (1.0 - self.a)


def weierstrass_samples(spec: WeierstrassSpec, n: int) -> tuple[GridFunction, float]:
    """Partial sum at all grid points, plus the tail bound of the actual
    truncation a**m_eff / (1 - a).

    High-frequency terms are evaluated as-is; aliasing on the finite grid
    is intentional (the Fourier-space analysis depends on it).  Terms whose
    frequency b**m overflows float64 are dropped; they sit far below the
    representable tail anyway.
    """
    overflow_limit = int(math.floor(306.0 * math.log(10.0) / math.log(spec.b)))
    m_eff = min(spec.m_max, overflow_limit)
    x = np.arange(1 << n) * 2.0 ** (-n)
    out = np.zeros_like(x)
    for m in range(m_eff):
        out += spec.a**m * np.sin(spec.b**m * np.pi * x)
    return GridFunction(n, out), spec.a**m_eff / (1.0 - spec.a)


def hausdorff_dimension(a: float, b: float) -> float:
    """Box/Hausdorff dimension 2 + ln a / ln b of the fractal-regime graph."""
    if b <= 1.0:
        raise ValueError(f"frequency ratio b={b} must exceed 1")
    if not (1.0 / b <= a < 1.0):
        raise ValueError(f"a={a} lies outside the fractal regime [1/b, 1) for b={b}")
    return 2.0 + math.log(a) / math.log(b)


# ---------------------------------------------------------------------------
# random K-sparse states
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SparseStateSpec:
    """K distinct basis states with amplitudes of magnitude 1/sqrt(K)."""

    n: int
    k: int
    seed: int

    def __post_init__(self):
        if not 1 <= self.k <= (1 << self.n):
            raise ValueError(f"sparsity k={self.k} outside [1, 2^{self.n}]")


def _distinct_indices(rng: np.random.Generator, dim: int, k: int) -> np.ndarray:
    if k == dim:
        return np.arange(dim)
    invert = k > dim // 2
    want = dim - k if invert else k
    chosen: set[int] = set()
    order: list[int] = []
    while len(order) < want:
        i = int(rng.integers(dim))
        if i not in chosen:
            chosen.add(i)
            order.append(i)
    if invert:
        mask = np.ones(dim, dtype=bool)
        mask[order] = False
        return np.nonzero(mask)[0]
    return np.asarray(order)


def k_sparse_state(spec: SparseStateSpec, rng: np.random.Generator | None = None) -> StateVector:
    """Uniformly chosen support of size K, uniform random phases."""
    if rng is None:
        rng = np.random.default_rng(spec.seed)
    dim = 1 << spec.n
    idx = _distinct_indices(rng, dim, spec.k)
    amps = np.zeros(dim, dtype=np.complex128)
    amps[idx] = np.exp(1j * rng.uniform(0.0, 2.0 * np.pi, spec.k)) / np.sqrt(spec.k)
    return StateVector(spec.n, amps)


# ---------------------------------------------------------------------------
# external scalar fields
# ---------------------------------------------------------------------------


def _read_values(source: str | Path, fmt: str) -> np.ndarray:
    path = Path(source)
    if fmt == "auto":
        fmt = "csv" if path.suffix.lower() in (".csv", ".txt") else "f64"
    if fmt == "csv":
        vals: list[float] = []
        with open(path, newline="") as fh:
            for row in csv.reader(fh):
                if not row or not row[0].strip():
                    continue
                try:
                    vals.append(float(row[0]))
                except ValueError as exc:
                    raise ValueError(f"malformed CSV value {row[0]!r} in {path}") from exc
        return np.asarray(vals)
    if fmt == "f64":
        return np.fromfile(path, dtype="<f8")
    raise ValueError(f"unknown format {fmt!r}; expected 'csv', 'f64' or 'auto'")


def ingest_scalar_field(
    source: str | Path,
    n: int,
    extraction: str = "line",
    stride: int = 1,
    fmt: str = "auto",
) -> tuple[GridFunction, dict]:
    """Extract 2**n real samples from a CSV or raw little-endian float64 file.

    extraction="line" takes the first 2**n * stride values and keeps every
    stride-th one; extraction="flatten" spreads 2**n samples evenly across
    the whole (stride-thinned) file.  Returns the grid function and its
    min/max/l2 statistics.
    """
    if stride < 1:
        raise ValueError("stride must be positive")
    data = _read_values(source, fmt)
    want = 1 << n
    if extraction == "line":
        if data.size < want * stride:
            raise ValueError(
                f"need {want * stride} values for n={n}, stride={stride}; file has {data.size}"
            )
        vals = data[: want * stride : stride]
    elif extraction == "flatten":
        thin = data[::stride]
        if thin.size < want:
            raise ValueError(f"need {want} values for n={n}; file has {thin.size} after stride")
        idx = (np.arange(want) * thin.size) // want
        vals = thin[idx]
    else:
        raise ValueError(f"unknown extraction {extraction!r}; expected 'line' or 'flatten'")
    grid = GridFunction(n, vals)
    stats = {
        "count": int(want),
        "min": float(vals.min()),
        "max": float(vals.max()),
        "l2": float(np.linalg.norm(vals)),
    }
    return grid, stats


def turbulence_surrogate(n: int, seed: int, spectral_exponent: float = -5.0 / 3.0) -> GridFunction:
    """Synthetic stand-in for a turbulent scalar field.

    Random-phase Fourier synthesis with a power-law energy spectrum
    ~ k**spectral_exponent (Kolmogorov-like by default), zero mean.
    """
    rng = np.random.default_rng(seed)
    dim = 1 << n
    nk = dim // 2
    spec = np.zeros(nk + 1, dtype=np.complex128)
    k = np.arange(1, nk)
    spec[1:nk] = k ** (spectral_exponent / 2.0) * np.exp(1j * rng.uniform(0, 2 * np.pi, nk - 1))
    spec[nk] = float(rng.choice([-1.0, 1.0])) * nk ** (spectral_exponent / 2.0)
    values = np.fft.irfft(spec, n=dim) * dim
    return GridFunction(n, values)
