"""Statevector representation, gate kernels and reduced density operators.

Basis convention (shared by every module in this package): big-endian.
Basis index i has binary expansion b_{n-1}...b_0 and qubit q holds bit
b_{n-1-q}, i.e. qubit 0 is the most significant bit.  Index i therefore
maps directly to the grid point x_i = i * 2**-n of an amplitude-encoded
function, and qubit q resolves the length scale 2**-(q+1).

All kernels operate on flat complex arrays of length 2**n.  A trailing
batch dimension may be folded into the array (shape (2**n, B)); the
reshape tricks below remain valid because the batch axis is contiguous
and trailing.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

ATOL_NORM = 1e-10
ATOL_HERMITIAN = 1e-10
ATOL_EIGENVALUE = 1e-10


class InvalidStateError(ValueError):
    """Raised when an array violates a state or density-operator invariant."""


def num_qubits(dim: int) -> int:
    """Number of qubits for a Hilbert-space dimension; rejects non powers of two."""
    n = int(dim).bit_length() - 1
    if dim <= 0 or (1 << n) != dim:
        raise ValueError(f"dimension {dim} is not a power of two")
    return n


# ---------------------------------------------------------------------------
# regions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Region:
    """A nonempty sorted set of qubit indices."""

    qubits: tuple[int, ...]

    def __init__(self, qubits: Iterable[int]):
        qs = tuple(sorted(set(int(q) for q in qubits)))
        if not qs:
            raise ValueError("region must be nonempty")
        if qs[0] < 0:
            raise ValueError(f"negative qubit index in region {qs}")
        object.__setattr__(self, "qubits", qs)

    def __len__(self) -> int:
        return len(self.qubits)

    def __iter__(self):
        return iter(self.qubits)

    def validate(self, n: int) -> None:
        if self.qubits[-1] >= n:
            raise ValueError(f"region {self.qubits} out of range for n={n}")

    def union(self, other: "Region") -> "Region":
        return Region(self.qubits + other.qubits)

    def isdisjoint(self, other: "Region") -> bool:
        return set(self.qubits).isdisjoint(other.qubits)


def as_region(region: "Region | Iterable[int]") -> Region:
    return region if isinstance(region, Region) else Region(region)


# ---------------------------------------------------------------------------
# state vector
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StateVector:
    """n-qubit pure state; ``amps[i]`` is the amplitude of basis index i."""

    n: int
    amps: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amps, dtype=np.complex128)
        if amps.shape != (1 << self.n,):
            raise InvalidStateError(
                f"amplitude array of shape {amps.shape} does not match n={self.n}"
            )
        object.__setattr__(self, "amps", amps)

    @classmethod
    def from_amplitudes(cls, amps: Sequence[complex], normalize: bool = False) -> "StateVector":
        a = np.asarray(amps, dtype=np.complex128).ravel()
        n = num_qubits(a.size)
        nrm = np.linalg.norm(a)
        if normalize:
            if nrm == 0:
                raise InvalidStateError("cannot normalize the zero vector")
            a = a / nrm
        elif abs(nrm - 1.0) > ATOL_NORM:
            raise InvalidStateError(f"state norm {nrm} deviates from 1 beyond {ATOL_NORM}")
        return cls(n, a)

    @classmethod
    def zero(cls, n: int) -> "StateVector":
        a = np.zeros(1 << n, dtype=np.complex128)
        a[0] = 1.0
        return cls(n, a)

    @classmethod
    def ghz(cls, n: int) -> "StateVector":
        a = np.zeros(1 << n, dtype=np.complex128)
        a[0] = a[-1] = 1.0 / np.sqrt(2.0)
        return cls(n, a)

    @classmethod
    def haar_random(cls, n: int, rng: np.random.Generator) -> "StateVector":
        a = rng.standard_normal(1 << n) + 1j * rng.standard_normal(1 << n)
        return cls(n, a / np.linalg.norm(a))

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def fidelity(self, other: "StateVector") -> float:
        return float(abs(np.vdot(self.amps, other.amps)) ** 2)


# ---------------------------------------------------------------------------
# gate kernels (flat-array level)
# ---------------------------------------------------------------------------

_PAULI = {
    "x": np.array([[0, 1], [1, 0]], dtype=np.complex128),
    "y": np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    "z": np.array([[1, 0], [0, -1]], dtype=np.complex128),
}


def pauli_matrix(axis: str) -> np.ndarray:
    return _PAULI[axis]


def rotation_matrix(axis: str, theta: float) -> np.ndarray:
    """R = exp(-i theta sigma/2) as a dense 2x2."""
    c, s = np.cos(theta / 2.0), np.sin(theta / 2.0)
    return c * np.eye(2, dtype=np.complex128) - 1j * s * _PAULI[axis]


def apply_single_qubit(amps: np.ndarray, n: int, q: int, u: np.ndarray) -> np.ndarray:
    """Apply a 2x2 matrix to qubit q. amps may carry a folded trailing batch."""
    a = amps.reshape(1 << q, 2, -1)
    out = np.empty_like(a)
    out[:, 0] = u[0, 0] * a[:, 0] + u[0, 1] * a[:, 1]
    out[:, 1] = u[1, 0] * a[:, 0] + u[1, 1] * a[:, 1]
    return out.reshape(amps.shape)


def apply_rotation(amps: np.ndarray, n: int, q: int, axis: str, theta: float) -> np.ndarray:
    c, s = np.cos(theta / 2.0), np.sin(theta / 2.0)
    a = amps.reshape(1 << q, 2, -1)
    out = np.empty_like(a)
    if axis == "z":
        out[:, 0] = (c - 1j * s) * a[:, 0]
        out[:, 1] = (c + 1j * s) * a[:, 1]
    elif axis == "x":
        out[:, 0] = c * a[:, 0] - 1j * s * a[:, 1]
        out[:, 1] = -1j * s * a[:, 0] + c * a[:, 1]
    elif axis == "y":
        out[:, 0] = c * a[:, 0] - s * a[:, 1]
        out[:, 1] = s * a[:, 0] + c * a[:, 1]
    else:
        raise ValueError(f"unknown rotation axis {axis!r}")
    return out.reshape(amps.shape)


def apply_pauli(amps: np.ndarray, n: int, q: int, axis: str) -> np.ndarray:
    a = amps.reshape(1 << q, 2, -1)
    out = np.empty_like(a)
    if axis == "z":
        out[:, 0] = a[:, 0]
        out[:, 1] = -a[:, 1]
    elif axis == "x":
        out[:, 0] = a[:, 1]
        out[:, 1] = a[:, 0]
    elif axis == "y":
        out[:, 0] = -1j * a[:, 1]
        out[:, 1] = 1j * a[:, 0]
    else:
        raise ValueError(f"unknown Pauli axis {axis!r}")
    return out.reshape(amps.shape)


def apply_cnot(amps: np.ndarray, n: int, control: int, target: int) -> np.ndarray:
    """CNOT with the stated control; both qubit orders supported."""
    if control == target:
        raise ValueError("control and target coincide")
    qa, qb = (control, target) if control < target else (target, control)
    a = amps.reshape(1 << qa, 2, 1 << (qb - qa - 1), 2, -1)
    out = a.copy()
    if control < target:
        out[:, 1, :, 0], out[:, 1, :, 1] = a[:, 1, :, 1], a[:, 1, :, 0]
    else:
        out[:, 0, :, 1], out[:, 1, :, 1] = a[:, 1, :, 1], a[:, 0, :, 1]
    return out.reshape(amps.shape)


def apply_two_qubit(amps: np.ndarray, n: int, pair: tuple[int, int], u4: np.ndarray) -> np.ndarray:
    """Apply a dense 4x4 unitary to an ordered qubit pair (no batch support)."""
    qa, qb = pair
    t = amps.reshape([2] * n)
    t = np.moveaxis(t, (qa, qb), (0, 1)).reshape(4, -1)
    t = u4 @ t
    t = np.moveaxis(t.reshape([2, 2] + [2] * (n - 2)), (0, 1), (qa, qb))
    return t.reshape(amps.shape)


# ---------------------------------------------------------------------------
# reduced density operators
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ReducedDensityOperator:
    """Reduced density matrix of a qubit region; Hermitian, PSD, unit trace."""

    region: Region
    mat: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.mat, dtype=np.complex128)
        d = 1 << len(self.region)
        if m.shape != (d, d):
            raise InvalidStateError(f"matrix shape {m.shape} does not match region size {d}")
        if np.abs(m - m.conj().T).max() > ATOL_HERMITIAN:
            raise InvalidStateError("density matrix is not Hermitian within tolerance")
        if abs(np.trace(m).real - 1.0) > ATOL_HERMITIAN or abs(np.trace(m).imag) > ATOL_HERMITIAN:
            raise InvalidStateError("density matrix trace deviates from 1")
        object.__setattr__(self, "mat", m)

    def eigenvalues(self) -> np.ndarray:
        evals = np.linalg.eigvalsh(self.mat)
        if evals.min() < -ATOL_EIGENVALUE:
            raise InvalidStateError(f"negative eigenvalue {evals.min()} beyond tolerance")
        return np.clip(evals, 0.0, None)


def region_split(amps: np.ndarray, n: int, region: Region) -> np.ndarray:
    """Reshape the state as a matrix M[region, complement] (a copy)."""
    region.validate(n)
    rest = [q for q in range(n) if q not in set(region.qubits)]
    t = amps.reshape([2] * n)
    t = np.transpose(t, list(region.qubits) + rest)
    return t.reshape(1 << len(region), -1)


def reduced_density(psi: StateVector, region: "Region | Iterable[int]") -> ReducedDensityOperator:
    """Partial trace of |psi><psi| over the complement of ``region``."""
    region = as_region(region)
    m = region_split(psi.amps, psi.n, region)
    return ReducedDensityOperator(region, m @ m.conj().T)


def region_spectrum(amps: np.ndarray, n: int, region: Region) -> np.ndarray:
    """Eigenvalues of the reduced density operator, computed on the smaller
    side of the bipartition (the two sides share their nonzero spectrum)."""
    region = as_region(region)
    region.validate(n)
    if len(region) == n:
        return np.array([float(np.vdot(amps, amps).real)])
    if len(region) > n - len(region):
        region = Region([q for q in range(n) if q not in set(region.qubits)])
    m = region_split(amps, n, region)
    g = m @ m.conj().T
    evals = np.linalg.eigvalsh(g)
    if evals.min() < -ATOL_EIGENVALUE:
        raise InvalidStateError(f"negative eigenvalue {evals.min()} beyond tolerance")
    return np.clip(evals, 0.0, None)


def region_purity(amps: np.ndarray, n: int, region: Region) -> float:
    """Tr rho_A^2 without materializing rho_A on the larger side."""
    region = as_region(region)
    region.validate(n)
    if len(region) == n:
        return float(np.vdot(amps, amps).real ** 2)
    if len(region) > n - len(region):
        region = Region([q for q in range(n) if q not in set(region.qubits)])
    m = region_split(amps, n, region)
    g = m @ m.conj().T
    return float(np.sum(np.abs(g) ** 2))


# ---------------------------------------------------------------------------
# quantum Fourier transform
# ---------------------------------------------------------------------------


def qft(psi: StateVector, inverse: bool = False) -> StateVector:
    """Unitary discrete Fourier transform of the amplitudes.

    Forward convention |j> -> 2**(-n/2) sum_k exp(+2 pi i j k / 2**n) |k>,
    applied directly to integer basis indices (big-endian, so no bit
    reversal appears at this level).
    """
    if inverse:
        out = np.fft.fft(psi.amps, norm="ortho")
    else:
        out = np.fft.ifft(psi.amps, norm="ortho")
    return StateVector(psi.n, out)
