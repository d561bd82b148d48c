"""Brickwork ansatz circuits: layered single-qubit rotations plus CNOT bricks.

Layer pairing (periodic chain, qubits 0-indexed): odd layers d=1,3,...
pair (0,1), (2,3), ..., even layers pair (1,2), (3,4), ..., (n-1,0).
Every qubit receives one parameterized rotation per layer; for odd n the
one unpaired qubit of a layer gets its rotation but no CNOT.  The CNOT
control is the lower qubit index of its pair.  Parameters are indexed by
(layer, qubit): theta[(d-1)*n + q].
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Literal, Sequence

import numpy as np

from . import _kernels
from .statevector import StateVector

Axis = Literal["x", "y", "z"]

DENSE_QUBIT_CAP = 10  # dense-unitary utilities refuse above this size


def layer_pairs(n: int, d: int) -> list[tuple[int, int]]:
    """CNOT pairs of layer d (1-based); alternating brick offsets, periodic."""
    if d < 1:
        raise ValueError("layer index starts at 1")
    start = 0 if d % 2 == 1 else 1
    return [((start + 2 * i) % n, (start + 2 * i + 1) % n) for i in range(n // 2)]


@dataclass(frozen=True)
class RotationGateSpec:
    """One parameterized rotation: exp(-i theta/2 sigma^axis) on a qubit of a layer."""

    depth: int
    qubit: int
    axis: str
    param_index: int


@dataclass(frozen=True)
class BrickworkAnsatz:
    """Circuit description; the rotation axes are fixed at construction."""

    n: int
    dtot: int
    axes: np.ndarray  # shape (dtot, n), entries 'x' | 'y' | 'z'

    def __post_init__(self):
        axes = np.asarray(self.axes, dtype="<U1")
        if axes.shape != (self.dtot, self.n):
            raise ValueError(f"axes shape {axes.shape} does not match (dtot, n)")
        if not np.isin(axes, ("x", "y", "z")).all():
            raise ValueError("axes must be 'x', 'y' or 'z'")
        object.__setattr__(self, "axes", axes)

    @classmethod
    def with_random_axes(cls, n: int, dtot: int, rng: np.random.Generator) -> "BrickworkAnsatz":
        axes = rng.choice(np.array(["x", "y", "z"]), size=(dtot, n))
        return cls(n, dtot, axes)

    @classmethod
    def with_fixed_axis(cls, n: int, dtot: int, axis: Axis) -> "BrickworkAnsatz":
        return cls(n, dtot, np.full((dtot, n), axis, dtype="<U1"))

    @property
    def num_parameters(self) -> int:
        return self.n * self.dtot

    def param_index(self, depth: int, qubit: int) -> int:
        return (depth - 1) * self.n + qubit

    def gates(self) -> list[RotationGateSpec]:
        return [
            RotationGateSpec(d, q, str(self.axes[d - 1, q]), self.param_index(d, q))
            for d in range(1, self.dtot + 1)
            for q in range(self.n)
        ]

    def operations(self) -> list[tuple]:
        """Full gate sequence in application order.

        Entries are ("rot", qubit, axis, param_index) and ("cnot", control,
        target); per layer all rotations come first, then the layer's CNOTs.
        """
        ops: list[tuple] = []
        for d in range(1, self.dtot + 1):
            for q in range(self.n):
                ops.append(("rot", q, str(self.axes[d - 1, q]), self.param_index(d, q)))
            for a, b in layer_pairs(self.n, d):
                ops.append(("cnot", min(a, b), max(a, b)))
        return ops

    @cached_property
    def program(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """Gate sequence encoded as parallel int arrays for the kernels."""
        kinds, q1s, q2s, pidx = [], [], [], []
        for op in self.operations():
            if op[0] == "rot":
                kinds.append(_kernels.KIND_ROT)
                q1s.append(op[1])
                q2s.append(_kernels.AXIS_CODE[op[2]])
                pidx.append(op[3])
            else:
                kinds.append(_kernels.KIND_CNOT)
                q1s.append(op[1])
                q2s.append(op[2])
                pidx.append(-1)
        to = lambda xs: np.asarray(xs, dtype=np.int64)
        return to(kinds), to(q1s), to(q2s), to(pidx)


def _check_theta(ansatz: BrickworkAnsatz, theta: np.ndarray) -> np.ndarray:
    theta = np.asarray(theta, dtype=np.float64).ravel()
    if theta.size != ansatz.num_parameters:
        raise ValueError(
            f"parameter count {theta.size} does not match n*Dtot = {ansatz.num_parameters}"
        )
    return theta


def apply_circuit(amps: np.ndarray, ansatz: BrickworkAnsatz, theta: np.ndarray) -> np.ndarray:
    """Flat-array circuit application; supports a folded trailing batch."""
    return _kernels.run_forward(amps, ansatz.n, ansatz.program, theta)


def apply_ansatz(ansatz: BrickworkAnsatz, theta: Sequence[float], psi0: StateVector) -> StateVector:
    """Output state U(theta) |psi0>."""
    if psi0.n != ansatz.n:
        raise ValueError(f"state has {psi0.n} qubits, ansatz has {ansatz.n}")
    theta = _check_theta(ansatz, theta)
    return StateVector(ansatz.n, apply_circuit(psi0.amps.copy(), ansatz, theta))


def dense_unitary(ansatz: BrickworkAnsatz, theta: Sequence[float]) -> np.ndarray:
    """Full 2^n x 2^n matrix of the circuit (n <= DENSE_QUBIT_CAP)."""
    if ansatz.n > DENSE_QUBIT_CAP:
        raise ValueError(f"dense unitary limited to n <= {DENSE_QUBIT_CAP}")
    theta = _check_theta(ansatz, theta)
    dim = 1 << ansatz.n
    return apply_circuit(np.eye(dim, dtype=np.complex128), ansatz, theta)


def circuit_operator_distance(
    ansatz: BrickworkAnsatz, theta: Sequence[float], theta_tilde: Sequence[float]
) -> float:
    """Spectral norm ||U(theta) - U(theta_tilde)|| via dense SVD."""
    u = dense_unitary(ansatz, theta)
    v = dense_unitary(ansatz, theta_tilde)
    return float(np.linalg.norm(u - v, ord=2))


def rotation_gate_distance(delta: float) -> float:
    """||R(theta + delta) - R(theta)|| = 2 |sin(delta/4)| for any Pauli rotation."""
    return float(2.0 * abs(np.sin(delta / 4.0)))


def haar_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary from a Ginibre matrix and phase-fixed QR."""
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def haar_su4_layer(
    n: int, parity: int, rng: np.random.Generator
) -> list[tuple[tuple[int, int], np.ndarray]]:
    """Haar-random 4x4 unitaries for one brick layer.

    ``parity`` is the layer-index parity: 1 places bricks at (0,1), (2,3),
    ..., 0 at (1,2), (3,4), ...  Returns (pair, unitary) in pair order.
    """
    if n < 2:
        raise ValueError("need at least two qubits")
    d = 1 if parity % 2 == 1 else 2
    return [(pair, haar_unitary(4, rng)) for pair in layer_pairs(n, d)]


def fourth_root_y_state(n: int) -> StateVector:
    """Product initial state (Y^(1/4) |0>)^(x n).

    The principal fourth root maps the +1 eigenvalue of sigma^y to 1 and
    the -1 eigenvalue to exp(i pi / 4).
    """
    evals, vecs = np.linalg.eigh(np.array([[0, -1j], [1j, 0]]))
    roots = np.where(evals > 0, 1.0, np.exp(1j * np.pi / 4.0))
    y4 = (vecs * roots) @ vecs.conj().T
    v = y4[:, 0]
    amps = np.array([1.0 + 0j])
    for _ in range(n):
        amps = np.kron(amps, v)
    return StateVector(n, amps)
