"""Cost functions, the TEE penalty, and their state-side derivatives.

Every cost exposes two things: its value on a state, and the cost-side
vector w = dC/dpsi* such that dC = 2 Re <w | dpsi>.  The adjoint sweep in
the gradient module turns any such w into the full parameter gradient in
one backward pass; for Pauli-rotation circuits the result coincides with
the parameter-shift rule exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..hamiltonians import Hamiltonian, expectation
from ..statevector import StateVector
from .regions import OmegaSet

COST_KINDS = ("infidelity", "energy", "tee_only")


@dataclass(frozen=True)
class RegularizerConfig:
    """Annealed multiplier gamma(s) = gamma0 * beta**s on the TEE penalty."""

    omega: OmegaSet
    gamma0: float
    beta: float

    def __post_init__(self):
        if self.gamma0 < 0:
            raise ValueError("gamma0 must be nonnegative")
        if not 0.0 < self.beta <= 1.0:
            raise ValueError("beta must lie in (0, 1]")

    def gamma(self, step: int) -> float:
        return self.gamma0 * self.beta**step


@dataclass(frozen=True)
class CostSpec:
    """Bare cost: state infidelity against a reference, an energy
    expectation, or nothing (penalty-only optimization)."""

    kind: str
    reference: StateVector | None = None
    hamiltonian: Hamiltonian | None = None
    _h_dense: np.ndarray | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self.kind not in COST_KINDS:
            raise ValueError(f"unknown cost kind {self.kind!r}; expected one of {COST_KINDS}")
        if self.kind == "infidelity":
            if self.reference is None:
                raise ValueError("infidelity cost needs a reference state")
            if abs(self.reference.norm() - 1.0) > 1e-10:
                raise ValueError("reference state must be normalized")
        if self.kind == "energy":
            if self.hamiltonian is None:
                raise ValueError("energy cost needs a Hamiltonian")
            if self.hamiltonian.n <= 12:
                object.__setattr__(self, "_h_dense", self.hamiltonian.to_dense())

    @property
    def n(self) -> int | None:
        if self.kind == "infidelity":
            return self.reference.n
        if self.kind == "energy":
            return self.hamiltonian.n
        return None

    @classmethod
    def infidelity(cls, reference: StateVector) -> "CostSpec":
        return cls("infidelity", reference=reference)

    @classmethod
    def energy(cls, hamiltonian: Hamiltonian) -> "CostSpec":
        return cls("energy", hamiltonian=hamiltonian)

    @classmethod
    def tee_only(cls) -> "CostSpec":
        return cls("tee_only")


def bare_cost(psi: StateVector, spec: CostSpec) -> float:
    if spec.kind == "infidelity":
        return 1.0 - float(abs(np.vdot(spec.reference.amps, psi.amps)) ** 2)
    if spec.kind == "energy":
        if spec._h_dense is not None:
            return float(np.vdot(psi.amps, spec._h_dense @ psi.amps).real)
        return expectation(psi, spec.hamiltonian)
    return 0.0


def bare_cost_lambda(amps: np.ndarray, spec: CostSpec) -> np.ndarray | None:
    """w = dC/dpsi* of the bare cost; None when the cost is constant."""
    if spec.kind == "infidelity":
        ref = spec.reference.amps
        return -np.vdot(ref, amps) * ref
    if spec.kind == "energy":
        if spec._h_dense is not None:
            return spec._h_dense @ amps
        return spec.hamiltonian.apply(amps)
    return None


# ---------------------------------------------------------------------------
# TEE penalty
# ---------------------------------------------------------------------------


def _region_gram(amps: np.ndarray, n: int, qubits: tuple[int, ...]):
    """(M, G) with M the region-vs-rest reshape and G the smaller-side Gram."""
    rest = [q for q in range(n) if q not in set(qubits)]
    t = amps.reshape([2] * n)
    m = np.transpose(t, list(qubits) + rest).reshape(1 << len(qubits), -1)
    if m.shape[0] <= m.shape[1]:
        return m, m @ m.conj().T, list(qubits) + rest
    return m, m.conj().T @ m, list(qubits) + rest


def _purities(amps: np.ndarray, n: int, omega: OmegaSet) -> dict[tuple[int, ...], float]:
    out: dict[tuple[int, ...], float] = {}
    for entries in omega.signed_regions:
        for qubits, _ in entries:
            if qubits not in out:
                _, g, _ = _region_gram(amps, n, qubits)
                out[qubits] = float(np.sum(np.abs(g) ** 2))
    return out


def tee2_values(psi: StateVector, omega: OmegaSet) -> np.ndarray:
    """TEE of order 2 for every triplet in the set."""
    pur = _purities(psi.amps, psi.n, omega)
    vals = []
    for entries in omega.signed_regions:
        vals.append(sum(-sign * np.log(pur[qubits]) for qubits, sign in entries))
    return np.asarray(vals)


def c_tee(psi: StateVector, omega: OmegaSet) -> float:
    """Mean absolute order-2 TEE over the triplet set; always >= 0."""
    return float(np.mean(np.abs(tee2_values(psi, omega))))


def c_tee_with_lambda(psi: StateVector, omega: OmegaSet) -> tuple[float, np.ndarray]:
    """Penalty value and its cost-side vector w = dC_TEE/dpsi*.

    d(Tr rho_X^2) = 4 Re <phi_X | dpsi> with phi_X = (rho_X x I) psi, so
    each region contributes -2 phi_X / purity_X to the derivative of
    S^(2)_X; triplet signs and the subgradient sign of |TEE| (0 at 0)
    assemble the total.  phi_X is built from the small-side Gram, never
    from a dense rho_X.
    """
    amps, n = psi.amps, psi.n
    grams: dict[tuple[int, ...], tuple] = {}
    pur: dict[tuple[int, ...], float] = {}
    for entries in omega.signed_regions:
        for qubits, _ in entries:
            if qubits not in grams:
                m, g, perm = _region_gram(amps, n, qubits)
                grams[qubits] = (m, g, perm)
                pur[qubits] = float(np.sum(np.abs(g) ** 2))

    tees = []
    for entries in omega.signed_regions:
        tees.append(sum(-sign * np.log(pur[qubits]) for qubits, sign in entries))
    tees = np.asarray(tees)
    value = float(np.mean(np.abs(tees)))

    # accumulate per-region weights u_X = sum_t sign(tee_t) * s_X * (-2/P_X) / |Omega|
    weights: dict[tuple[int, ...], float] = {}
    for tee_t, entries in zip(tees, omega.signed_regions):
        sgn = np.sign(tee_t)
        if sgn == 0.0:
            continue
        for qubits, sign in entries:
            weights[qubits] = weights.get(qubits, 0.0) + sgn * sign * (-2.0) / (
                pur[qubits] * len(omega)
            )

    w = np.zeros_like(amps)
    for qubits, u in weights.items():
        m, g, perm = grams[qubits]
        phi = g @ m if g.shape[0] == m.shape[0] else m @ g
        inv = np.argsort(perm)
        w += u * np.transpose(phi.reshape([2] * n), inv).reshape(-1)
    return value, w
