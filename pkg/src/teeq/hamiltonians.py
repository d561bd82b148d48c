"""Pauli-string Hamiltonians and exact diagonalization baselines.

Sign conventions: standard Pauli matrices with Z|0> = +|0>, Z|1> = -|1>.
The antiferromagnetic nearest-neighbour Heisenberg benchmark on an open
Lx x Ly square lattice is

    H = J sum_<ij> (X_i X_j + Y_i Y_j + Z_i Z_j) + h sum_i Z_i

with row-major site-to-qubit indexing, so the periodic 1D brickwork
ansatz snakes through the 2D lattice and is geometrically incommensurate
with the bond structure.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .statevector import StateVector, apply_pauli

_PAULI_AXES = ("X", "Y", "Z")


@dataclass(frozen=True)
class PauliString:
    """coefficient * product of single-qubit Paulis; identity factors omitted."""

    coefficient: float
    factors: tuple[tuple[int, str], ...]

    def __init__(self, coefficient: float, factors):
        items = tuple(sorted((int(q), str(p).upper()) for q, p in dict(factors).items()))
        for q, p in items:
            if q < 0:
                raise ValueError(f"negative qubit index {q}")
            if p not in _PAULI_AXES:
                raise ValueError(f"unknown Pauli factor {p!r}")
        object.__setattr__(self, "coefficient", float(coefficient))
        object.__setattr__(self, "factors", items)

    def apply(self, amps: np.ndarray, n: int) -> np.ndarray:
        out = amps
        for q, p in self.factors:
            out = apply_pauli(out, n, q, p.lower())
        return self.coefficient * out

    def word(self, n: int) -> str:
        ops = dict(self.factors)
        return "".join(ops.get(q, "I") for q in range(n))


@dataclass(frozen=True)
class Hamiltonian:
    """Real-coefficient (Hermitian) sum of Pauli strings on n qubits."""

    n: int
    terms: tuple[PauliString, ...]

    def __post_init__(self):
        for t in self.terms:
            if t.factors and t.factors[-1][0] >= self.n:
                raise ValueError(f"term {t} addresses qubits beyond n={self.n}")
        object.__setattr__(self, "terms", tuple(self.terms))

    def apply(self, amps: np.ndarray) -> np.ndarray:
        out = np.zeros_like(amps)
        for t in self.terms:
            out += t.apply(amps, self.n)
        return out

    def to_dense(self) -> np.ndarray:
        if self.n > 14:
            raise ValueError(f"dense matrix limited to n <= 14, got {self.n}")
        dim = 1 << self.n
        return self.apply(np.eye(dim, dtype=np.complex128))

    def format_terms(self) -> str:
        """Audit listing, one '<coefficient>  <Pauli word>' line per term."""
        return "\n".join(f"{t.coefficient:+.12g}  {t.word(self.n)}" for t in self.terms)


@dataclass(frozen=True)
class LatticeSpec:
    """Open-boundary rectangular lattice, row-major site indexing."""

    lx: int
    ly: int

    def __post_init__(self):
        if self.lx < 1 or self.ly < 1:
            raise ValueError("lattice dimensions must be positive")

    @property
    def n(self) -> int:
        return self.lx * self.ly

    def site(self, row: int, col: int) -> int:
        return row * self.lx + col

    def bonds(self) -> list[tuple[int, int]]:
        out = []
        for r in range(self.ly):
            for c in range(self.lx):
                if c + 1 < self.lx:
                    out.append((self.site(r, c), self.site(r, c + 1)))
                if r + 1 < self.ly:
                    out.append((self.site(r, c), self.site(r + 1, c)))
        return out

    def coords(self, site: int) -> tuple[int, int]:
        return divmod(site, self.lx)[0], site % self.lx


def build_af2dnnh(lattice: LatticeSpec, j: float, h: float) -> Hamiltonian:
    """Heisenberg exchange J on every nearest-neighbour bond plus a Z field h."""
    if lattice.lx < 2 and lattice.ly < 2:
        raise ValueError("lattice is degenerate: no bonds in either direction")
    terms = []
    if j != 0.0:
        for a, b in lattice.bonds():
            for p in _PAULI_AXES:
                terms.append(PauliString(j, {a: p, b: p}))
    if h != 0.0:
        for q in range(lattice.n):
            terms.append(PauliString(h, {q: "Z"}))
    return Hamiltonian(lattice.n, tuple(terms))


def expectation(psi: StateVector, hamiltonian: Hamiltonian) -> float:
    """<psi|H|psi>, applied term by term without the dense matrix."""
    if psi.n != hamiltonian.n:
        raise ValueError(f"state has {psi.n} qubits, Hamiltonian has {hamiltonian.n}")
    val = np.vdot(psi.amps, hamiltonian.apply(psi.amps))
    return float(val.real)


def exact_ground_energy(hamiltonian: Hamiltonian) -> tuple[float, StateVector]:
    """Lowest eigenvalue and eigenvector from dense diagonalization."""
    mat = hamiltonian.to_dense()
    evals, evecs = np.linalg.eigh(mat)
    return float(evals[0]), StateVector(hamiltonian.n, evecs[:, 0])
