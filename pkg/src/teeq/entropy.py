"""Renyi entropies, mutual information and topological entanglement entropy.

Entropies are in nats throughout (natural logarithm).  The tripartite
information I2(A,B) + I2(A,C) - I2(A,BC) is fully symmetric under
permutations of A, B, C; negative values signal scrambling while zero or
positive values signal sparse, locally structured states.
"""

from __future__ import annotations

from typing import Iterable

import numpy as np

from .statevector import (
    InvalidStateError,
    ReducedDensityOperator,
    Region,
    StateVector,
    as_region,
    region_purity,
    region_spectrum,
)

RANK_RTOL = 1e-12  # eigenvalues above RANK_RTOL * max count toward the Hartley rank


def _entropy_from_spectrum(evals: np.ndarray, alpha: float) -> float:
    evals = np.clip(evals, 0.0, None)
    if alpha == 0:
        cutoff = RANK_RTOL * evals.max()
        rank = int(np.count_nonzero(evals > cutoff))
        return float(np.log(rank))
    if alpha == 1:
        lam = evals[evals > 0.0]
        return float(-np.sum(lam * np.log(lam)))
    if alpha < 0:
        raise ValueError("Renyi order must be nonnegative")
    return float(np.log(np.sum(evals**alpha)) / (1.0 - alpha))


def renyi_entropy(rho: ReducedDensityOperator | np.ndarray, alpha: float) -> float:
    """Renyi entropy S^(alpha) = ln(Tr rho^alpha) / (1 - alpha) in nats.

    alpha=0 is the Hartley entropy ln(rank), alpha=1 the von Neumann limit
    with 0 ln 0 = 0, and alpha=2 the collision entropy -ln Tr rho^2
    (evaluated directly from the purity, no diagonalization).
    """
    if alpha == 2:
        mat = rho.mat if isinstance(rho, ReducedDensityOperator) else np.asarray(rho)
        return float(-np.log(np.sum(np.abs(mat) ** 2)))
    if isinstance(rho, ReducedDensityOperator):
        evals = rho.eigenvalues()
    else:
        mat = np.asarray(rho, dtype=np.complex128)
        evals = np.linalg.eigvalsh(mat)
        if evals.min() < -1e-10:
            raise InvalidStateError(f"negative eigenvalue {evals.min()} beyond tolerance")
    return _entropy_from_spectrum(evals, alpha)


def entropy_of_region(psi: StateVector, region: Region | Iterable[int], alpha: float) -> float:
    """S^(alpha) of a subregion of a pure state.

    Works on the smaller side of the bipartition, so regions larger than
    n/2 cost no more than their complement.
    """
    region = as_region(region)
    if alpha == 2:
        return float(-np.log(region_purity(psi.amps, psi.n, region)))
    evals = region_spectrum(psi.amps, psi.n, region)
    return _entropy_from_spectrum(evals, alpha)


def mutual_information(
    psi: StateVector,
    a: Region | Iterable[int],
    b: Region | Iterable[int],
    alpha: float,
) -> float:
    """I2(A,B) = S(A) + S(B) - S(AB) for disjoint regions."""
    a, b = as_region(a), as_region(b)
    if not a.isdisjoint(b):
        raise ValueError(f"regions {a.qubits} and {b.qubits} overlap")
    return (
        entropy_of_region(psi, a, alpha)
        + entropy_of_region(psi, b, alpha)
        - entropy_of_region(psi, a.union(b), alpha)
    )


def tee(
    psi: StateVector,
    a: Region | Iterable[int],
    b: Region | Iterable[int],
    c: Region | Iterable[int],
    alpha: float,
) -> float:
    """Topological entanglement entropy I2(A,B) + I2(A,C) - I2(A,BC)."""
    a, b, c = as_region(a), as_region(b), as_region(c)
    for x, y in ((a, b), (a, c), (b, c)):
        if not x.isdisjoint(y):
            raise ValueError(f"regions {x.qubits} and {y.qubits} overlap")
    return (
        mutual_information(psi, a, b, alpha)
        + mutual_information(psi, a, c, alpha)
        - mutual_information(psi, a, b.union(c), alpha)
    )


def contiguous_quarters(n: int) -> tuple[Region, Region, Region]:
    """Three contiguous blocks of size floor(n/4) starting at qubit 0."""
    m = n // 4
    if m < 1:
        raise ValueError(f"n={n} is too small for contiguous quarter regions")
    return (
        Region(range(0, m)),
        Region(range(m, 2 * m)),
        Region(range(2 * m, 3 * m)),
    )


def tee_contiguous(psi: StateVector, alpha: float) -> float:
    """TEE over contiguous equal quarters A=[0,m), B=[m,2m), C=[2m,3m), m=floor(n/4)."""
    a, b, c = contiguous_quarters(psi.n)
    return tee(psi, a, b, c, alpha)


def nn_mutual_information_mean(psi: StateVector, alpha: float = 2) -> float:
    """Average nearest-neighbour mutual information (1/n) sum_i I(i, i+1), periodic."""
    n = psi.n
    total = 0.0
    for i in range(n):
        total += mutual_information(psi, [i], [(i + 1) % n], alpha)
    return total / n
