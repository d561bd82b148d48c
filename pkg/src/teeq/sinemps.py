"""Exact matrix-product encoding of sin(k x + phi) and its consequences.

The rank-one structure: reading the binary expansion of the grid point
x_i from the most significant qubit down, each set bit of qubit q adds
k * 2**-(q+1) to the running phase.  A bond-dimension-2 MPS carries the
running phase as the 2-vector (cos t, sin t): the bulk tensor for bit 1
is the plane rotation by k / 2**(q+1) (+ tau), the bit-0 tensor rotates
by tau only, and the final site converts the phase vector into sin(t + .).
A single site's tau parameter is set to phi to encode the phase offset.

The environment tensors obtained by tracing out the leading (largest
length scales) or trailing (finest scales) sites obey a two-term
recursion with closed-form entries: partial sums of cos/sin at dyadic
arguments.  In the n -> infinity limit the single-qubit reduced density
operator has the closed form evaluated by sine_rdo_closed_form; once
k / 2**(q+1) < 1 it converges exponentially (in q) to |+><+|, which is
the content of the quantum Nyquist-Shannon sampling threshold
q_c = ceil(log2(pi / lambda_min)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .encodings import GridFunction, amplitude_encode
from .statevector import InvalidStateError, StateVector


def _plane_rotation(angle: float) -> np.ndarray:
    c, s = np.cos(angle), np.sin(angle)
    return np.array([[c, s], [-s, c]])


@dataclass(frozen=True)
class SineMPS:
    """Bond-dimension-2 MPS whose contraction samples sin(k x + phi)."""

    k: float
    phi: float
    n: int
    phase_site: int = 0

    def __post_init__(self):
        if self.k <= 0:
            raise ValueError("wavenumber k must be positive")
        if self.n < 2:
            raise ValueError("need at least two sites")
        if not 0 <= self.phase_site < self.n:
            raise ValueError("phase site out of range")

    def _tau(self, site: int) -> float:
        return self.phi if site == self.phase_site else 0.0

    def site_tensors(self, site: int) -> tuple[np.ndarray, np.ndarray]:
        """(M0, M1) at a site: row vectors at site 0, 2x2 in the bulk,
        column vectors at site n-1."""
        tau = self._tau(site)
        k = self.k
        if site == 0:
            return (
                np.array([np.cos(tau), np.sin(tau)]),
                np.array([np.cos(k / 2.0 + tau), np.sin(k / 2.0 + tau)]),
            )
        if site == self.n - 1:
            return (
                np.array([np.sin(tau), np.cos(tau)]),
                np.array([np.sin(k / 2.0**self.n + tau), np.cos(k / 2.0**self.n + tau)]),
            )
        return (
            _plane_rotation(tau),
            _plane_rotation(k / 2.0 ** (site + 1) + tau),
        )

    @property
    def tensors(self) -> list[tuple[np.ndarray, np.ndarray]]:
        return [self.site_tensors(s) for s in range(self.n)]

    def contract(self) -> np.ndarray:
        """All 2**n amplitudes (unnormalized), big-endian bit order."""
        m0, m1 = self.site_tensors(0)
        t = np.stack([m0, m1])  # (bits so far, bond)
        for site in range(1, self.n - 1):
            m = np.stack(self.site_tensors(site))  # (sigma, bond, bond)
            t = np.einsum("ik,skj->isj", t, m).reshape(-1, 2)
        last = np.stack(self.site_tensors(self.n - 1))  # (sigma, bond)
        return np.einsum("ik,sk->is", t, last).reshape(-1)


def sine_mps_state(k: float, phi: float, n: int) -> StateVector:
    """Normalized state with amplitudes proportional to sin(k x_i + phi)."""
    amps = SineMPS(k, phi, n).contract()
    norm = np.linalg.norm(amps)
    # rounding leaves O(eps * k) noise per amplitude in the degenerate case
    if norm < 1e-10 * np.sqrt(amps.size):
        raise InvalidStateError(
            f"sin({k} x + {phi}) vanishes on every grid point; nothing to encode"
        )
    return StateVector(n, (amps / norm).astype(np.complex128))


# ---------------------------------------------------------------------------
# environment tensors
# ---------------------------------------------------------------------------


def left_environment(k: float, r: int) -> np.ndarray:
    """Trace over the first r sites by iterating the two-term recursion."""
    if r < 1:
        raise ValueError("r must be at least 1")
    ck, sk = np.cos(k / 2.0), np.sin(k / 2.0)
    env = np.array([[1.0 + ck * ck, ck * sk], [ck * sk, sk * sk]])
    for site in range(1, r):
        rot = _plane_rotation(k / 2.0 ** (site + 1))
        env = env + rot.T @ env @ rot
    return env


def left_environment_closed(k: float, r: int) -> np.ndarray:
    """Closed form: partial sums of cos/sin at arguments k*m/2**(r-1)."""
    m = np.arange(1 << r)
    sc = np.sum(np.cos(k * m / 2.0 ** (r - 1)))
    ss = np.sum(np.sin(k * m / 2.0 ** (r - 1)))
    return 0.5 * np.array([[(1 << r) + sc, ss], [ss, (1 << r) - sc]])


def right_environment(k: float, n: int, r: int) -> np.ndarray:
    """Trace over the last r sites (finest scales) by recursion."""
    if r < 1:
        raise ValueError("r must be at least 1")
    c, s = np.cos(k / 2.0**n), np.sin(k / 2.0**n)
    env = np.array([[s * s, s * c], [s * c, 1.0 + c * c]])
    for j in range(1, r):
        rot = _plane_rotation(k / 2.0 ** (n - j))
        env = env + rot @ env @ rot.T
    return env


def right_environment_closed(k: float, n: int, r: int) -> np.ndarray:
    m = np.arange(1 << r)
    sc = np.sum(np.cos(2.0 * k * m / 2.0**n))
    ss = np.sum(np.sin(2.0 * k * m / 2.0**n))
    return 0.5 * np.array([[(1 << r) - sc, ss], [ss, (1 << r) + sc]])


# ---------------------------------------------------------------------------
# closed-form single-qubit reduced density operator (n -> infinity)
# ---------------------------------------------------------------------------


def sine_rdo_closed_form(k: float, phi: float, q: int) -> np.ndarray:
    """Limit n -> infinity of the reduced density operator of qubit q.

    Orientation follows this package's encoding (bit 1 of qubit q adds
    k / 2**(q+1) to the phase).  The diagonal approaches 1/2 and the
    off-diagonal approaches +1/2 once 2**-(q+1) k < 1, i.e. the operator
    converges exponentially to |+><+| beyond the resolution threshold.
    """
    if q < 1:
        raise ValueError("q must be at least 1")
    if k <= 0:
        raise ValueError("wavenumber k must be positive")
    den = 4.0 * k - 2.0 * np.sin(2.0 * (k + phi)) + 2.0 * np.sin(2.0 * phi)
    if abs(den) < 1e-12 * max(1.0, k):
        raise ZeroDivisionError(
            f"degenerate normalization: 4k - 2 sin(2(k+phi)) + 2 sin(2 phi) ~ 0 at k={k}"
        )
    c = 2.0 ** (-q - 1) * k
    sec = 1.0 / np.cos(c)
    r00 = (2.0 * k - sec * (np.sin(2.0 * k - c + 2.0 * phi) - np.sin(2.0 * phi - c))) / den
    r11 = (2.0 * k - sec * (np.sin(2.0 * k + c + 2.0 * phi) - np.sin(c + 2.0 * phi))) / den
    r01 = (2.0 * k * np.cos(c) - sec * (np.sin(2.0 * (k + phi)) - np.sin(2.0 * phi))) / den
    return np.array([[r00, r01], [r01, r11]])


# ---------------------------------------------------------------------------
# quantum Nyquist-Shannon sampling theorem
# ---------------------------------------------------------------------------


def qnsst_threshold(lambda_min: float) -> int:
    """Resolution threshold q_c = ceil(log2(pi / lambda_min))."""
    if lambda_min <= 0:
        raise ValueError("lambda_min must be positive")
    if lambda_min > 1:
        raise ValueError("lambda_min must not exceed the domain length 1")
    return math.ceil(math.log2(math.pi / lambda_min) - 1e-12)


def qnsst_residual(f: GridFunction, q: int) -> float:
    """||f_n - f_q (x) |+>^(n-q)||: distance of the full encoding from its
    2**q-point subsampling padded with |+> qubits."""
    n = f.n
    if not 1 <= q < n:
        raise ValueError(f"q={q} must satisfy 1 <= q < n={n}")
    psi_n = amplitude_encode(f).amps
    sub = f.values[:: 1 << (n - q)]
    norm = np.linalg.norm(sub)
    if norm == 0.0:
        raise InvalidStateError("subsampled function is identically zero")
    padded = np.kron(sub / norm, np.full(1 << (n - q), 2.0 ** (-(n - q) / 2.0)))
    return float(np.linalg.norm(psi_n - padded))
