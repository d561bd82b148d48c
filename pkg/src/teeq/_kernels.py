"""Low-level circuit execution kernels.

Two interchangeable implementations: a vectorized numpy reference and a
numba-compiled fast path (used automatically when numba imports).  Both
consume the same encoded program: parallel int arrays with one row per
gate, kind 0 = rotation (q1 = qubit, q2 = axis code, pidx = parameter),
kind 1 = CNOT (q1 = control, q2 = target).

The adjoint sweep returns d/d theta_j of 2 Re <w | psi(theta)> for a fixed
cost-side vector w, which equals the exact gradient of any cost whose
Wirtinger derivative d C / d psi* is w; for Pauli rotations this agrees
with the parameter-shift rule identically.
"""

from __future__ import annotations

import numpy as np

from .statevector import apply_cnot, apply_pauli, apply_rotation

AXIS_CODE = {"x": 0, "y": 1, "z": 2}
AXIS_NAME = ("x", "y", "z")

KIND_ROT = 0
KIND_CNOT = 1


def run_forward_numpy(amps, n, kinds, q1s, q2s, pidx, theta):
    for g in range(kinds.size):
        if kinds[g] == KIND_ROT:
            amps = apply_rotation(amps, n, int(q1s[g]), AXIS_NAME[q2s[g]], theta[pidx[g]])
        else:
            amps = apply_cnot(amps, n, int(q1s[g]), int(q2s[g]))
    return amps


def adjoint_gradient_numpy(psi, w, n, kinds, q1s, q2s, pidx, theta, num_params):
    """grad_j = Im <l | sigma_gj | b> peeled gate by gate from the top."""
    b = psi.copy()
    l = w.copy()
    grads = np.zeros(num_params)
    for g in range(kinds.size - 1, -1, -1):
        if kinds[g] == KIND_ROT:
            q, axis, j = int(q1s[g]), AXIS_NAME[q2s[g]], int(pidx[g])
            grads[j] = np.vdot(l, apply_pauli(b, n, q, axis)).imag
            b = apply_rotation(b, n, q, axis, -theta[j])
            l = apply_rotation(l, n, q, axis, -theta[j])
        else:
            c, t = int(q1s[g]), int(q2s[g])
            b = apply_cnot(b, n, c, t)
            l = apply_cnot(l, n, c, t)
    return grads


try:  # pragma: no cover - exercised indirectly
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

if HAVE_NUMBA:

    @njit(cache=True)
    def _rot_inplace(amps, n, q, axis, theta):
        stride = 1 << (n - 1 - q)
        c = np.cos(theta / 2.0)
        s = np.sin(theta / 2.0)
        dim = amps.size
        base = 0
        while base < dim:
            for j in range(base, base + stride):
                a0 = amps[j]
                a1 = amps[j + stride]
                if axis == 0:
                    amps[j] = c * a0 - 1j * s * a1
                    amps[j + stride] = -1j * s * a0 + c * a1
                elif axis == 1:
                    amps[j] = c * a0 - s * a1
                    amps[j + stride] = s * a0 + c * a1
                else:
                    amps[j] = (c - 1j * s) * a0
                    amps[j + stride] = (c + 1j * s) * a1
            base += 2 * stride
        return

    @njit(cache=True)
    def _cnot_inplace(amps, n, ctrl, tgt):
        sc = 1 << (n - 1 - ctrl)
        st = 1 << (n - 1 - tgt)
        for i in range(amps.size):
            if (i & sc) != 0 and (i & st) == 0:
                j = i | st
                tmp = amps[i]
                amps[i] = amps[j]
                amps[j] = tmp
        return

    @njit(cache=True)
    def _pauli_overlap(l, b, n, q, axis):
        """<l | sigma_q^axis | b> without materializing sigma b."""
        stride = 1 << (n - 1 - q)
        dim = b.size
        acc = 0.0 + 0.0j
        base = 0
        while base < dim:
            for j in range(base, base + stride):
                l0 = np.conj(l[j])
                l1 = np.conj(l[j + stride])
                if axis == 0:
                    acc += l0 * b[j + stride] + l1 * b[j]
                elif axis == 1:
                    acc += -1j * l0 * b[j + stride] + 1j * l1 * b[j]
                else:
                    acc += l0 * b[j] - l1 * b[j + stride]
            base += 2 * stride
        return acc

    @njit(cache=True)
    def _forward_nb(amps, n, kinds, q1s, q2s, pidx, theta):
        for g in range(kinds.size):
            if kinds[g] == KIND_ROT:
                _rot_inplace(amps, n, q1s[g], q2s[g], theta[pidx[g]])
            else:
                _cnot_inplace(amps, n, q1s[g], q2s[g])
        return

    @njit(cache=True)
    def _adjoint_nb(b, l, n, kinds, q1s, q2s, pidx, theta, grads):
        for g in range(kinds.size - 1, -1, -1):
            if kinds[g] == KIND_ROT:
                q = q1s[g]
                axis = q2s[g]
                j = pidx[g]
                grads[j] = _pauli_overlap(l, b, n, q, axis).imag
                _rot_inplace(b, n, q, axis, -theta[j])
                _rot_inplace(l, n, q, axis, -theta[j])
            else:
                _cnot_inplace(b, n, q1s[g], q2s[g])
                _cnot_inplace(l, n, q1s[g], q2s[g])
        return


def run_forward(amps, n, program, theta):
    """Apply the encoded circuit; 1D states take the fast path when available."""
    kinds, q1s, q2s, pidx = program
    if HAVE_NUMBA and amps.ndim == 1:
        out = np.ascontiguousarray(amps, dtype=np.complex128)
        if out is amps:
            out = amps.copy()
        _forward_nb(out, n, kinds, q1s, q2s, pidx, np.asarray(theta, dtype=np.float64))
        return out
    return run_forward_numpy(amps, n, kinds, q1s, q2s, pidx, theta)


def adjoint_gradient(psi, w, n, program, theta, num_params):
    """Gradient of 2 Re <w | psi(theta)> with respect to every parameter."""
    kinds, q1s, q2s, pidx = program
    theta = np.asarray(theta, dtype=np.float64)
    if HAVE_NUMBA:
        b = np.ascontiguousarray(psi, dtype=np.complex128).copy()
        l = np.ascontiguousarray(w, dtype=np.complex128).copy()
        grads = np.zeros(num_params)
        _adjoint_nb(b, l, n, kinds, q1s, q2s, pidx, theta, grads)
        return grads
    return adjoint_gradient_numpy(psi, w, n, kinds, q1s, q2s, pidx, theta, num_params)
