"""Brute-force verification oracles.

The multi-controlled-U oracle is the 2^n x 2^n identity except for the 2x2
block coupling the two basis states whose control bits (wirelines 1..n-1)
are all ones: indices 2^(n-1)-1 (target 0) and 2^n-1 (target 1).

Circuit unitaries are built by applying each gate to an identity matrix via
tensor reshapes -- exact, dense, and fast enough for the widths where a full
unitary fits (capped at 12 qubits; beyond that, use apply_statevector, which
handles up to 22 qubits).

Verification is two-tier: the unitary tier compares full matrices up to
global phase; the statevector tier (for wide circuits) compares the circuit's
action on seeded probe states against the oracle's action, recovering the
phase from the first probe.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circuit import Circuit
from .gate_algebra import gate_unitary_1q
from .linalg import equal_up_to_global_phase

UNITARY_WIDTH_CAP = 12
STATEVECTOR_WIDTH_CAP = 22


def mcu_oracle(u: np.ndarray, n: int) -> np.ndarray:
    """(n-1)-controlled u on target wireline n, as a dense matrix."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > UNITARY_WIDTH_CAP:
        raise ValueError(f"oracle width {n} exceeds cap {UNITARY_WIDTH_CAP}")
    u = np.asarray(u, dtype=complex)
    if n == 1:
        return u.copy()
    dim = 1 << n
    i0 = (1 << (n - 1)) - 1
    i1 = dim - 1
    out = np.eye(dim, dtype=complex)
    out[i0, i0] = u[0, 0]
    out[i0, i1] = u[0, 1]
    out[i1, i0] = u[1, 0]
    out[i1, i1] = u[1, 1]
    return out


def _apply_gate_tensor(tensor: np.ndarray, g, n: int) -> np.ndarray:
    """Apply one gate to an array whose first n axes are qubit axes
    (qubit k lives on axis n-k); any trailing axes are batch dimensions."""
    if g.kind == "SWAP":
        return np.swapaxes(tensor, n - g.control, n - g.target)
    mat = gate_unitary_1q(g.kind, g.params)
    if g.control is None:
        ax = n - g.target
        t = np.tensordot(mat, tensor, axes=([1], [ax]))
        return np.moveaxis(t, 0, ax)
    ax_c, ax_t = n - g.control, n - g.target
    t = np.moveaxis(tensor, ax_c, 0)
    ax_sub = (ax_t + 1 if ax_t < ax_c else ax_t) - 1
    sub = np.tensordot(mat, t[1], axes=([1], [ax_sub]))
    t = t.copy()
    t[1] = np.moveaxis(sub, 0, ax_sub)
    return np.moveaxis(t, 0, ax_c)


def circuit_unitary(circ: Circuit, width_cap: int = UNITARY_WIDTH_CAP) -> np.ndarray:
    """Full unitary of the circuit (time order = left-to-right gate list,
    so the result is G_last @ ... @ G_first)."""
    n = circ.n
    if n > width_cap:
        raise ValueError(
            f"circuit width {n} exceeds unitary cap {width_cap}; "
            "use apply_statevector for wide circuits"
        )
    dim = 1 << n
    tensor = np.eye(dim, dtype=complex).reshape((2,) * n + (dim,))
    for g in circ.gates:
        tensor = _apply_gate_tensor(tensor, g, n)
    return tensor.reshape(dim, dim)


def apply_statevector(circ: Circuit, psi: np.ndarray) -> np.ndarray:
    """Apply the circuit to a statevector of length 2^n (n <= 22)."""
    n = circ.n
    if n > STATEVECTOR_WIDTH_CAP:
        raise ValueError(f"width {n} exceeds statevector cap {STATEVECTOR_WIDTH_CAP}")
    psi = np.asarray(psi, dtype=complex)
    if psi.shape != (1 << n,):
        raise ValueError(f"statevector must have length {1 << n}")
    tensor = psi.copy().reshape((2,) * n)
    for g in circ.gates:
        tensor = _apply_gate_tensor(tensor, g, n)
    return tensor.reshape(-1)


def oracle_apply(u: np.ndarray, n: int, psi: np.ndarray) -> np.ndarray:
    """mcu_oracle(u, n) @ psi without materializing the matrix."""
    out = np.asarray(psi, dtype=complex).copy()
    i0 = (1 << (n - 1)) - 1
    i1 = (1 << n) - 1
    a0, a1 = out[i0], out[i1]
    out[i0] = u[0, 0] * a0 + u[0, 1] * a1
    out[i1] = u[1, 0] * a0 + u[1, 1] * a1
    return out


@dataclass(frozen=True)
class VerifyResult:
    ok: bool
    max_deviation: float
    global_phase: float
    tier: str


def verify_mcu(
    circ: Circuit,
    u: np.ndarray,
    tol: float = 1e-9,
    probes: int = 12,
    seed: int = 0,
) -> VerifyResult:
    """Check the circuit against the (n-1)-controlled-u oracle.

    Tier 1 (n <= 12): full unitary comparison up to global phase.
    Tier 2 (wider): seeded probe states -- all-ones-controls basis states,
    random basis states, and one dense random state -- compared against the
    oracle's action, with the global phase recovered from the first probe.
    """
    n = circ.n
    if n <= UNITARY_WIDTH_CAP:
        got = circuit_unitary(circ)
        ok, phi, dev = equal_up_to_global_phase(got, mcu_oracle(u, n), tol)
        return VerifyResult(ok, dev, phi, "unitary")

    rng = np.random.default_rng(seed)
    dim = 1 << n
    basis = [(1 << (n - 1)) - 1, dim - 1, 0]
    basis += [int(v) for v in rng.integers(0, dim, size=max(probes - 4, 1))]
    states = []
    for idx in basis:
        e = np.zeros(dim, dtype=complex)
        e[idx] = 1.0
        states.append(e)
    dense = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    states.append(dense / np.linalg.norm(dense))

    phase = None
    max_dev = 0.0
    for psi in states:
        got = apply_statevector(circ, psi)
        want = oracle_apply(u, n, psi)
        if phase is None:
            k = int(np.argmax(np.abs(want)))
            phase = float(np.angle(got[k] / want[k]))
        max_dev = max(max_dev, float(np.max(np.abs(got - np.exp(1j * phase) * want))))
    return VerifyResult(max_dev <= tol, max_dev, float(phase), "statevector")
