"""Single-qubit gate algebra: matrices, ZYZ/ABC decompositions, principal
roots, and the battery of algebraic identities the synthesis relies on.

Conventions (used consistently across the package):

    Rz(g) = diag(e^{-ig/2}, e^{+ig/2})          P(g) = diag(1, e^{ig})
    Ry(t) = [[cos t/2, -sin t/2], [sin t/2, cos t/2]]
    U2(d, a, t, b) = e^{id} Rz(a) Ry(t) Rz(b)

The ZYZ angle ranges are t in [0, pi] and d in (-pi, pi].  For diagonal
input the decomposition puts everything in alpha (t = 0, b = 0); for
antidiagonal input t = pi and alpha = 0.
"""

from __future__ import annotations

import numpy as np

from .linalg import eig2, kron

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
S = np.array([[1, 0], [0, 1j]], dtype=complex)
T = np.array([[1, 0], [0, np.exp(1j * np.pi / 4)]], dtype=complex)
SX = 0.5 * np.array([[1 + 1j, 1 - 1j], [1 - 1j, 1 + 1j]], dtype=complex)

#: gates addressable by name from the CLI
NAMED_GATES = {"X": X, "Z": Z, "H": H, "S": S, "T": T}


def rz_mat(g: float) -> np.ndarray:
    return np.array([[np.exp(-0.5j * g), 0], [0, np.exp(0.5j * g)]], dtype=complex)


def ry_mat(t: float) -> np.ndarray:
    c, s = np.cos(t / 2), np.sin(t / 2)
    return np.array([[c, -s], [s, c]], dtype=complex)


def rx_mat(g: float) -> np.ndarray:
    c, s = np.cos(g / 2), np.sin(g / 2)
    return np.array([[c, -1j * s], [-1j * s, c]], dtype=complex)


def p_mat(g: float) -> np.ndarray:
    return np.array([[1, 0], [0, np.exp(1j * g)]], dtype=complex)


def u2_mat(d: float, a: float, t: float, b: float) -> np.ndarray:
    return np.exp(1j * d) * (rz_mat(a) @ ry_mat(t) @ rz_mat(b))


def gate_unitary_1q(kind: str, params: tuple[float, ...]) -> np.ndarray:
    """Local 2x2 matrix of a single-qubit gate, or the controlled payload of a
    two-qubit controlled gate (SWAP has no payload and is handled upstream)."""
    if kind == "H":
        return H
    if kind in ("X", "CX"):
        return X
    if kind == "SX":
        return SX
    if kind == "SXdg":
        return SX.conj().T
    if kind == "Rz":
        return rz_mat(params[0])
    if kind == "Ry":
        return ry_mat(params[0])
    if kind in ("Rx", "CRx"):
        return rx_mat(params[0])
    if kind in ("P", "CP"):
        return p_mat(params[0])
    if kind == "CRz":
        return rz_mat(params[0])
    if kind in ("U2", "CU2"):
        return u2_mat(*params)
    raise ValueError(f"no local matrix for kind {kind!r}")


def zyz_decompose(u: np.ndarray) -> tuple[float, float, float, float]:
    """Angles (d, a, t, b) with u = e^{id} Rz(a) Ry(t) Rz(b), t in [0, pi].

    V = e^{-id} u is special unitary with
        V = [[cos(t/2) e^{-i(a+b)/2}, -sin(t/2) e^{-i(a-b)/2}],
             [sin(t/2) e^{+i(a-b)/2},  cos(t/2) e^{+i(a+b)/2}]]
    """
    u = np.asarray(u, dtype=complex)
    if u.shape != (2, 2):
        raise ValueError("zyz_decompose expects a 2x2 matrix")
    d = float(np.angle(np.linalg.det(u)) / 2.0)
    v = np.exp(-1j * d) * u
    c_mag = abs(v[0, 0])
    s_mag = abs(v[1, 0])
    t = float(2.0 * np.arctan2(s_mag, c_mag))
    if s_mag < 1e-14:
        # diagonal: fold all z-rotation into alpha
        a = float(2.0 * np.angle(v[1, 1]))
        b = 0.0
    elif c_mag < 1e-14:
        # antidiagonal: alpha = 0 by convention
        a = 0.0
        b = float(-2.0 * np.angle(v[1, 0]))
    else:
        a = float(np.angle(v[1, 1]) + np.angle(v[1, 0]))
        b = float(np.angle(v[1, 1]) - np.angle(v[1, 0]))
    return d, a, t, b


def abc_decompose(u: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray, float]:
    """Matrices (A, B, C) and phase d with A B C = I and u = e^{id} A X B X C."""
    d, a, t, b = zyz_decompose(u)
    mat_a = rz_mat(a) @ ry_mat(t / 2)
    mat_b = ry_mat(-t / 2) @ rz_mat(-(a + b) / 2)
    mat_c = rz_mat((b - a) / 2)
    return mat_a, mat_b, mat_c, d


def root(u: np.ndarray, m: int) -> np.ndarray:
    """Principal 2^{m-1}-th root: eigenphases on (-pi, pi] divided by 2^{m-1}.

    root(u, 1) is u itself; root(u, m) ** (2^{m-1}) recovers u.  For special
    unitaries the family telescopes exactly: root(V, m) @ root(V, m) equals
    root(V, m-1).
    """
    if m < 1:
        raise ValueError("root index m must be >= 1")
    u = np.asarray(u, dtype=complex)
    if m == 1:
        return u.copy()
    phases, vecs = eig2(u)
    scaled = np.exp(1j * phases / (1 << (m - 1)))
    return vecs @ np.diag(scaled) @ vecs.conj().T


# -- identity battery ---------------------------------------------------------

_P0 = np.diag([1.0, 0.0]).astype(complex)
_P1 = np.diag([0.0, 1.0]).astype(complex)


def controlled(v: np.ndarray) -> np.ndarray:
    """4x4 controlled-v with control on qubit 1 (LSB) and target on qubit 2,
    i.e. kron(target_factor, control_factor) ordering."""
    return kron(I2, _P0) + kron(v, _P1)


def _ctl_p(g: float) -> np.ndarray:
    """P(g) acting on the control qubit (qubit 1)."""
    return kron(I2, p_mat(g))


def _tgt(v: np.ndarray) -> np.ndarray:
    """v acting on the target qubit (qubit 2)."""
    return kron(v, I2)


_CX4 = controlled(X)


def identity_battery(draws: int = 100, seed: int = 20240917) -> list[tuple[str, float]]:
    """Evaluate each named identity at randomized parameters and return
    (name, max deviation) pairs.  Every deviation should sit at numerical
    noise, well under 1e-12."""
    rng = np.random.default_rng(seed)
    results: list[tuple[str, float]] = []

    def run(name: str, sample) -> None:
        dev = 0.0
        for _ in range(draws):
            dev = max(dev, float(sample()))
        results.append((name, dev))

    def d_rm() -> float:
        m = int(rng.integers(1, 11))
        lhs = p_mat(np.pi / (1 << (m - 1)))
        return np.max(np.abs(lhs - root(Z, m)))

    run("R_m = Z^(1/2^(m-1))", d_rm)

    def d_cp_crz() -> float:
        g = float(rng.uniform(-2 * np.pi, 2 * np.pi))
        lhs = controlled(p_mat(g))
        short = controlled(rz_mat(g)) @ _ctl_p(g / 2)
        long = _tgt(rz_mat(g / 2)) @ _CX4 @ _tgt(rz_mat(-g / 2)) @ _CX4 @ _ctl_p(g / 2)
        return max(np.max(np.abs(lhs - short)), np.max(np.abs(lhs - long)))

    run("CP = CRz + P(g/2) on control", d_cp_crz)

    def d_eq5() -> float:
        d = float(rng.uniform(-2 * np.pi, 2 * np.pi))
        lhs = X @ p_mat(-d / 2) @ X @ p_mat(d / 2)
        return max(
            np.max(np.abs(lhs - rz_mat(d))),
            np.max(np.abs(lhs - np.exp(-1j * d / 2) * p_mat(d))),
        )

    run("X P(-d/2) X P(d/2) = Rz(d)", d_eq5)

    def d_eq6() -> float:
        d = float(rng.uniform(-2 * np.pi, 2 * np.pi))
        lhs = p_mat(d / 2) @ X @ p_mat(-d / 2) @ X
        return np.max(np.abs(lhs - rz_mat(d)))

    run("P(d/2) X P(-d/2) X = Rz(d)", d_eq6)

    def d_eq7() -> float:
        m = int(rng.integers(1, 9))
        d = float(rng.uniform(-np.pi, np.pi))
        a, b = rng.uniform(-np.pi, np.pi, size=2)
        t = float(rng.uniform(0, np.pi))
        w = u2_mat(0.0, float(a), t, float(b))
        dm = d / (1 << (m - 1))
        lhs = controlled(np.exp(1j * dm) * w)
        rhs = controlled(w) @ _ctl_p(dm)
        return np.max(np.abs(lhs - rhs))

    run("C-U(2)^(1/2^(m-1)) = C-U^(1/2^(m-1)) (P(d/2^(m-1)) x I)", d_eq7)

    def d_hzh() -> float:
        return np.max(np.abs(H @ Z @ H - X))

    run("H Z H = X", d_hzh)

    def d_hrxh() -> float:
        g = float(rng.uniform(-2 * np.pi, 2 * np.pi))
        return np.max(np.abs(H @ rx_mat(g) @ H - rz_mat(g)))

    run("H Rx(g) H = Rz(g)", d_hrxh)

    return results


# -- random unitary protocol --------------------------------------------------

_TRIVIAL = (I2, X, Z)


def random_unitary(rng: np.random.Generator, su2: bool = False) -> np.ndarray:
    """Random U(2) built from rational multiples of pi.

    Angles are pi * sign * p/q with p in 0..16 and q in 1..16 (theta uses
    p <= q so it stays in [0, pi]).  Draws within 1e-6 of I, X, or Z up to
    global phase are rejected and retried.
    """

    def rational_angle(signed: bool = True) -> float:
        p = int(rng.integers(0, 17))
        q = int(rng.integers(1, 17))
        s = int(rng.choice((-1, 1))) if signed else 1
        return np.pi * s * p / q

    while True:
        d = 0.0 if su2 else rational_angle()
        a = rational_angle()
        b = rational_angle()
        q = int(rng.integers(1, 17))
        p = int(rng.integers(0, q + 1))
        t = np.pi * p / q
        u = u2_mat(d, a, t, b)
        if all(_phase_distance(u, triv) > 1e-6 for triv in _TRIVIAL):
            return u


def _phase_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Distance between a and the closest global-phase multiple of b."""
    inner = np.trace(b.conj().T @ a)
    if abs(inner) < 1e-30:
        return float(np.max(np.abs(a - b)))
    phase = inner / abs(inner)
    return float(np.max(np.abs(a - phase * b)))
