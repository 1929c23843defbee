"""Builders for multi-controlled single-qubit gates via QFT increments.

The construction realizes a controlled bit-flip on the top wireline by
incrementing the full register (a carry ripples into wireline n exactly when
all lower bits are 1) and then decrementing the n-1 control bits to restore
them.  A general unitary replaces the carry flip by conditioned roots of the
target gate woven into the increment's phase stages.

Wireline 1 is the least significant register bit; the target of the MCU is
wireline n.  Gates carry two kinds of annotation used by the optimizer:

* ``block`` -- ``"+1"`` for the increment half, ``"-1"`` for the decrement;
* ``role``  -- ``"qft"``, ``"column"``, ``"iqft"`` or ``"ladder"`` marking a
  gate's place inside its block.

Everything here emits plain :class:`~qftmcu.circuit.Circuit` objects; the
merging / rewrite machinery lives in :mod:`qftmcu.optimizer` and is invoked
by the builders when ``optimize=True``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .circuit import (
    Circuit,
    cp,
    cu2,
    cx,
    crx,
    h,
    inverse,
    normalize_angle,
    p,
    u2,
    x,
)
from .gate_algebra import root, u2_mat, zyz_decompose
from .linalg import is_unitary

BLOCK_PLUS = "+1"
BLOCK_MINUS = "-1"

METHODS = ("mcx-qft", "mcu-mod", "mcu-zyz", "ldd")
LADDER_SIDES = ("plus-block", "minus-block", "split")


@dataclass
class SynthConfig:
    """Everything needed to synthesize one MCU circuit.

    ``u`` is the 2x2 target unitary (ignored by ``mcx-qft``, which always
    builds a multi-controlled X).  ``aqft_cutoff`` truncates controlled
    rotations past the given root index after synthesis.  ``phase_ladder_side``
    picks where the determinant phase of ``u`` is accounted for: folded into
    the conditioned roots (``plus-block``), emitted as an explicit single-qubit
    phase ladder around the decrement (``minus-block``), or half and half
    (``split``).
    """

    method: str
    n: int
    u: np.ndarray | None = None
    aqft_cutoff: int | None = None
    optimize: bool = True
    phase_ladder_side: str = "plus-block"

    def __post_init__(self) -> None:
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}; expected one of {METHODS}")
        min_n = 3 if self.method == "ldd" else 2
        if not isinstance(self.n, int) or self.n < min_n:
            raise ValueError(f"method {self.method!r} needs an integer width n >= {min_n}")
        if self.method == "mcx-qft":
            self.u = None
        else:
            if self.u is None:
                raise ValueError(f"method {self.method!r} requires a target unitary u")
            u = np.asarray(self.u, dtype=complex)
            if u.shape != (2, 2) or not is_unitary(u):
                raise ValueError("u must be a 2x2 unitary matrix")
            self.u = u
        if self.aqft_cutoff is not None and not (1 <= self.aqft_cutoff <= self.n):
            raise ValueError(f"aqft_cutoff must lie in [1, {self.n}]")
        if self.phase_ladder_side not in LADDER_SIDES:
            raise ValueError(
                f"unknown phase_ladder_side {self.phase_ladder_side!r}; expected one of {LADDER_SIDES}"
            )


def _require(cfg: SynthConfig, method: str) -> None:
    if cfg.method != method:
        raise ValueError(f"config is for method {cfg.method!r}, not {method!r}")


# -- QFT and register increments ----------------------------------------------

def build_qft(k: int, *, block: str | None = None) -> Circuit:
    """Text-book QFT on wirelines 1..k (without the final bit reversal).

    Stages run from wireline k down to 1: a Hadamard on the stage wireline
    followed by controlled phases from each lower wireline.  The controlled
    phase from wireline i onto j has angle pi / 2**(j-i), i.e. root index
    j - i + 1.
    """
    if k < 1:
        raise ValueError("QFT width must be at least 1")
    gates = []
    for j in range(k, 0, -1):
        gates.append(h(j, block=block, role="qft"))
        for i in range(j - 1, 0, -1):
            gates.append(
                cp(math.pi / 2 ** (j - i), i, j, block=block, role="qft", root_m=j - i + 1)
            )
    return Circuit(k, gates)


def _phase_column(k: int, block: str | None) -> list:
    """The diagonal +1 column in the Fourier basis: P(pi/2**(j-1)) on wireline j."""
    return [
        p(math.pi / 2 ** (j - 1), j, block=block, role="column", root_m=j)
        for j in range(k, 0, -1)
    ]


def build_increment(k: int, *, block: str = BLOCK_PLUS) -> Circuit:
    """|a> -> |a+1 mod 2**k> as QFT, phase column, inverse QFT."""
    head = build_qft(k, block=block)
    gates = list(head.gates) + _phase_column(k, block) + list(inverse(head).gates)
    return Circuit(k, gates)


def build_decrement(k: int, *, block: str = BLOCK_MINUS) -> Circuit:
    """|a> -> |a-1 mod 2**k>; exact inverse of the increment, same block label."""
    return inverse(build_increment(k, block=block))


# -- builder-local finishing rewrites -----------------------------------------

def _collapse_cx(circ: Circuit) -> Circuit:
    """Fold each block's H(2) . CP(1->2, +-pi) . H(2) sandwich into a CX.

    Only fires when the three gates are present exactly once in the block and
    nothing else touches wireline 2 between them, which is the shape the
    merge pass leaves behind.  Gates on other wirelines (the block's X(1))
    commute through the Hadamards and are left in place.
    """
    gates = list(circ.gates)
    for blk in (BLOCK_PLUS, BLOCK_MINUS):
        idx = [i for i, g in enumerate(gates) if g.block == blk]
        h_qft = [i for i in idx if gates[i].kind == "H" and gates[i].target == 2 and gates[i].role == "qft"]
        h_iqft = [i for i in idx if gates[i].kind == "H" and gates[i].target == 2 and gates[i].role == "iqft"]
        cz = [
            i
            for i in idx
            if gates[i].kind == "CP"
            and gates[i].control == 1
            and gates[i].target == 2
            and abs(abs(normalize_angle(gates[i].params[0])) - math.pi) < 1e-12
        ]
        if len(h_qft) != 1 or len(h_iqft) != 1 or len(cz) != 1:
            continue
        lo, mid, hi = h_qft[0], cz[0], h_iqft[0]
        if not lo < mid < hi:
            continue
        touched = [g for g in gates[lo + 1 : mid] + gates[mid + 1 : hi] if 2 in g.wires()]
        if touched:
            continue
        gates[mid] = cx(1, 2, block=blk, role=gates[mid].role)
        del gates[hi]
        del gates[lo]
    return Circuit(circ.n, gates)


def _cancel_x_pair(circ: Circuit) -> Circuit:
    """Drop the two uncontrolled X(1) gates if nothing between them uses wireline 1.

    The +1 block ends wireline 1 with a bit flip and the -1 block starts with
    the opposite one; after merging, no gate in between acts on that wireline,
    so the pair is an identity.
    """
    gates = list(circ.gates)
    ix = [i for i, g in enumerate(gates) if g.kind == "X" and g.target == 1]
    if len(ix) == 2:
        lo, hi = ix
        if not any(1 in g.wires() for g in gates[lo + 1 : hi]):
            del gates[hi]
            del gates[lo]
    return Circuit(circ.n, gates)


# -- the three constructions ---------------------------------------------------

def build_mcx_qft(cfg: SynthConfig) -> Circuit:
    """Multi-controlled X: increment the full register, decrement the controls.

    With ``optimize=True`` the phase columns are merged into the stage
    rotations (and the wireline-1 phase collapses to a bare X); the block
    structure itself is left alone, so the result stays visibly two QFT
    sandwiches.
    """
    _require(cfg, "mcx-qft")
    n = cfg.n
    gates = list(build_increment(n).gates) + list(build_decrement(n - 1).gates)
    circ = Circuit(n, gates)
    if cfg.optimize:
        from .optimizer import merge_phase_columns

        circ, _ = merge_phase_columns(circ)
    if cfg.aqft_cutoff is not None:
        circ = apply_aqft(circ, cfg.aqft_cutoff)
    return circ


def build_mcu_mod(cfg: SynthConfig) -> Circuit:
    """MCU via a modified increment that carries conditioned roots of u.

    The stage of the QFT acting on the target wireline is replaced by a
    ladder of controlled roots CU(i -> n) carrying u^(1/2**(n-i)); the phase
    column applies u itself on the target.  Undoing the ladder after the
    inverse QFT leaves exactly u applied when all controls are 1.  The
    decrement half is a plain register decrement on the controls.

    For ``phase_ladder_side="plus-block"`` the determinant phase of u rides
    inside the conditioned roots and the result is exact with no extra
    gates.  The other sides put (part of) that phase into an explicit ladder
    of P rotations bracketing the decrement.
    """
    _require(cfg, "mcu-mod")
    n = cfg.n
    d, a, t, b = zyz_decompose(cfg.u)
    if n == 2:
        return Circuit(2, [cu2((d, a, t, b), 1, 2, block=BLOCK_PLUS, role="qft", root_m=1)])

    fold = {"plus-block": d, "minus-block": 0.0, "split": d / 2}[cfg.phase_ladder_side]
    ladder = d - fold
    v = u2_mat(0.0, a, t, b)
    params = {}
    for m in range(2, n + 1):
        w = root(v, m) * np.exp(1j * fold / 2 ** (m - 1))
        params[m] = zyz_decompose(w)

    head = [
        cu2(params[n - i + 1], i, n, block=BLOCK_PLUS, role="qft", root_m=n - i + 1)
        for i in range(n - 1, 0, -1)
    ]
    head += list(build_qft(n - 1, block=BLOCK_PLUS).gates)
    column = [u2(params[n], n, block=BLOCK_PLUS, role="column", root_m=n)]
    column += _phase_column(n - 1, BLOCK_PLUS)
    tail = list(inverse(Circuit(n, head)).gates)

    minus = list(build_decrement(n - 1).gates)
    circ = Circuit(n, head + column + tail + minus)

    if cfg.optimize:
        from .optimizer import merge_phase_columns

        circ, _ = merge_phase_columns(circ)
        circ = _collapse_cx(circ)
        circ = _cancel_x_pair(circ)
    if ladder != 0.0:
        from .optimizer import insert_phase_ladder

        circ = insert_phase_ladder(circ, ladder, "minus-block")
    if cfg.aqft_cutoff is not None:
        circ = apply_aqft(circ, cfg.aqft_cutoff)
    return circ


def build_mcu_zyz(cfg: SynthConfig) -> Circuit:
    """MCU from the ZYZ conjecture form  u = e^(i d) A X B X C  with ABC = I.

    Both register blocks span the full width n, so the target wireline is
    flipped (conditioned on the controls) by the increment itself and flipped
    back by the decrement; A, B, C are uncontrolled single-qubit gates slotted
    between the blocks.  The determinant phase d always goes into an explicit
    phase ladder, on the side selected by ``phase_ladder_side``.
    """
    _require(cfg, "mcu-zyz")
    n = cfg.n
    d, a, t, b = zyz_decompose(cfg.u)
    c_par = (0.0, 0.0, 0.0, (b - a) / 2)
    b_par = (0.0, 0.0, -t / 2, -(a + b) / 2)
    a_par = (0.0, a, t / 2, 0.0)

    gates = []
    if not _is_identity_u2(c_par):
        gates.append(u2(c_par, n))
    gates += list(build_increment(n).gates)
    if not _is_identity_u2(b_par):
        gates.append(u2(b_par, n))
    gates += list(build_decrement(n).gates)
    if not _is_identity_u2(a_par):
        gates.append(u2(a_par, n))
    circ = Circuit(n, gates)

    if cfg.optimize:
        from .optimizer import merge_phase_columns

        circ, _ = merge_phase_columns(circ)
        circ = _collapse_cx(circ)
        circ = _cancel_x_pair(circ)
    if d != 0.0:
        from .optimizer import insert_phase_ladder

        circ = insert_phase_ladder(circ, d, cfg.phase_ladder_side)
    if cfg.aqft_cutoff is not None:
        circ = apply_aqft(circ, cfg.aqft_cutoff)
    return circ


def build_ldd(cfg: SynthConfig) -> Circuit:
    """Linear-depth-decomposition form: the modified-increment MCU rewritten
    into controlled-Rx gates with every Hadamard eliminated.

    Each controlled phase becomes a controlled Rx of the same angle (the
    basis-change Hadamards on its target wireline pair up and annihilate, and
    the local phase corrections of the CP -> CRz step cancel between the two
    register blocks).  The two CX gates become CRx(+-pi); their leftover
    +-i phases are conditioned on the same wireline-1 value and cancel.

    Always built from the merged modified-increment circuit, so the
    ``optimize`` flag has no effect here.
    """
    _require(cfg, "ldd")
    base = SynthConfig(
        "mcu-mod",
        cfg.n,
        cfg.u,
        optimize=True,
        phase_ladder_side=cfg.phase_ladder_side,
    )
    merged = build_mcu_mod(base)
    out = []
    for g in merged.gates:
        if g.kind == "H":
            continue
        if g.kind == "CP":
            out.append(
                crx(g.params[0], g.control, g.target, block=g.block, role=g.role, root_m=g.root_m)
            )
        elif g.kind == "CX":
            ang = math.pi if g.block == BLOCK_PLUS else -math.pi
            out.append(crx(ang, g.control, g.target, block=g.block, role=g.role, root_m=1))
        else:
            out.append(g)
    circ = Circuit(cfg.n, out)
    if cfg.aqft_cutoff is not None:
        circ = apply_aqft(circ, cfg.aqft_cutoff)
    return circ


_BUILDERS = {
    "mcx-qft": build_mcx_qft,
    "mcu-mod": build_mcu_mod,
    "mcu-zyz": build_mcu_zyz,
    "ldd": build_ldd,
}


def build(cfg: SynthConfig) -> Circuit:
    """Dispatch to the builder named by ``cfg.method``."""
    return _BUILDERS[cfg.method](cfg)


def _is_identity_u2(par: tuple[float, float, float, float]) -> bool:
    return bool(np.allclose(u2_mat(*par), np.eye(2), atol=1e-12))


# -- approximate-QFT truncation ------------------------------------------------

def default_aqft_cutoff(n: int) -> int:
    """ceil(log2 n): the coarsest cutoff that keeps the error negligible."""
    if n < 2:
        raise ValueError("need n >= 2")
    return max(1, (n - 1).bit_length())


def _root_index(g) -> int | None:
    if g.root_m is not None:
        return g.root_m
    if g.kind in ("CP", "CRz", "CRx"):
        a = abs(normalize_angle(g.params[0]))
        if a < 1e-12:
            return None
        m = round(math.log2(math.pi / a)) + 1
        if m >= 1 and abs(a - math.pi / 2 ** (m - 1)) < 1e-9:
            return m
    return None


def apply_aqft(circ: Circuit, m_max: int) -> Circuit:
    """Drop controlled rotations whose root index exceeds ``m_max``.

    Applies to CP, CRz and CU2 gates.  The root index is taken from the
    builder annotation when present, else inferred from the rotation angle
    |gamma| = pi / 2**(m-1); gates whose index cannot be determined are kept.
    """
    if not 1 <= m_max <= circ.n:
        raise ValueError(f"m_max must lie in [1, {circ.n}]")
    kept = []
    for g in circ.gates:
        if g.kind in ("CP", "CRz", "CU2"):
            m = _root_index(g)
            if m is not None and m > m_max:
                continue
        kept.append(g)
    return Circuit(circ.n, kept)


# -- closed-form size expectations ---------------------------------------------
#
# These are the frozen bookkeeping formulas the test suite pins the builders
# against.  All hold for the optimized (merged) circuits.

def expected_slots(method: str, n: int, *, optimize: bool = True) -> int | None:
    """Parallel-slot count of the built circuit.  Valid for n >= 4 (n >= 3 for
    mcx/zyz); returns None where no closed form is maintained."""
    if method == "mcx-qft":
        return 8 * n - 14 if optimize else 8 * n - 6
    if not optimize:
        return None
    if method == "mcu-mod":
        return 8 * n - 18
    if method == "mcu-zyz":
        # (8n - 12) for the register blocks plus one slot each for C, B, A.
        return 8 * n - 9
    return None


def expected_counts(method: str, n: int) -> dict[str, int]:
    """Per-kind gate counts of the optimized circuits.

    The zyz entries for P and U2 assume a generic target (nonzero determinant
    phase and all three ZYZ factors nontrivial); same for the ldd/mod relation
    to the plus-block ladder side.
    """
    if method == "mcx-qft":
        return {"H": 4 * n - 6, "CP": (n - 1) ** 2 + (n - 2) ** 2, "X": 2}
    if method == "mcu-mod":
        return {"H": 4 * (n - 3), "CP": 2 * (n - 1) * (n - 3), "CU2": 2 * n - 3, "CX": 2}
    if method == "mcu-zyz":
        return {
            "H": 4 * (n - 2),
            "CP": 2 * n * (n - 2),
            "CX": 2,
            "P": 2 * n - 3,
            "U2": 3,
        }
    if method == "ldd":
        return {"CRx": 2 * (n - 1) * (n - 3) + 2, "CU2": 2 * n - 3, "H": 0}
    raise ValueError(f"unknown method {method!r}")


def aqft_expected_counts(method: str, n: int, m_max: int) -> dict[str, int]:
    """Controlled-rotation counts surviving an AQFT cutoff at root index m_max.

    Valid for 2 <= m_max <= n - 2 on the optimized circuits.
    """
    mu = m_max
    if method == "mcu-mod":
        return {"CP": 2 * (mu - 1) * (2 * n - 3 - mu), "CU2": 2 * (mu - 1)}
    if method == "mcu-zyz":
        return {"CP": 2 * (mu - 1) * (2 * n - 1 - mu)}
    raise ValueError(f"no AQFT count formula for method {method!r}")
