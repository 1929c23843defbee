"""Rewrite passes over block-annotated circuits.

Each pass returns ``(circuit, PassReport)`` and never mutates its input.  The
structural passes key on the ``block`` / ``role`` annotations the builders
attach; on circuits without annotations they refuse (flagged in the report)
rather than guess.  All rewrites here are exactly unitary-preserving -- the
``phase_shift`` field exists for passes that trade a gate for a global phase,
and stays 0.0 for every rewrite currently implemented.
"""

from __future__ import annotations

import math
from collections import Counter, defaultdict
from dataclasses import dataclass, replace

from .circuit import (
    Circuit,
    crz,
    cx,
    h,
    normalize_angle,
    p,
    schedule_slots,
    x,
)
from .gate_algebra import u2_mat, zyz_decompose

BLOCK_PLUS = "+1"
BLOCK_MINUS = "-1"


@dataclass
class PassReport:
    name: str
    gates_before: int
    gates_after: int
    slots_before: int
    slots_after: int
    phase_shift: float = 0.0
    refused: bool = False
    detail: str = ""


def _report(name: str, before: Circuit, after: Circuit, **kw) -> PassReport:
    return PassReport(
        name,
        len(before.gates),
        len(after.gates),
        schedule_slots(before)[0],
        schedule_slots(after)[0],
        **kw,
    )


# -- phase-column merging -------------------------------------------------------

def merge_phase_columns(circ: Circuit) -> tuple[Circuit, PassReport]:
    """Absorb each block's diagonal column into its QFT stage rotations.

    In a ``+1`` block the column phase on wireline j joins the stage-side
    controlled phase from wireline 1 (doubling its angle); the mirror-image
    controlled phase on the inverse side cancels against it and is deleted.
    A ``-1`` block is the exact inverse, so there the inverse-side rotation
    absorbs the column.  The wireline-1 column phase of +-pi is wrapped by
    its two Hadamards into a bare X.  A conditioned-root column (a U2 on the
    target wireline) merges into the controlled root from wireline 1 the same
    way, squaring it.

    Circuits without block annotations are returned untouched with
    ``refused=True`` -- the rules above are only meaningful relative to the
    builder's block structure.
    """
    gates = list(circ.gates)
    if all(g.block is None for g in gates):
        after = Circuit(circ.n, gates)
        rep = _report(
            "merge-phase-columns",
            circ,
            after,
            refused=True,
            detail="no block annotations present; nothing to merge against",
        )
        return after, rep

    drop: set[int] = set()
    repl: dict[int, object] = {}
    labels = []
    for g in gates:
        if g.block is not None and g.block not in labels:
            labels.append(g.block)

    for label in labels:
        # +1 blocks absorb into the forward (qft) side, -1 blocks into the
        # inverse side; anything else is left alone.
        if label == BLOCK_PLUS:
            absorb, discard = "qft", "iqft"
        elif label == BLOCK_MINUS:
            absorb, discard = "iqft", "qft"
        else:
            continue
        idx = [i for i, g in enumerate(gates) if g.block == label]
        for ci in idx:
            g = gates[ci]
            if g.role != "column":
                continue
            if g.kind == "P" and g.target == 1:
                if abs(abs(normalize_angle(g.params[0])) - math.pi) > 1e-12:
                    continue
                hq = [
                    i for i in idx
                    if gates[i].kind == "H" and gates[i].target == 1 and gates[i].role == "qft"
                ]
                hi = [
                    i for i in idx
                    if gates[i].kind == "H" and gates[i].target == 1 and gates[i].role == "iqft"
                ]
                if len(hq) == 1 and len(hi) == 1:
                    repl[ci] = x(1, block=label, role="column")
                    drop |= {hq[0], hi[0]}
            elif g.kind == "P":
                j = g.target
                keep = [
                    i for i in idx
                    if gates[i].kind == "CP" and gates[i].control == 1
                    and gates[i].target == j and gates[i].role == absorb
                ]
                toss = [
                    i for i in idx
                    if gates[i].kind == "CP" and gates[i].control == 1
                    and gates[i].target == j and gates[i].role == discard
                ]
                if len(keep) == 1 and len(toss) == 1:
                    kg = gates[keep[0]]
                    new_m = kg.root_m - 1 if kg.root_m is not None else None
                    repl[keep[0]] = replace(
                        kg, params=(kg.params[0] + g.params[0],), root_m=new_m
                    )
                    drop |= {ci, toss[0]}
            elif g.kind == "U2":
                j = g.target
                keep = [
                    i for i in idx
                    if gates[i].kind == "CU2" and gates[i].control == 1
                    and gates[i].target == j and gates[i].role == absorb
                ]
                toss = [
                    i for i in idx
                    if gates[i].kind == "CU2" and gates[i].control == 1
                    and gates[i].target == j and gates[i].role == discard
                ]
                if len(keep) == 1 and len(toss) == 1:
                    kg = gates[keep[0]]
                    merged = u2_mat(*kg.params) @ u2_mat(*g.params)
                    new_m = kg.root_m - 1 if kg.root_m is not None else None
                    repl[keep[0]] = replace(
                        kg, params=zyz_decompose(merged), root_m=new_m
                    )
                    drop |= {ci, toss[0]}

    out = Circuit(circ.n, [repl.get(i, g) for i, g in enumerate(gates) if i not in drop])
    return out, _report("merge-phase-columns", circ, out)


# -- controlled-phase to controlled-Rz ------------------------------------------

def _corrections_cancel(angles: list[float]) -> bool:
    """True when the multiset of correction angles pairs off as {a, -a}."""
    counts: Counter = Counter()
    for a in angles:
        key = round(normalize_angle(a) * 1e12)
        if key == 0:
            continue
        counts[key] += 1
    return all(counts[k] == counts.get(-k, 0) for k in counts)


def cp_to_crz(circ: Circuit) -> tuple[Circuit, PassReport]:
    """Rewrite every CP(gamma) as CRz(gamma) plus a P(gamma/2) on its control.

    The two differ by exactly that local phase correction, so on an arbitrary
    circuit each correction is emitted next to its rotation.  On a
    block-annotated circuit two refinements apply:

    * corrections landing on a control wireline pair off between the forward
      and inverse sides of the register blocks; when the +-angle multiset for
      a wireline cancels exactly, the whole set is dropped.
    * rotations targeting the top wireline are not part of any restoring
      block, so their corrections stay -- emitted as riding phases that share
      a slot with their rotation.

    No CP gates survive, and the rewrite carries no global phase.
    """
    annotated = any(g.block is not None for g in circ.gates)
    per_wire: dict[int, list[float]] = defaultdict(list)
    for g in circ.gates:
        if g.kind == "CP" and not (annotated and g.target == circ.n):
            per_wire[g.control].append(g.params[0] / 2)
    droppable = {
        w for w, angles in per_wire.items() if annotated and _corrections_cancel(angles)
    }

    out = []
    dropped = 0
    for g in circ.gates:
        if g.kind != "CP":
            out.append(g)
            continue
        rot = crz(g.params[0], g.control, g.target, block=g.block, role=g.role, root_m=g.root_m)
        if annotated and g.target == circ.n:
            out.append(
                p(g.params[0] / 2, g.control, block=g.block, role="corr", ride=True)
            )
            out.append(rot)
        elif g.control in droppable:
            dropped += 1
            out.append(rot)
        else:
            out.append(p(g.params[0] / 2, g.control, block=g.block, role="corr"))
            out.append(rot)

    res = Circuit(circ.n, out)
    return res, _report(
        "cp-to-crz", circ, res, detail=f"{dropped} paired corrections dropped"
    )


# -- explicit determinant-phase ladder ------------------------------------------

def insert_phase_ladder(circ: Circuit, delta: float, side: str) -> Circuit:
    """Attach the single-qubit phase ladder realizing a conditioned e^(i delta).

    Both register blocks flip wireline k exactly when wirelines k-1..1 are all
    1.  Bracketing one block with P(+-delta/2**(n-k)) on each control wireline
    turns those flips into a telescoping sequence of conditioned phases whose
    survivor is e^(i delta) precisely on the all-ones control state; each
    level's unconditioned remainder is eaten by the level below, and the last
    one by a single unpaired P on wireline 1 (whose bracket partner would
    collapse anyway, the two blocks flipping that wireline unconditionally).

    ``side`` picks which block is bracketed: ``plus-block``, ``minus-block``,
    or ``split`` (half the angle around each).  Returns a plain Circuit; the
    ladder is a fixed decoration, not a searched rewrite.
    """
    if side not in ("plus-block", "minus-block", "split"):
        raise ValueError(f"unknown ladder side {side!r}")
    n = circ.n
    plus_d = {"plus-block": delta, "minus-block": 0.0, "split": delta / 2}[side]
    minus_d = delta - plus_d
    gates = list(circ.gates)

    def span(label: str) -> tuple[int, int] | None:
        idxs = [i for i, g in enumerate(gates) if g.block == label]
        return (idxs[0], idxs[-1]) if idxs else None

    inserts: list[tuple[int, list]] = []
    if plus_d != 0.0:
        ps = span(BLOCK_PLUS)
        if ps is None:
            raise ValueError("circuit has no +1 block to bracket")
        lead = [p(plus_d / 2 ** (n - 2), 1, block=BLOCK_PLUS, role="ladder")]
        lead += [
            p(plus_d / 2 ** (n - k), k, block=BLOCK_PLUS, role="ladder")
            for k in range(n - 1, 1, -1)
        ]
        trail = [
            p(-plus_d / 2 ** (n - k), k, block=BLOCK_PLUS, role="ladder")
            for k in range(n - 1, 1, -1)
        ]
        inserts.append((ps[0], lead))
        inserts.append((ps[1] + 1, trail))
    if minus_d != 0.0:
        ms = span(BLOCK_MINUS)
        if ms is None:
            raise ValueError("circuit has no -1 block to bracket")
        lead = [
            p(-minus_d / 2 ** (n - k), k, block=BLOCK_MINUS, role="ladder")
            for k in range(n - 1, 1, -1)
        ]
        trail = [
            p(minus_d / 2 ** (n - k), k, block=BLOCK_MINUS, role="ladder")
            for k in range(n - 1, 1, -1)
        ]
        trail += [p(minus_d / 2 ** (n - 2), 1, block=BLOCK_MINUS, role="ladder")]
        inserts.append((ms[0], lead))
        inserts.append((ms[1] + 1, trail))

    for pos, new in sorted(inserts, key=lambda t: t[0], reverse=True):
        gates[pos:pos] = new
    return Circuit(n, gates)


# -- LDD back to the QFT picture ------------------------------------------------

def ldd_to_qft(circ: Circuit) -> tuple[Circuit, PassReport]:
    """Invert the linear-depth rewrite: CRx back to CP/CX, Hadamards restored.

    Each controlled Rx of angle +-pi from wireline 1 to 2 is the collapsed
    CX; every other CRx becomes a controlled phase of the same angle.  The
    basis-change Hadamard pair is reinserted per block around the gates
    targeting each stage wireline.  Refuses (report flag) anything that does
    not look like a linear-depth circuit: Hadamards present, no CRx gates, or
    no block annotations.
    """
    has_h = any(g.kind == "H" for g in circ.gates)
    has_crx = any(g.kind == "CRx" for g in circ.gates)
    annotated = any(g.block is not None for g in circ.gates)
    if has_h or not has_crx or not annotated:
        why = (
            "contains Hadamards" if has_h
            else "no CRx gates" if not has_crx
            else "no block annotations"
        )
        out = Circuit(circ.n, list(circ.gates))
        return out, _report(
            "ldd-to-qft", circ, out, refused=True,
            detail=f"not a linear-depth circuit: {why}",
        )

    converted = []
    for g in circ.gates:
        if g.kind == "CRx":
            if (
                g.control == 1
                and g.target == 2
                and abs(abs(normalize_angle(g.params[0])) - math.pi) < 1e-12
            ):
                converted.append(cx(1, 2, block=g.block, role=g.role))
            else:
                converted.append(
                    # CRz would be the literal basis change; the original QFT
                    # stages carry controlled phases, so go straight there.
                    replace(g, kind="CP")
                )
        else:
            converted.append(g)

    # Reinsert the Hadamard pair per (block, stage wireline): one before the
    # first controlled phase targeting that wireline inside the block, one
    # after the last.
    spans: dict[tuple[str, int], tuple[int, int]] = {}
    for i, g in enumerate(converted):
        if g.kind == "CP" and g.block is not None:
            key = (g.block, g.target)
            lo, hi = spans.get(key, (i, i))
            spans[key] = (min(lo, i), max(hi, i))
    before: dict[int, list] = defaultdict(list)
    after: dict[int, list] = defaultdict(list)
    for (blk, j), (lo, hi) in spans.items():
        before[lo].append(h(j, block=blk, role="qft"))
        after[hi].append(h(j, block=blk, role="iqft"))
    rebuilt = []
    for i, g in enumerate(converted):
        rebuilt.extend(before.get(i, ()))
        rebuilt.append(g)
        rebuilt.extend(after.get(i, ()))

    out = Circuit(circ.n, rebuilt)
    return out, _report("ldd-to-qft", circ, out)


# -- adjacent CX cancellation ----------------------------------------------------

def cancel_cx_pairs(circ: Circuit) -> tuple[Circuit, PassReport]:
    """Delete CX pairs on identical wires with nothing in between on either wire.

    Deliberately conservative: the next gate touching either wire must be the
    matching CX itself, so commuting a blocker out of the way is never
    attempted.  Runs to a fixpoint (a cancellation can make a new pair
    adjacent).  Useful after nearest-neighbour routing, where ping-pong
    SWAP chains leave many such pairs.
    """
    gates = list(circ.gates)
    removed = 0
    changed = True
    while changed:
        changed = False
        i = 0
        while i < len(gates):
            g = gates[i]
            if g.kind == "CX":
                wires = set(g.wires())
                for j in range(i + 1, len(gates)):
                    other = gates[j]
                    if wires & set(other.wires()):
                        if (
                            other.kind == "CX"
                            and other.control == g.control
                            and other.target == g.target
                        ):
                            del gates[j]
                            del gates[i]
                            removed += 2
                            changed = True
                            i -= 1
                        break
            i += 1
    out = Circuit(circ.n, gates)
    return out, _report(
        "cancel-cx-pairs", circ, out, detail=f"{removed} gates removed"
    )


PASSES = {
    "merge": merge_phase_columns,
    "cp-to-crz": cp_to_crz,
    "ldd-to-qft": ldd_to_qft,
    "cancel-cx": cancel_cx_pairs,
}
