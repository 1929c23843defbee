"""Circuit intermediate representation.

Gates act on 1-based wirelines; wireline 1 is the least-significant qubit of
the register |a_n ... a_2 a_1>.  A circuit is a flat, time-ordered gate list.
Scheduling into abstract time slots is deterministic list-order ASAP: every
gate takes the earliest slot at or after the availability of each wireline it
touches, with availability updated in list order (gates are never reordered).

Two scheduling refinements mirror how the synthesis blocks are drawn:

* named blocks ("+1", "-1", "QFT") are separated by a barrier -- the first
  gate of a new named block starts after the makespan of everything before
  it.  Unnamed gates (e.g. the ZYZ A/B/C gates) never trigger barriers and
  simply pack into whichever group the ASAP rule puts them.
* a P gate carrying ``ride=True`` forms a composite with the next gate on the
  same wireline and shares its slot (phase corrections that are "an integral
  part" of the controlled gate they decorate).  The flag is set explicitly by
  the synthesizer/passes, never inferred.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace

GATE_KINDS = frozenset(
    {
        "H", "X", "SX", "SXdg", "Rz", "Ry", "P", "Rx", "U2",
        "CX", "CP", "CRz", "CRx", "CU2", "SWAP",
    }
)

TWO_QUBIT = frozenset({"CX", "CP", "CRz", "CRx", "CU2", "SWAP"})

#: kinds whose params list is (angle,) and whose inverse negates it
_ANGLE_KINDS = frozenset({"Rz", "Ry", "P", "Rx", "CP", "CRz", "CRx"})


@dataclass(frozen=True)
class Gate:
    """One gate. ``control`` is None for single-qubit kinds; SWAP stores its
    two operands as target+control.  U2/CU2 carry ZYZ params
    (delta, alpha, theta, beta) meaning e^{i delta} Rz(alpha) Ry(theta) Rz(beta).

    block/role/ride are scheduling and rewrite annotations; they are not part
    of the serialized format.
    """

    kind: str
    target: int
    control: int | None = None
    params: tuple[float, ...] = ()
    block: str | None = None
    role: str | None = None
    ride: bool = False
    root_m: int | None = None

    def __post_init__(self) -> None:
        if self.kind not in GATE_KINDS:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        if (self.kind in TWO_QUBIT) != (self.control is not None):
            raise ValueError(f"{self.kind} control operand mismatch")
        if self.control is not None and self.control == self.target:
            raise ValueError(f"{self.kind} control equals target")

    def wires(self) -> tuple[int, ...]:
        if self.control is None:
            return (self.target,)
        return (self.control, self.target)


@dataclass
class Circuit:
    n: int
    gates: list[Gate] = field(default_factory=list)

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("circuit needs at least one wireline")
        for g in self.gates:
            for w in g.wires():
                if not 1 <= w <= self.n:
                    raise ValueError(f"gate {g.kind} touches wireline {w} outside 1..{self.n}")

    @property
    def slot_barriers(self) -> list[tuple[int, str]]:
        """(gate index, block name) where a named-block transition forces a
        barrier.  Derived from the per-gate block annotations."""
        out: list[tuple[int, str]] = []
        seen: str | None = None
        for i, g in enumerate(self.gates):
            if g.block is not None:
                if seen is not None and g.block != seen:
                    out.append((i, g.block))
                seen = g.block
        return out

    def add(self, gate: Gate) -> None:
        for w in gate.wires():
            if not 1 <= w <= self.n:
                raise ValueError(f"gate {gate.kind} touches wireline {w} outside 1..{self.n}")
        self.gates.append(gate)


@dataclass(frozen=True)
class MetricsReport:
    abstract_slots: int
    counts: dict
    native_depth: int | None = None


def schedule_slots(circ: Circuit) -> tuple[int, list[int]]:
    """Assign abstract time slots; returns (total, per-gate slot numbers)."""
    avail = {w: 0 for w in range(1, circ.n + 1)}
    barrier_at = {i for i, _ in circ.slot_barriers}
    floor = 0
    makespan = 0
    slots: list[int] = [0] * len(circ.gates)
    i = 0
    gates = circ.gates
    while i < len(gates):
        g = gates[i]
        if i in barrier_at:
            floor = makespan
        if (
            g.ride
            and g.kind == "P"
            and i + 1 < len(gates)
            and g.target in gates[i + 1].wires()
            and i + 1 not in barrier_at
        ):
            # Composite: the rider P shares the slot of the gate it decorates.
            partner = gates[i + 1]
            slot = max([floor] + [avail[w] for w in partner.wires()]) + 1
            if slot > avail[g.target]:
                slots[i] = slots[i + 1] = slot
                for w in set(partner.wires()) | {g.target}:
                    avail[w] = slot
                makespan = max(makespan, slot)
                i += 2
                continue
            # fall through: the rider's own wireline is the bottleneck
        slot = max([floor] + [avail[w] for w in g.wires()]) + 1
        slots[i] = slot
        for w in g.wires():
            avail[w] = slot
        makespan = max(makespan, slot)
        i += 1
    return makespan, slots


_CLASS_OF = {
    "H": "H",
    "X": "rot1q", "SX": "rot1q", "SXdg": "rot1q", "Rz": "rot1q",
    "Ry": "rot1q", "P": "rot1q", "Rx": "rot1q", "U2": "rot1q",
    "CX": "CX",
    "CP": "cphase", "CRz": "cphase", "CRx": "cphase",
    "CU2": "CU2",
    "SWAP": "SWAP",
}


def count_gates(circ: Circuit) -> dict[str, int]:
    """Per-kind gate counts (only kinds that occur)."""
    out: dict[str, int] = {}
    for g in circ.gates:
        out[g.kind] = out.get(g.kind, 0) + 1
    return out


def count_classes(circ: Circuit) -> dict[str, int]:
    """Counts folded into the reporting classes: H, single-qubit
    phase/rotation, CX, controlled-phase (CP/CRz/CRx), CU2, SWAP."""
    out = {"H": 0, "rot1q": 0, "CX": 0, "cphase": 0, "CU2": 0, "SWAP": 0}
    for g in circ.gates:
        out[_CLASS_OF[g.kind]] += 1
    return out


def _invert_gate(g: Gate) -> Gate:
    if g.kind in _ANGLE_KINDS:
        return replace(g, params=tuple(-x for x in g.params))
    if g.kind == "SX":
        return replace(g, kind="SXdg")
    if g.kind == "SXdg":
        return replace(g, kind="SX")
    if g.kind in ("U2", "CU2"):
        d, a, t, b = g.params
        return replace(g, params=(-d, -b, -t, -a))
    # H, X, CX, SWAP are involutions
    return g


def inverse(circ: Circuit) -> Circuit:
    """Reversed gate list with each gate inverted.  The qft/iqft role tags are
    swapped so block-structure-aware passes still recognize the halves."""
    flip = {"qft": "iqft", "iqft": "qft"}
    out = []
    for g in reversed(circ.gates):
        inv = _invert_gate(g)
        if inv.role in flip:
            inv = replace(inv, role=flip[inv.role])
        out.append(inv)
    return Circuit(circ.n, out)


def to_json(circ: Circuit) -> str:
    payload = {
        "n": circ.n,
        "gates": [
            {
                "kind": g.kind,
                "params": list(g.params),
                "target": g.target,
                "control": g.control,
            }
            for g in circ.gates
        ],
    }
    return json.dumps(payload, indent=2) + "\n"


def from_json(text: str) -> Circuit:
    payload = json.loads(text)
    gates = [
        Gate(
            kind=spec["kind"],
            target=spec["target"],
            control=spec.get("control"),
            params=tuple(float(x) for x in spec.get("params", ())),
        )
        for spec in payload["gates"]
    ]
    return Circuit(int(payload["n"]), gates)


def normalize_angle(x: float) -> float:
    """Fold an angle into (-pi, pi]."""
    import math

    y = math.fmod(x, 2 * math.pi)
    if y > math.pi:
        y -= 2 * math.pi
    elif y <= -math.pi:
        y += 2 * math.pi
    return y


def structural_equal(a: Circuit, b: Circuit, tol: float = 1e-9) -> bool:
    """Gate-list identity: same length, kinds, operands, and params equal
    after normalizing every angle into (-pi, pi]."""
    if a.n != b.n or len(a.gates) != len(b.gates):
        return False
    for ga, gb in zip(a.gates, b.gates):
        if (ga.kind, ga.target, ga.control) != (gb.kind, gb.target, gb.control):
            return False
        if len(ga.params) != len(gb.params):
            return False
        for pa, pb in zip(ga.params, gb.params):
            if abs(normalize_angle(pa - pb)) > tol:
                return False
    return True


# -- gate factories ----------------------------------------------------------

def h(t: int, **kw) -> Gate:
    return Gate("H", t, **kw)


def x(t: int, **kw) -> Gate:
    return Gate("X", t, **kw)


def sx(t: int, **kw) -> Gate:
    return Gate("SX", t, **kw)


def sxdg(t: int, **kw) -> Gate:
    return Gate("SXdg", t, **kw)


def rz(angle: float, t: int, **kw) -> Gate:
    return Gate("Rz", t, params=(angle,), **kw)


def ry(angle: float, t: int, **kw) -> Gate:
    return Gate("Ry", t, params=(angle,), **kw)


def rx(angle: float, t: int, **kw) -> Gate:
    return Gate("Rx", t, params=(angle,), **kw)


def p(angle: float, t: int, **kw) -> Gate:
    return Gate("P", t, params=(angle,), **kw)


def u2(params: tuple[float, float, float, float], t: int, **kw) -> Gate:
    return Gate("U2", t, params=tuple(params), **kw)


def cx(c: int, t: int, **kw) -> Gate:
    return Gate("CX", t, control=c, **kw)


def cp(angle: float, c: int, t: int, **kw) -> Gate:
    return Gate("CP", t, control=c, params=(angle,), **kw)


def crz(angle: float, c: int, t: int, **kw) -> Gate:
    return Gate("CRz", t, control=c, params=(angle,), **kw)


def crx(angle: float, c: int, t: int, **kw) -> Gate:
    return Gate("CRx", t, control=c, params=(angle,), **kw)


def cu2(params: tuple[float, float, float, float], c: int, t: int, **kw) -> Gate:
    return Gate("CU2", t, control=c, params=tuple(params), **kw)


def swap(a: int, b: int, **kw) -> Gate:
    return Gate("SWAP", b, control=a, **kw)
