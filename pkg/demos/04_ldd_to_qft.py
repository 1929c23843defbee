"""
Recognizing a naive expansion and rewriting it wholesale
========================================================

The ldd builder spells out one full QFT / inverse-QFT pair per ladder
column.  That is correct and easy to reason about, but almost all of
those transforms cancel telescopically.  The ldd-to-qft pass recognizes
the pattern structurally and replaces the whole circuit with the
single-transform-pair form -- same unitary, a fraction of the gates.
"""

import numpy as np

from qftmcu.circuit import structural_equal
from qftmcu.gate_algebra import random_unitary
from qftmcu.layout import lower_to_ngs
from qftmcu.linalg import equal_up_to_global_phase
from qftmcu.optimizer import ldd_to_qft
from qftmcu.synthesis import SynthConfig, build
from qftmcu.verifier import circuit_unitary

u = random_unitary(np.random.default_rng(3))

print("n   ldd gates  rewritten  native before/after  ratio")
for n in range(4, 10):
    ldd = build(SynthConfig("ldd", n, u=u))
    slim, report = ldd_to_qft(ldd)
    nb = sum(lower_to_ngs(ldd).counts().values())
    na = sum(lower_to_ngs(slim).counts().values())
    print(f"{n}   {len(ldd.gates):6d}     {len(slim.gates):6d}     "
          f"{nb:5d} / {na:5d}      {nb/na:.2f}x")

# the rewrite lands exactly on what the direct builder would have made
n = 6
slim, _ = ldd_to_qft(build(SynthConfig("ldd", n, u=u)))
direct = build(SynthConfig("mcu-mod", n, u=u))
print("\nrewrite == direct mcu-mod build:", structural_equal(slim, direct))

ok, phase, dev = equal_up_to_global_phase(
    circuit_unitary(slim),
    circuit_unitary(build(SynthConfig("ldd", n, u=u))),
    1e-9,
)
print(f"unitary preserved: {ok} (deviation {dev:.2e})")

# and it refuses inputs that are not actually the naive expansion
mcx = build(SynthConfig("mcx-qft", n))
_, report = ldd_to_qft(mcx)
print(f"\non an mcx-qft circuit: refused={report.refused} ({report.detail})")
