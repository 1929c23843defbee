"""
Trading exactness for gates with the approximate QFT
====================================================

Small controlled-phase rotations contribute almost nothing to the
unitary but cost as much as large ones after lowering.  Truncating every
rotation finer than pi/2^(m-1) leaves an approximate transform; because
the discarded angles shrink geometrically, the error is tiny long before
the cutoff reaches full precision.
"""

import numpy as np

from qftmcu.circuit import count_gates
from qftmcu.synthesis import SynthConfig, apply_aqft, build, default_aqft_cutoff
from qftmcu.verifier import circuit_unitary

u = np.array([[np.exp(-0.25j), 0], [0, np.exp(0.25j)]])
n = 8

full = build(SynthConfig("mcu-mod", n, u=u))
u_full = circuit_unitary(full)

print(f"mcu-mod at n={n}: {len(full.gates)} gates exact\n")
print("cutoff   CP gates   max |U_trunc - U_full|")
for m in range(2, n + 1):
    trunc = apply_aqft(full, m)
    dev = np.abs(circuit_unitary(trunc) - u_full).max()
    mark = "  <- default" if m == default_aqft_cutoff(n) else ""
    print(f"  {m:2d}      {count_gates(trunc).get('CP', 0):4d}       {dev:.3e}{mark}")

# The default cutoff is ceil(log2 n): error comparable to what coherent
# noise would do to the exact circuit anyway, at a large CP discount.
mu = default_aqft_cutoff(n)
trunc = build(SynthConfig("mcu-mod", n, u=u, aqft_cutoff=mu))
print(f"\ndefault cutoff for n={n} is {mu}: "
      f"{count_gates(full)['CP']} -> {count_gates(trunc)['CP']} controlled phases")
