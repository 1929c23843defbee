"""
The QFT block and the +1 / -1 circuits built from it
====================================================

Everything in this toolkit hangs off one identity: conjugating a phase
ladder by the quantum Fourier transform turns "add a phase per basis
state" into "add one modulo 2^k".  This script builds the pieces and
checks them numerically.
"""

import numpy as np

from qftmcu.synthesis import build_qft, build_increment, build_decrement
from qftmcu.verifier import circuit_unitary

# --- 1. the QFT on k wirelines is the DFT with its output bits reversed ---

k = 3
qft = build_qft(k)
got = circuit_unitary(qft)

N = 1 << k
dft = np.exp(2j * np.pi * np.outer(np.arange(N), np.arange(N)) / N) / np.sqrt(N)

# bit-reversal permutation on k bits
rev = [int(format(i, f"0{k}b")[::-1], 2) for i in range(N)]
perm = np.eye(N)[rev]

print(f"QFT on {k} qubits: {len(qft.gates)} gates")
print("  max |QFT - reversal @ DFT| =", np.abs(got - perm @ dft).max())

# --- 2. increment = QFT . phase ladder . inverse QFT ---

inc = build_increment(k)
u_inc = circuit_unitary(inc)

# an increment permutes basis states cyclically: |x> -> |x+1 mod 8>
expected = np.zeros((N, N))
for x in range(N):
    expected[(x + 1) % N, x] = 1

print(f"\nincrement on {k} qubits: {len(inc.gates)} gates")
print("  max |U - cyclic shift| =", np.abs(u_inc - expected).max())

# --- 3. decrement is the exact inverse ---

dec = build_decrement(k)
u_dec = circuit_unitary(dec)
print("\nincrement @ decrement = identity:",
      np.allclose(u_inc @ u_dec, np.eye(N), atol=1e-12))

# Peek at the gate list: the ladder angles halve wire by wire,
# which is the whole trick.
print("\ngate list for the increment:")
for g in inc.gates:
    angle = f", angle {g.params[0]/np.pi:+.4f} pi" if g.params else ""
    wires = f"{g.control}->{g.target}" if g.control else f"{g.target}"
    print(f"  {g.kind:3s} on {wires}{angle}")
