"""Violating the Leggett-Garg inequality with three modular measurements.

L = C_AB + C_BC - C_AC <= 1 for any macro-realist description. Optimizing
the three displacement directions and qubit phases at fixed |alpha| pushes L
toward the quantum bound 1.5 as the displacement grows; finite temperature
and realistic dephasing eat into the violation.
"""

import numpy as np

from modosc.lgi import continuation_chain, lgi_value
from modosc.noise import NoiseParams, noisy_lgi_value

grid = np.round(np.arange(0.2, 2.0001, 0.05), 10)
chain = continuation_chain(grid, nbar=0.0, seed=2, n_restarts=25)
by_amp = {a: (s, r) for a, s, r in chain}

print("amp    L (ideal)   TS      L - TS    L (noisy)")
params = NoiseParams(n_phase_samples=1500)
for amp in (0.5, 1.0, 1.5, 2.0):
    settings, res = by_amp[amp]
    l_noisy = noisy_lgi_value(settings, params, seed=0)
    print(f"{amp:4.2f}   {res.l_value:8.4f}   {res.ts:6.4f}   {res.l_penalized:7.4f}   {l_noisy:8.4f}")

settings, res = by_amp[1.0]
exact = lgi_value(settings)
print(f"\nexact branch-tree check at amp = 1: L = {exact.l_value:.10f} "
      f"(closed form {res.l_value:.10f})")
print("Noise always lowers L; the penalized value L - TS certifies the")
print("violation without trusting the measurements to be non-invasive.")
