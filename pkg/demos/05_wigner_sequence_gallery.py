"""Wigner functions through a measurement sequence: 2 -> 4 -> 8 components.

Each heralded modular measurement doubles the number of displaced wave
packets in the surviving branch. The ASCII rendering below marks positive
(+) and negative (-) Wigner regions; negativity survives the whole sequence.
"""

import math

import numpy as np

from modosc import ModularSetting, StateSpec, make_state, measure_once, plan_dim
from modosc.wigner import wigner_grid

spec = StateSpec(kind="cat", beta=math.pi * np.exp(1.22j), base=StateSpec())
sa = ModularSetting(alpha=4.09)
sb = ModularSetting(alpha=math.pi * 1j)
dim = plan_dim(spec, sa.reach() + sb.reach())

state = make_state(spec, dim)
states = [("input cat (2 packets)", state)]
state = measure_once(state, sa).post_plus
states.append(("after A, +1 branch (4 packets)", state))
state = measure_once(state, sb).post_plus
states.append(("after B, +1 branch (8 packets)", state))

for label, st in states:
    grid = wigner_grid(st, extent=7.0, resolution=61)
    print(f"\n{label}:  min W = {grid.min_value():+.4f}, integral = {grid.integral():.3f}")
    peak = np.abs(grid.values).max()
    for row in grid.values[::4]:
        line = "".join(
            "+" if v > 0.15 * peak else ("-" if v < -0.15 * peak else ".")
            for v in row[::2]
        )
        print("   " + line)
