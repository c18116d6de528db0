"""Grid states maximize signaling, and any signaling buys an LGI violation.

A GKP comb is invariant under its spacing displacement (m -> 1) while the
conjugate modular measurement sits at geometric phase pi: S -> 1 in the
ideal-comb limit. And the assignment protocol turns ANY observed signaling
gap a into an explicit Leggett-Garg violation L = 1 + 2a.
"""

import math

from modosc import ModularSetting, StateSpec, make_state, plan_dim, signaling
from modosc.lgi import run_sit_protocol, sit_to_lgi_protocol

spacing = math.sqrt(math.pi)
alpha_a = 1j * math.pi / spacing
alpha_b = complex(spacing)

print("GKP envelope Delta -> signaling S (ideal comb gives S = 1):")
for delta in (0.8, 0.5, 0.36):
    spec = StateSpec(kind="gkp", spacing=spacing, envelope=delta)
    dim = plan_dim(spec, abs(alpha_a) / 2 + abs(alpha_b) / 2)
    st = make_state(spec, dim)
    s = signaling(st, ModularSetting(alpha=alpha_a), ModularSetting(alpha=alpha_b))["s"]
    print(f"  Delta = {delta:4.2f}  (dim {dim:3d}):  S = {s:.4f}")

print("\nSIT -> LGI protocol on a cat-state experiment:")
spec = StateSpec(kind="cat", beta=math.pi * 1j, base=StateSpec())
sb, sc = ModularSetting(alpha=1.0), ModularSetting(alpha=math.pi * 1j)
dim = plan_dim(spec, sb.reach() + sc.reach())
proto = run_sit_protocol(make_state(spec, dim), sb, sc)
print(f"  observed gap a = {proto.a:.4f}  ->  L = 1 + 2a = {proto.l_value:.4f}")
print(f"  assignments: f_A = {proto.f_a}, f_B = {proto.f_b}, f_C = {proto.f_c}")

quoted = sit_to_lgi_protocol(0.087)
print(f"  (at the largest measured |S| = 0.087 the protocol gives L = {quoted.l_value:.3f})")
