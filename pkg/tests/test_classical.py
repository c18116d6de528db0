import math

import numpy as np
import pytest

from modosc.classical import (
    ClassicalFieldParams,
    classical_q_expect,
    classical_q_expect_mc,
    classical_sequential_sit,
    q_trace,
)
from modosc.fock import StateSpec, make_state, plan_dim
from modosc.measure import ModularSetting, signaling


def test_no_noise_limit():
    p = ClassicalFieldParams(a0=0.0, sigma=0.0, f=50.0, wait=0.01, phi=0.7)
    assert classical_q_expect(p) == pytest.approx(-math.cos(0.7))


def test_envelope_decays():
    """The printed growing exponent is a typo; the average must contract."""
    p = ClassicalFieldParams(a0=8000.0, sigma=1000.0, f=50.0, wait=0.004, phi=0.0)
    assert abs(classical_q_expect(p)) <= 1.0
    big = ClassicalFieldParams(a0=8000.0, sigma=4000.0, f=50.0, wait=0.004, phi=0.0)
    assert abs(classical_q_expect(big)) <= abs(classical_q_expect(p)) + 1e-12


def test_monte_carlo_oracle_matches_closed_form():
    rng = np.random.default_rng(6)
    for i in range(4):
        p = ClassicalFieldParams(
            a0=float(rng.uniform(1000, 9000)),
            sigma=float(rng.uniform(100, 2000)),
            f=50.0,
            wait=float(rng.uniform(0.0005, 0.02)),
            phi=float(rng.uniform(0, 2 * math.pi)),
        )
        mc = classical_q_expect_mc(p, 10 ** 6, seed=i)
        assert abs(mc - classical_q_expect(p)) < 1e-3 * 5


def test_si_panel_parameters_produce_revival_traces():
    waits = np.linspace(0, 0.02, 401)
    for a0 in (8000.0, 5000.0, 2000.0):
        trace = q_trace(a0, 1000.0, 50.0, 0.0, waits)
        assert np.all(np.abs(trace) <= 1.0)
        assert trace[0] == pytest.approx(-1.0)  # T=0: no phase, <Q> = -cos(0)
        # revival at the half-period of the noise (sin(2 pi f T) = 0)
        half = np.argmin(np.abs(waits - 0.01))
        assert abs(trace[half] + 1.0) < 1e-9
        # decoherence-looking collapse in between
        assert np.min(np.abs(trace[50:150])) < 0.2


def test_sequential_sit_zero_analytic_and_mc():
    pb = ClassicalFieldParams(8000.0, 1000.0, 50.0, 0.003, 0.0)
    pc = ClassicalFieldParams(8000.0, 1000.0, 50.0, 0.007, 0.4)
    assert classical_sequential_sit(pb, pc, mode="analytic") == 0.0
    n = 10 ** 6
    s = classical_sequential_sit(pb, pc, mode="mc", n_shots=n, seed=3)
    assert abs(s) < 5 / math.sqrt(n)


def test_quantum_engine_contrast():
    """At the max-SIT setting the quantum engine shows |S| ~ 1/2, classical 0."""
    spec = StateSpec(kind="cat", beta=math.pi * 1j, base=StateSpec())
    sa = ModularSetting(alpha=1.0)
    sb = ModularSetting(alpha=math.pi * 1j)
    dim = plan_dim(spec, sa.reach() + sb.reach())
    st = make_state(spec, dim)
    s_quantum = signaling(st, sa, sb)["s"]
    q = math.exp(-math.pi ** 2 / 2)
    m_cat = (1 + 2 * q + q ** 4) / (2 * (1 + q))
    assert abs(s_quantum - m_cat) < 1e-10  # Phi = pi: S = Re m
    assert abs(abs(s_quantum) - 0.5) < 0.01
