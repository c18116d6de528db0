"""Acceptance suite: one test per criterion, printing a PASS line each.

Run with ``pytest tests/test_acceptance.py -v -s``. Criterion 6 is split:
6a carries the attainable clauses; 6b asserts the L >= 1.45 threshold as
stated, which exact ideal theory caps at 1.4121 (analysis in the 6b test
docstring) and which is left honestly red rather than weakened.
"""

import math
import time

import numpy as np
import pytest

from modosc import threelevel as tl
from modosc.classical import (
    ClassicalFieldParams,
    classical_q_expect,
    classical_q_expect_mc,
    classical_sequential_sit,
    q_trace,
)
from modosc.cli import _nsit_suite_rows
from modosc.fock import StateSpec, make_state, overlap_matrix, plan_dim
from modosc.formulas import (
    corr_asymmetric,
    corr_symmetric,
    geometric_phase,
    sit_asymmetric,
    sit_symmetric,
)
from modosc.lgi import continuation_chain, lgi_closed, lgi_value, run_sit_protocol
from modosc.measure import ModularSetting, measure_once, measure_sequence, signaling
from modosc.noise import NoiseParams, noisy_lgi_value

PI = math.pi


def _report(num, text):
    print(f"\nACCEPTANCE {num}: PASS - {text}")


@pytest.fixture(scope="module")
def lgi_chains():
    """Continuation chains for the three temperatures, shared by 6/7/8."""
    grid = np.round(np.arange(0.2, 3.0001, 0.05), 10)
    return {
        nbar: continuation_chain(grid, nbar=nbar, seed=2, n_restarts=40)
        for nbar in (0.0, 0.23, 0.42)
    }


def test_criterion_01_oracle_equivalence():
    """500 randomized experiments: closed forms match trees to 1e-8, < 2 min."""
    t0 = time.time()
    rng = np.random.default_rng(777)
    kinds = ["vacuum", "coherent", "squeezed", "fock1", "thermal", "cat"]
    worst = 0.0
    for i in range(500):
        kind = kinds[i % len(kinds)]
        if kind == "coherent":
            spec = StateSpec(kind="coherent", alpha=complex(rng.uniform(-1, 1), rng.uniform(-1, 1)))
        elif kind == "squeezed":
            spec = StateSpec(kind="squeezed", xi=float(rng.uniform(-0.9, 0.9)))
        elif kind == "fock1":
            spec = StateSpec(kind="fock", n=1)
        elif kind == "thermal":
            spec = StateSpec(kind="thermal", nbar=float(rng.uniform(0, 0.6)))
        elif kind == "cat":
            spec = StateSpec(kind="cat", beta=complex(rng.uniform(-2, 2), rng.uniform(-2, 2)), base=StateSpec())
        else:
            spec = StateSpec()
        a_a = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
        a_b = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
        variant = ("symmetric", "asymmetric")[i % 2]
        phi_a = float(rng.uniform(0, 2 * PI))
        phi_b = float(rng.uniform(0, 2 * PI))
        if variant == "symmetric":
            sa, sb = ModularSetting(alpha=a_a), ModularSetting(alpha=a_b)
        else:
            sa = ModularSetting(alpha=a_a, phi=phi_a, variant="asymmetric")
            sb = ModularSetting(alpha=a_b, phi=phi_b, variant="asymmetric")
        dim = plan_dim(spec, sa.reach() + sb.reach() + abs(a_a) + abs(a_b))
        st = make_state(spec, dim)
        m_b = overlap_matrix(st, a_b)
        m_minus = overlap_matrix(st, a_a - a_b)
        m_plus = overlap_matrix(st, a_a + a_b)
        # one tree serves both the correlator and the signaling marginal
        tree = measure_sequence(st, [sa, sb])
        corr_tree = sum(o[0] * o[1] * leaf.probability for o, leaf in tree.leaves())
        p_b_after_a = tree.marginal(1, 1)
        s_tree = measure_once(st, sb).p_plus - p_b_after_a
        if variant == "symmetric":
            s_formula = sit_symmetric(a_a, a_b, m_b)
            c_formula = corr_symmetric(a_a, a_b, m_minus, m_plus)
        else:
            s_formula = sit_asymmetric(a_a, a_b, phi_b, m_b)
            c_formula = corr_asymmetric(a_a, a_b, phi_a, phi_b, m_minus, m_plus)
        worst = max(worst, abs(s_tree - s_formula), abs(corr_tree - c_formula))
        assert abs(s_tree - s_formula) < 1e-8
        assert abs(corr_tree - c_formula) < 1e-8
    elapsed = time.time() - t0
    assert elapsed < 120
    _report(1, f"oracle equivalence over 500 experiments, worst |dev| = {worst:.2e}, {elapsed:.0f} s")


def test_criterion_02_nsit_exactness():
    """fig2 suite: exact NSIT at alpha_A = 4; max |S| = 0.5 ± 0.01 at alpha_A = 3."""
    t0 = time.time()
    bases = [StateSpec(), StateSpec(kind="squeezed", xi=-0.82), StateSpec(kind="fock", n=1)]
    rows, _ = _nsit_suite_rows(bases, 50, 4.0, PI * 1j, 3.0, threads=1, dim_override=None)
    assert len(rows) == 150
    s_nsit = np.array([r[5] for r in rows])
    s_sit = np.array([r[6] for r in rows])
    assert np.max(np.abs(s_nsit)) < 1e-9
    assert abs(np.max(np.abs(s_sit)) - 0.5) < 0.01
    elapsed = time.time() - t0
    assert elapsed < 300
    _report(2, f"NSIT suite: max|S|(4.0) = {np.max(np.abs(s_nsit)):.1e}, "
               f"max|S|(3.0) = {np.max(np.abs(s_sit)):.4f}, {elapsed:.0f} s")


def test_criterion_03_fig1a_ideal_curve():
    """S(r) matches (1 - cos 9.362)/2 * exp(-4.805 e^{-2r}) to 1e-8."""
    a_a, a_b = 3.02, 3.1j
    sa, sb = ModularSetting(alpha=a_a), ModularSetting(alpha=a_b)
    worst = 0.0
    for r in np.round(np.arange(0.0, 1.5001, 0.05), 10):
        spec = StateSpec(kind="squeezed", xi=float(r))
        dim = plan_dim(spec, sa.reach() + sb.reach() + abs(a_b))
        st = make_state(spec, dim)
        s_tree = signaling(st, sa, sb)["s"]
        expected = 0.5 * (1 - math.cos(9.362)) * math.exp(-4.805 * math.exp(-2 * r))
        worst = max(worst, abs(s_tree - expected))
        assert abs(s_tree - expected) < 1e-8
    # limits
    s_inf = sit_symmetric(a_a, a_b, 1.0 + 0j)
    assert abs(s_inf - 0.999) < 1e-3
    s_zero = 0.5 * (1 - math.cos(9.362)) * math.exp(-4.805)
    assert abs(s_zero - 8.2e-3) < 1e-4
    _report(3, f"fig1a curve pointwise dev {worst:.1e}; S(0) = {s_zero:.2e}, S(inf) = {s_inf:.4f}")


def test_criterion_04_fig1b_zeros_and_amplitude():
    """Zeros of S at alpha_A = 2k to 1e-8; oscillation amplitude = |m_cat| to 1e-6."""
    spec = StateSpec(kind="cat", beta=PI * 1j, base=StateSpec())
    sb = ModularSetting(alpha=PI * 1j)
    values = {}
    for a_a in np.round(np.arange(0.0, 4.5001, 0.05), 10):
        sa = ModularSetting(alpha=complex(a_a))
        dim = plan_dim(spec, sa.reach() + sb.reach() + PI)
        st = make_state(spec, dim)
        values[float(a_a)] = signaling(st, sa, sb)["s"]
    for k in (0.0, 2.0, 4.0):
        assert abs(values[k]) < 1e-8
    amplitude = max(values.values()) - min(values.values())
    dim = plan_dim(spec, 2 * PI)
    m_cat = abs(overlap_matrix(make_state(spec, dim), PI * 1j))
    assert abs(amplitude - m_cat) < 1e-6
    _report(4, f"fig1b: zeros at 2k (<1e-8), amplitude {amplitude:.6f} = |m| {m_cat:.6f}")


def test_criterion_05_fig3a_map():
    """Asymmetric correlator map matches the printed formula to 1e-8."""
    a_a, phi_a, phi_b = 2.1, 0.0, PI / 2
    spec = StateSpec()
    worst = 0.0
    res = np.round(np.arange(-3.5, 3.5001, 0.07), 10)
    ims = np.round(np.arange(-2.0, 2.0001, 0.08), 10)
    for re_b in res:
        for im_b in ims:
            a_b = complex(re_b, im_b)
            from modosc.formulas import overlap_closed_form

            c = corr_asymmetric(
                a_a, a_b, phi_a, phi_b,
                overlap_closed_form(spec, a_a - a_b),
                overlap_closed_form(spec, a_a + a_b),
            )
            phi = 2.1 * im_b
            want = -(math.exp(-abs(2.1 - a_b) ** 2 / 2) + math.exp(-abs(2.1 + a_b) ** 2 / 2)) * math.sin(phi) / 2
            worst = max(worst, abs(c - want))
            assert abs(c - want) < 1e-8
    # sign change across the real axis is the geometric phase alone
    for re_b in (1.0, 2.1, -1.5):
        up = corr_asymmetric(a_a, complex(re_b, 0.3), phi_a, phi_b,
                             overlap_closed_form(spec, a_a - complex(re_b, 0.3)),
                             overlap_closed_form(spec, a_a + complex(re_b, 0.3)))
        down = corr_asymmetric(a_a, complex(re_b, -0.3), phi_a, phi_b,
                               overlap_closed_form(spec, a_a - complex(re_b, -0.3)),
                               overlap_closed_form(spec, a_a + complex(re_b, -0.3)))
        assert abs(up + down) < 1e-12
        assert up != 0.0
    # matrix-engine cross-check on a diagonal cut
    for a_b in (2.1 * np.exp(0.3j), 1.3 - 0.8j):
        sa = ModularSetting(alpha=a_a, phi=phi_a, variant="asymmetric")
        sb = ModularSetting(alpha=a_b, phi=phi_b, variant="asymmetric")
        dim = plan_dim(spec, sa.reach() + sb.reach())
        st = make_state(spec, dim)
        tree = measure_sequence(st, [sa, sb])
        c_tree = sum(o[0] * o[1] * leaf.probability for o, leaf in tree.leaves())
        want = -(math.exp(-abs(2.1 - a_b) ** 2 / 2) + math.exp(-abs(2.1 + a_b) ** 2 / 2)) * math.sin(2.1 * a_b.imag) / 2
        assert abs(c_tree - want) < 1e-8
    _report(5, f"fig3a map formula dev {worst:.1e}, sign change verified")


def test_criterion_06a_lgi_ideal_violation_and_temperature(lgi_chains):
    """L > 1 for the ground state across amp in [0.5, 3]; L_opt decreases with nbar."""
    t0 = time.time()
    ground = {amp: res.l_value for amp, _, res in lgi_chains[0.0]}
    for amp, l in ground.items():
        if 0.5 - 1e-9 <= amp <= 3.0 + 1e-9:
            assert l > 1.0, f"L({amp}) = {l}"
    for amp in (0.5, 1.0, 1.5, 2.0, 2.5, 3.0):
        l0 = dict((a, r.l_value) for a, _, r in lgi_chains[0.0])[amp]
        l23 = dict((a, r.l_value) for a, _, r in lgi_chains[0.23])[amp]
        l42 = dict((a, r.l_value) for a, _, r in lgi_chains[0.42])[amp]
        assert l0 >= l23 - 1e-9 >= l42 - 2e-9
    # tree verification of the closed-form optimum at two grid points
    by_amp = {a: s for a, s, _ in lgi_chains[0.0]}
    for amp in (1.0, 3.0):
        closed = lgi_closed(by_amp[amp]).l_value
        tree = lgi_value(by_amp[amp]).l_value
        assert abs(closed - tree) < 1e-8
    elapsed = time.time() - t0
    assert elapsed < 1800
    _report("6a", f"LGI ideal: L > 1 on [0.5, 3.0] (min {min(v for a, v in ground.items() if 0.5 <= a <= 3.0):.4f}), "
                  f"monotone in nbar, tree-verified; {elapsed:.0f} s")


def test_criterion_06b_lgi_threshold_as_written(lgi_chains):
    """Acceptance threshold L >= 1.45 for amp >= 2.5, asserted as stated.

    Exact ideal theory caps max L at 1.3807 (amp 2.5) and 1.4121 (amp 3.0);
    the 1.5 limit is approached only asymptotically in amp (1.465 at amp 5,
    1.486 at amp 8, 1.496 at amp 15; deficit ~ 1/amp^2 through the overlap
    penalty exp(-(Phi/amp)^2/2) at optimal geometric phase). Verified with
    dense multi-start simplex search, differential evolution and a
    constructed near-pi-separation configuration, all tree-checked. This
    test is expected to fail; left red deliberately rather than weakened.
    """
    for amp, _, res in lgi_chains[0.0]:
        if amp >= 2.5 - 1e-9:
            assert res.l_value >= 1.45, (
                f"L({amp}) = {res.l_value:.4f} < 1.45: exact ideal-theory maximum "
                f"(global optimizer + branch-tree verified) falls short of the "
                f"stated threshold; see this test's docstring"
            )
    _report("6b", "LGI threshold 1.45 at amp >= 2.5")


def test_criterion_07_penalized_lgi(lgi_chains):
    """TS < 0.05 and L - TS > 1.3 for amp >= 2.5 at the ideal optimum."""
    checked = 0
    for amp, _, res in lgi_chains[0.0]:
        if amp >= 2.5 - 1e-9:
            assert res.ts < 0.05, f"TS({amp}) = {res.ts}"
            assert res.l_penalized > 1.3, f"L_pen({amp}) = {res.l_penalized}"
            checked += 1
    assert checked >= 10
    ts3 = dict((a, r.ts) for a, _, r in lgi_chains[0.0])[3.0]
    _report(7, f"penalized LGI: TS < 0.05 and L - TS > 1.3 on [2.5, 3.0] ({checked} points, TS(3.0) = {ts3:.4f})")


def test_criterion_08_noise_simulation(lgi_chains):
    """Reported noise levels: L_noisy < L_ideal, > 1 at amp 1, drop > 0.05 at amp 3."""
    t0 = time.time()
    params = NoiseParams()
    by_amp = {a: (s, r) for a, s, r in lgi_chains[0.0]}
    drops = {}
    for amp in (0.5, 1.0, 1.5, 2.0, 2.5, 3.0):
        settings, res = by_amp[amp]
        l_noisy = noisy_lgi_value(settings, params, seed=10)
        assert l_noisy < res.l_value
        drops[amp] = res.l_value - l_noisy
        if amp == 1.0:
            assert l_noisy > 1.0
        if amp == 3.0:
            assert res.l_value - l_noisy > 0.05
    elapsed = time.time() - t0
    _report(8, f"noise: drops {', '.join(f'{a}: {d:.3f}' for a, d in drops.items())}; {elapsed:.0f} s")


def test_criterion_09_three_level_oracle():
    """Asymmetric Kraus vs pulse sequence to 1e-10 on 100 cases; P(down) = 1 block."""
    rng = np.random.default_rng(99)
    worst = 0.0
    for _ in range(100):
        alpha = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        phi = float(rng.uniform(0, 2 * PI))
        pick = rng.random()
        spec = StateSpec() if pick < 0.5 else StateSpec(kind="coherent", alpha=complex(rng.uniform(-1, 1), rng.uniform(-1, 1)))
        dim = plan_dim(spec, abs(alpha) + 1.0)
        psi = make_state(spec, dim)
        out = tl.asymmetric_sequence(psi, alpha, phi)
        probs = tl.branch_probabilities(out)
        res = measure_once(psi, ModularSetting(alpha=alpha, phi=phi, variant="asymmetric"))
        dev = max(abs(probs[+1] - res.p_plus), abs(probs[-1] - res.p_minus))
        worst = max(worst, dev)
        assert dev < 1e-10
        p, v = out.branch(tl.DOWN)
        if res.post_plus is not None and p > 1e-9:
            fid = abs(np.vdot(v, res.post_plus.amplitudes)) ** 2
            worst = max(worst, 1 - fid)
            assert fid >= 1 - 1e-10
        # inner-block invariance
        inner = tl.inner_block(tl.from_oscillator(psi, tl.DOWN), alpha)
        assert abs(inner.level_population(tl.DOWN) - 1.0) < 1e-12
    _report(9, f"three-level oracle: 100 cases, worst deviation {worst:.1e}")


def test_criterion_10_gkp_limit():
    """S of the GKP comb increases monotonically toward 1, exceeding 0.9."""
    s_spacing = math.sqrt(PI)
    alpha_a = 1j * PI / s_spacing
    alpha_b = complex(s_spacing)
    sa, sb = ModularSetting(alpha=alpha_a), ModularSetting(alpha=alpha_b)
    values = []
    for delta in (0.8, 0.6, 0.5, 0.4, 0.36):
        spec = StateSpec(kind="gkp", spacing=s_spacing, envelope=delta)
        dim = plan_dim(spec, sa.reach() + sb.reach())
        st = make_state(spec, dim)
        values.append(signaling(st, sa, sb)["s"])
    assert all(b > a for a, b in zip(values, values[1:]))
    assert all(v < 1.0 for v in values)
    assert values[-1] > 0.9
    _report(10, f"GKP limit: S = {', '.join(f'{v:.4f}' for v in values)} (monotone, > 0.9)")


def test_criterion_11_classical_separation():
    """Classical sequential S = 0 while quantum max-SIT gives |S| ~ 1/2."""
    pb = ClassicalFieldParams(8000.0, 1000.0, 50.0, 0.003, 0.0)
    pc = ClassicalFieldParams(8000.0, 1000.0, 50.0, 0.007, 0.4)
    assert classical_sequential_sit(pb, pc, mode="analytic") == 0.0
    s_mc = classical_sequential_sit(pb, pc, mode="mc", n_shots=10 ** 6, seed=3)
    assert abs(s_mc) < 5e-3

    spec = StateSpec(kind="cat", beta=PI * 1j, base=StateSpec())
    sa, sb = ModularSetting(alpha=1.0), ModularSetting(alpha=PI * 1j)
    dim = plan_dim(spec, sa.reach() + sb.reach())
    s_quantum = signaling(make_state(spec, dim), sa, sb)["s"]
    assert abs(abs(s_quantum) - 0.5) < 0.01

    waits = np.linspace(0, 0.02, 201)
    for a0 in (8000.0, 5000.0, 2000.0):
        trace = q_trace(a0, 1000.0, 50.0, 0.0, waits)
        assert np.all(np.abs(trace) <= 1.0)
        assert abs(trace[0] + 1.0) < 1e-12
        p = ClassicalFieldParams(a0, 1000.0, 50.0, 0.004, 0.0)
        mc = classical_q_expect_mc(p, 10 ** 6, seed=int(a0))
        assert abs(mc - classical_q_expect(p)) < 5e-3
    _report(11, f"classical separation: S_cl = 0, |S_quantum| = {abs(s_quantum):.4f}, traces for 3 amplitudes")


def test_criterion_12_sit_to_lgi_protocol():
    """End-to-end protocol: L = 1 + 2a to 1e-10 whenever S > 0."""
    rng = np.random.default_rng(12)
    checked = 0
    worst = 0.0
    for _ in range(12):
        spec = StateSpec(kind="cat", beta=complex(rng.uniform(-2, 2), rng.uniform(-2, 2)), base=StateSpec())
        sb = ModularSetting(alpha=complex(rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5)))
        sc = ModularSetting(alpha=complex(rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5)))
        dim = plan_dim(spec, sb.reach() + sc.reach())
        st = make_state(spec, dim)
        if abs(signaling(st, sb, sc)["s"]) < 1e-6:
            continue
        proto = run_sit_protocol(st, sb, sc)
        dev = abs(proto.l_value - (1 + 2 * proto.a))
        worst = max(worst, dev)
        assert dev < 1e-10
        assert proto.l_value > 1.0
        checked += 1
    assert checked >= 6
    # the quoted experimental maximum |S| = 0.087 gives L = 1.174
    from modosc.lgi import sit_to_lgi_protocol

    assert abs(sit_to_lgi_protocol(0.087).l_value - 1.174) < 1e-12
    _report(12, f"SIT->LGI protocol exact on {checked} experiments (worst dev {worst:.1e})")
