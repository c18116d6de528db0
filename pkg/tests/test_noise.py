import math

import numpy as np
import pytest

from modosc.fock import MixedState, StateSpec, make_state, plan_dim
from modosc.lgi import LgiSettings, continuation_chain, lgi_closed
from modosc.measure import ModularSetting, correlator
from modosc.noise import (
    NoiseParams,
    build_noisy_pair,
    evolve_sdf_lindblad,
    make_joint_state,
    noisy_correlator,
    noisy_lgi_curve,
    noisy_lgi_value,
    qubit_phase_average,
    sigma_phase,
)

SILENT = NoiseParams(dephasing_rate=0.0, linewidth_fwhm=0.0, phase_offset=0.0, n_phase_samples=16)


def test_params_validation_and_defaults():
    p = NoiseParams()
    assert p.dephasing_rate == 30.0
    assert p.linewidth_fwhm == 665.0
    assert p.phase_offset == 0.087
    assert p.n_phase_samples == 4000
    with pytest.raises(ValueError):
        NoiseParams(dephasing_rate=-1)


def test_sigma_phase_formula():
    p = NoiseParams()
    sigma = sigma_phase(70.0, p)
    assert abs(sigma - (665 * math.pi * 70e-6 / math.sqrt(2 * math.log(2)) + 0.087)) < 1e-12
    assert abs(sigma - 0.2112) < 5e-4
    assert sigma_phase(70.0, SILENT) == 0.0


def test_sdf_noiseless_limit_is_exact_unitary():
    """rate = 0: channel equals the exact D(alpha sigma_x / 2) action."""
    from modosc.fock import displacement_matrix

    n = 40
    osc = make_state(StateSpec(kind="coherent", alpha=0.4j), n)
    joint = make_joint_state(0, osc.to_mixed())
    alpha = 1.4 - 0.6j
    out = evolve_sdf_lindblad(joint, alpha, 0.0, SILENT)
    # build the exact unitary on 2N
    had = np.array([[1, 1], [1, -1]]) / math.sqrt(2)
    dp = displacement_matrix(alpha / 2, n).matrix
    u_x = np.kron(np.outer(had[:, 0], had[:, 0]), dp) + np.kron(np.outer(had[:, 1], had[:, 1]), dp.conj().T)
    expect = u_x @ joint.matrix @ u_x.conj().T
    assert np.max(np.abs(out.matrix - expect)) < 1e-12


def test_sdf_lindblad_preserves_trace_and_hermiticity():
    n = 36
    osc = make_state(StateSpec(kind="thermal", nbar=0.3), n)
    joint = make_joint_state(0, osc)
    params = NoiseParams(n_phase_samples=16)
    out = evolve_sdf_lindblad(joint, 1.0, 0.0, params)
    assert abs(np.trace(out.matrix).real - 1.0) < 1e-8
    assert np.max(np.abs(out.matrix - out.matrix.conj().T)) < 1e-10
    assert np.linalg.eigvalsh(out.matrix).min() > -1e-8


def test_sdf_lindblad_purity_decreases():
    """rate = 30/s over a 90 us pulse degrades purity measurably."""
    n = 60
    osc = make_state("vacuum", n)
    joint = make_joint_state(0, osc.to_mixed())
    params = NoiseParams(sdf_time_per_unit=90.0, n_phase_samples=16)  # |alpha| = 1 -> 90 us
    out = evolve_sdf_lindblad(joint, 1.0, 0.0, params)
    purity = float(np.trace(out.matrix @ out.matrix).real)
    assert purity < 1.0 - 1e-4
    noiseless = evolve_sdf_lindblad(joint, 1.0, 0.0, SILENT)
    assert float(np.trace(noiseless.matrix @ noiseless.matrix).real) > 1 - 1e-10


def test_sdf_integrator_step_doubling():
    n = 40
    osc = make_state(StateSpec(kind="thermal", nbar=0.2), n)
    joint = make_joint_state(0, osc)
    params = NoiseParams(n_phase_samples=16)
    coarse = evolve_sdf_lindblad(joint, 1.5, 0.0, params, n_steps=256)
    fine = evolve_sdf_lindblad(joint, 1.5, 0.0, params, n_steps=512)
    assert np.max(np.abs(coarse.matrix - fine.matrix)) < 1e-8


def test_noisy_pair_noiseless_matches_tree():
    """Silent noise: the trig-polynomial machinery reproduces exact trees."""
    spec = StateSpec(kind="thermal", nbar=0.23)
    rng = np.random.default_rng(3)
    for _ in range(4):
        ax = complex(rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5))
        ay = complex(rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5))
        px, py = rng.uniform(0, 2 * math.pi, 2)
        dim = plan_dim(spec, abs(ax) + abs(ay))
        st = make_state(spec, dim)
        c_noisy = noisy_correlator(st.matrix, (ax, px), (ay, py), SILENT, seed=0)
        c_tree = correlator(
            st,
            ModularSetting(alpha=ax, phi=px, variant="asymmetric"),
            ModularSetting(alpha=ay, phi=py, variant="asymmetric"),
        )
        assert abs(c_noisy - c_tree) < 1e-10


def test_phase_average_only_damps_correlator():
    """Phase noise alone contracts the correlator toward its mean."""
    spec = StateSpec()
    ax, ay = 1.0, 1.0j
    px, py = 0.3, 1.1
    dim = plan_dim(spec, 2.0)
    st = make_state(spec, dim)
    phase_only = NoiseParams(dephasing_rate=0.0, linewidth_fwhm=665.0, phase_offset=0.087,
                             n_phase_samples=4000)
    c_noisy = noisy_correlator(st.density_matrix(), (ax, px), (ay, py), phase_only, seed=5)
    c_clean = noisy_correlator(st.density_matrix(), (ax, px), (ay, py), SILENT, seed=5)
    assert abs(c_noisy) < abs(c_clean)


def test_phase_average_estimator_scales_inverse_sqrt_n():
    """Halving the sample count grows the estimator spread by ~sqrt(2)."""
    pair_sigma = [50.0, 50.0]
    params_full = NoiseParams(n_phase_samples=4000)
    params_half = NoiseParams(n_phase_samples=2000)

    def experiment(draws):
        return np.cos(0.4 + draws[:, 0]) * np.cos(draws[:, 1])

    full = [qubit_phase_average(experiment, pair_sigma, params_full, seed=s) for s in range(24)]
    half = [qubit_phase_average(experiment, pair_sigma, params_half, seed=s) for s in range(24)]
    ratio = np.std(half) / np.std(full)
    assert 1.1 < ratio < 1.9  # ~sqrt(2) with wide tolerance


def test_qubit_phase_average_deterministic():
    params = NoiseParams(n_phase_samples=100)
    f = lambda d: np.cos(d[:, 0])
    a = qubit_phase_average(f, [50.0], params, seed=7)
    b = qubit_phase_average(f, [50.0], params, seed=7)
    assert a == b


def test_noisy_lgi_below_ideal_and_violating_at_amp1():
    grid = np.round(np.arange(0.2, 1.0001, 0.05), 10)
    chain = continuation_chain(grid, seed=2, n_restarts=25)
    settings_by_amp = {amp: s for amp, s, _ in chain}
    params = NoiseParams(n_phase_samples=2000)
    s1 = settings_by_amp[1.0]
    l_ideal = lgi_closed(s1).l_value
    l_noisy = noisy_lgi_value(s1, params, seed=0)
    assert l_noisy < l_ideal
    assert l_noisy > 1.0


def test_noise_only_decreases_l_over_grid():
    grid = [0.5, 1.0]
    chain = continuation_chain(np.round(np.arange(0.2, 1.0001, 0.05), 10), seed=2, n_restarts=25)
    settings_by_amp = {amp: s for amp, s, _ in chain}
    params = NoiseParams(n_phase_samples=1000)
    rows = noisy_lgi_curve(grid, 0.0, params, lambda a: settings_by_amp[a], seed=1)
    for row in rows:
        assert row["l_noisy"] <= row["l_ideal"] + 1e-9


def test_zero_params_curve_equals_ideal():
    chain = continuation_chain(np.round(np.arange(0.2, 0.8001, 0.05), 10), seed=2, n_restarts=20)
    settings_by_amp = {amp: s for amp, s, _ in chain}
    rows = noisy_lgi_curve([0.8], 0.0, SILENT, lambda a: settings_by_amp[a], seed=1)
    assert abs(rows[0]["l_noisy"] - rows[0]["l_ideal"]) < 1e-9
