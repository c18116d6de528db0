"""Noise channels of the experiment: motional dephasing and qubit phase noise.

Two channels act on the measurements:

* Lindblad motional dephasing with collapse operator sqrt(rate) (a a† + a†a)
  = sqrt(rate) (2 n + 1), active only during the state-dependent-force pulses
  (duration t = |alpha| * sdf_time_per_unit microseconds).
* slow qubit phase noise: each measurement's phase phi is offset by a
  Gaussian draw with sigma = linewidth * pi * t_SDF / sqrt(2 ln 2) + offset,
  constant within a shot; probabilities are averaged over many draws.

Integration runs in the co-moving (displaced) frame: the entangling
displacement is removed exactly (the rate -> 0 limit is exact, not a solver
limit) and the transformed collapse operator stays tridiagonal,

    C_q(s) = sqrt(rate) [(2 n + 1 + 2|c_q(s)|^2) + 2 conj(c_q(s)) a
                         + 2 c_q(s) a†],   c_q(s) = c_q s / T,

so the fixed-step RK4 right-hand side needs only banded products. The qubit
is diagonal in the conditional-displacement basis, hence each qubit block of
the joint density matrix evolves independently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from .fock import MixedState, StateSpec, displacement_matrix, make_state, plan_dim
from .lgi import LgiSettings, lgi_closed


@dataclass(frozen=True)
class NoiseParams:
    """Noise model parameters (defaults are the experimentally reported values)."""

    dephasing_rate: float = 30.0  # jumps / s
    linewidth_fwhm: float = 665.0  # Hz
    phase_offset: float = 0.087  # rad, calibration error term
    n_phase_samples: int = 4000
    sdf_time_per_unit: float = 1.0 / 0.030  # us of SDF drive per unit |alpha|

    def __post_init__(self):
        for name in ("dephasing_rate", "linewidth_fwhm", "phase_offset",
                     "n_phase_samples", "sdf_time_per_unit"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0")

    def pulse_time_us(self, alpha: complex) -> float:
        return abs(alpha) * self.sdf_time_per_unit

    @classmethod
    def from_config(cls, data: dict) -> "NoiseParams":
        return cls(**data)


def sigma_phase(t_sdf_us: float, params: NoiseParams) -> float:
    """Gaussian width of the per-shot phase offset for one pulse."""
    if params.linewidth_fwhm == 0 and params.phase_offset == 0:
        return 0.0
    return (
        params.linewidth_fwhm * math.pi * (t_sdf_us * 1e-6) / math.sqrt(2 * math.log(2))
        + params.phase_offset
    )


# ---------------------------------------------------------------------------
# banded collapse-operator algebra


def _c_coeffs(n: int, c: complex, rate: float):
    """(diag, a-coefficient, adag-coefficient) of C(s) at branch value c."""
    sq = math.sqrt(rate)
    d = sq * (2.0 * np.arange(n) + 1.0 + 2.0 * abs(c) ** 2)
    return d, 2.0 * sq * np.conj(c), 2.0 * sq * c


def _apply_left(rho: np.ndarray, d: np.ndarray, u: complex, v: complex, root_n: np.ndarray) -> np.ndarray:
    """C rho with C = diag(d) + u a + v a†; rho has shape (..., N, N)."""
    out = d[:, None] * rho
    if u != 0:
        out[..., :-1, :] += u * (root_n[:, None] * rho[..., 1:, :])
    if v != 0:
        out[..., 1:, :] += v * (root_n[:, None] * rho[..., :-1, :])
    return out


def _apply_right(rho: np.ndarray, d: np.ndarray, u: complex, v: complex, root_n: np.ndarray) -> np.ndarray:
    """rho C with C = diag(d) + u a + v a†."""
    out = rho * d[None, :]
    if u != 0:
        out[..., :, 1:] += u * (rho[..., :, :-1] * root_n[None, :])
    if v != 0:
        out[..., :, :-1] += v * (rho[..., :, 1:] * root_n[None, :])
    return out


def _dissipator(rho: np.ndarray, cl, cr, root_n: np.ndarray) -> np.ndarray:
    """C_l rho C_r - (C_l^2 rho + rho C_r^2)/2 for Hermitian C_l, C_r."""
    dl, ul, vl = cl
    dr, ur, vr = cr
    c_rho = _apply_left(rho, dl, ul, vl, root_n)
    rho_c = _apply_right(rho, dr, ur, vr, root_n)
    out = _apply_right(c_rho, dr, ur, vr, root_n)
    out -= 0.5 * _apply_left(c_rho, dl, ul, vl, root_n)
    out -= 0.5 * _apply_right(rho_c, dr, ur, vr, root_n)
    return out


def _n_steps(n: int, c_max: float, t_s: float, rate: float) -> int:
    if rate == 0 or t_s == 0:
        return 1
    lam = 0.5 * rate * (2.0 * (n - 1) + 2.0 * c_max ** 2) ** 2 + 4.0 * rate * c_max ** 2 * n
    return min(max(64, int(lam * t_s / 0.25) + 1), 6000)


def _evolve_blocks(
    blocks: np.ndarray,
    branch_left: Sequence[complex],
    branch_right: Sequence[complex],
    t_s: float,
    rate: float,
    n_steps: Optional[int] = None,
) -> np.ndarray:
    """Co-moving-frame RK4 for a stack of qubit blocks.

    ``blocks`` has shape (K, N, N); slice k evolves with branch displacement
    targets (branch_left[k], branch_right[k]). Returns the rotating-frame
    blocks at t = T (lab frame = D(c_l) block D(c_r)†, applied by callers).
    """
    blocks = np.array(blocks, dtype=np.complex128)
    k, n, _ = blocks.shape
    if rate == 0.0 or t_s == 0.0:
        return blocks
    c_max = max(max(abs(c) for c in branch_left), max(abs(c) for c in branch_right))
    steps = n_steps or _n_steps(n, c_max, t_s, rate)
    h = t_s / steps
    root_n = np.sqrt(np.arange(1, n))

    def rhs(stack: np.ndarray, s: float) -> np.ndarray:
        frac = s / t_s
        out = np.empty_like(stack)
        for i in range(k):
            cl = _c_coeffs(n, branch_left[i] * frac, rate)
            cr = _c_coeffs(n, branch_right[i] * frac, rate)
            out[i] = _dissipator(stack[i], cl, cr, root_n)
        return out

    s = 0.0
    for _ in range(steps):
        k1 = rhs(blocks, s)
        k2 = rhs(blocks + 0.5 * h * k1, s + 0.5 * h)
        k3 = rhs(blocks + 0.5 * h * k2, s + 0.5 * h)
        k4 = rhs(blocks + h * k3, s + h)
        blocks = blocks + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        s += h
    return blocks


# ---------------------------------------------------------------------------
# spec surface: sigma_x entangling pulse with dephasing


_HAD = np.array([[1, 1], [1, -1]], dtype=np.complex128) / math.sqrt(2)


def evolve_sdf_lindblad(
    joint_state: MixedState,
    alpha_target: complex,
    dphi: float,
    params: NoiseParams,
    n_steps: Optional[int] = None,
) -> MixedState:
    """Entangling SDF pulse D(alpha sigma_x / 2) with motional dephasing.

    ``joint_state`` is a (2N)x(2N) qubit ⊗ oscillator density matrix (qubit
    index outermost). ``dphi`` rotates the drive, alpha_eff = alpha_target *
    e^{i dphi / 2}. At dephasing_rate -> 0 the channel is the exact unitary.
    """
    two_n = joint_state.dim
    if two_n % 2:
        raise ValueError("joint state dimension must be 2 * N")
    n = two_n // 2
    alpha = alpha_target * np.exp(0.5j * dphi)
    t_s = params.pulse_time_us(alpha) * 1e-6

    rho = joint_state.matrix
    qblocks = rho.reshape(2, n, 2, n).transpose(0, 2, 1, 3)  # [q, q', n, n']
    # rotate qubit to the sigma_x eigenbasis, where branches displace by ±alpha/2
    # (the Hadamard is unitary and Hermitian, so it is its own inverse)
    qx = np.einsum("ab,bcij,dc->adij", _HAD, qblocks, _HAD.conj())
    stack = np.stack([qx[0, 0], qx[0, 1], qx[1, 0], qx[1, 1]])
    left = [alpha / 2, alpha / 2, -alpha / 2, -alpha / 2]
    right = [alpha / 2, -alpha / 2, alpha / 2, -alpha / 2]
    evolved = _evolve_blocks(stack, left, right, t_s, params.dephasing_rate, n_steps)
    d_half = {c: displacement_matrix(c, n).matrix for c in (alpha / 2, -alpha / 2)}
    lab = np.empty_like(qx)
    for idx, (cl, cr) in enumerate(zip(left, right)):
        lab[idx // 2, idx % 2] = d_half[cl] @ evolved[idx] @ d_half[cr].conj().T
    back = np.einsum("ab,bcij,dc->adij", _HAD, lab, _HAD.conj())
    # reassemble; scrub the Hermiticity roundoff of the integrator
    out = back.transpose(0, 2, 1, 3).reshape(two_n, two_n)
    out = 0.5 * (out + out.conj().T)
    return MixedState(two_n, out, leakage_tol=joint_state.leakage_tol)


def make_joint_state(qubit_level: int, osc: MixedState) -> MixedState:
    """|q><q| ⊗ rho_osc as a (2N)x(2N) MixedState."""
    n = osc.dim
    out = np.zeros((2 * n, 2 * n), dtype=np.complex128)
    out[qubit_level * n:(qubit_level + 1) * n, qubit_level * n:(qubit_level + 1) * n] = osc.matrix
    return MixedState(2 * n, out, leakage_tol=osc.leakage_tol)


# ---------------------------------------------------------------------------
# qubit phase averaging


def qubit_phase_average(
    experiment: Callable[[np.ndarray], np.ndarray],
    t_sdf_list_us: Sequence[float],
    params: NoiseParams,
    seed: int,
) -> np.ndarray:
    """Average ``experiment`` over per-measurement Gaussian phase offsets.

    ``experiment`` maps an array of phase offsets with shape (samples, k) to
    per-sample values; one offset is drawn per measurement per shot with the
    sigma of that measurement's pulse time. Deterministic per seed.
    """
    sigmas = np.array([sigma_phase(t, params) for t in t_sdf_list_us])
    rng = np.random.default_rng(seed)
    draws = rng.normal(0.0, 1.0, size=(params.n_phase_samples, len(sigmas))) * sigmas[None, :]
    values = np.asarray(experiment(draws))
    return values.mean(axis=0)


# ---------------------------------------------------------------------------
# noisy asymmetric measurements and correlators


def _measurement_blocks(
    seeds: np.ndarray,
    alpha: complex,
    params: NoiseParams,
    n_steps: Optional[int] = None,
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Lab-frame joint blocks after the controlled-displacement pulse.

    For each oscillator seed matrix M (stack shape (k, N, N)) the joint state
    |+><+| ⊗ M evolves under the controlled displacement (branches 0, alpha)
    with dephasing; returns stacks (E00, E01, E11), E10 = E01† when M is
    Hermitian. The measurement phase enters later as an instantaneous qubit
    gate, which commutes with this qubit-diagonal channel.
    """
    k, n, _ = seeds.shape
    t_s = params.pulse_time_us(alpha) * 1e-6
    stack = np.concatenate([seeds, seeds, seeds]) / 2.0
    left = [0.0] * k + [0.0] * k + [alpha] * k
    right = [0.0] * k + [alpha] * k + [alpha] * k
    evolved = _evolve_blocks(stack, left, right, t_s, params.dephasing_rate, n_steps)
    d = displacement_matrix(alpha, n).matrix
    e00 = evolved[:k]
    e01 = evolved[k:2 * k] @ d.conj().T
    e11 = np.einsum("ij,kjl,ml->kim", d, evolved[2 * k:], d.conj())
    return e00, e01, e11


@dataclass(frozen=True)
class NoisyPairExperiment:
    """Precomputed trig-polynomial coefficients of one noisy ordered pair.

    The phase offsets of the two measurements enter the joint probabilities
    only through instantaneous qubit phase gates, so p(a, b | dphi_x, dphi_y)
    is an exact trigonometric polynomial whose coefficients require three
    Lindblad evolutions; Monte Carlo phase averaging then costs nothing.
    """

    phi_x: float
    phi_y: float
    tr_w: float
    tr_vr: float
    tr_vi: float
    t0: np.ndarray  # per seed (W, Vr, Vi)
    t10: np.ndarray  # complex, per seed

    def correlator(self, dphi: np.ndarray) -> np.ndarray:
        """C(offsets) for offset draws of shape (..., 2)."""
        px = self.phi_x + dphi[..., 0]
        py = self.phi_y + dphi[..., 1]
        cx, sx = np.cos(px), np.sin(px)
        cy, sy = np.cos(py), np.sin(py)
        r_r, i_r = self.t10[1].real, self.t10[1].imag
        r_i, i_i = self.t10[2].real, self.t10[2].imag
        return 8.0 * (cx * (cy * r_r - sy * i_r) + sx * (cy * r_i - sy * i_i))

    def p_first(self, dphi_x: np.ndarray, outcome: int) -> np.ndarray:
        px = self.phi_x + dphi_x
        return self.tr_w + 2 * outcome * (np.cos(px) * self.tr_vr + np.sin(px) * self.tr_vi)


def build_noisy_pair(
    rho_in: np.ndarray,
    alpha_x: complex,
    phi_x: float,
    alpha_y: complex,
    phi_y: float,
    params: NoiseParams,
    n_steps: Optional[int] = None,
) -> NoisyPairExperiment:
    """Three Lindblad evolutions -> exact joint statistics of the noisy pair."""
    n = rho_in.shape[0]
    e00, e01, e11 = _measurement_blocks(rho_in[None, :, :], alpha_x, params, n_steps)
    w = (e00[0] + e11[0]) / 2.0
    v = e01[0] / 2.0
    v_r = (v + v.conj().T) / 2.0
    v_i = 1j * (v.conj().T - v) / 2.0
    seeds = np.stack([w, v_r, v_i])
    f00, f01, f11 = _measurement_blocks(seeds, alpha_y, params, n_steps)
    t0 = 0.5 * np.real(np.trace(f00, axis1=1, axis2=2) + np.trace(f11, axis1=1, axis2=2))
    t10 = np.conj(np.trace(f01, axis1=1, axis2=2))
    return NoisyPairExperiment(
        phi_x=phi_x,
        phi_y=phi_y,
        tr_w=float(np.real(np.trace(w))),
        tr_vr=float(np.real(np.trace(v_r))),
        tr_vi=float(np.real(np.trace(v_i))),
        t0=t0,
        t10=t10,
    )


def noisy_correlator(
    rho_in: np.ndarray,
    setting_x: Tuple[complex, float],
    setting_y: Tuple[complex, float],
    params: NoiseParams,
    seed: int,
    n_steps: Optional[int] = None,
) -> float:
    """Phase-averaged noisy two-time correlator of an ordered pair."""
    (ax, px), (ay, py) = setting_x, setting_y
    pair = build_noisy_pair(rho_in, ax, px, ay, py, params, n_steps)
    t_list = [params.pulse_time_us(ax), params.pulse_time_us(ay)]
    value = qubit_phase_average(lambda d: pair.correlator(d), t_list, params, seed)
    return float(value)


def noisy_lgi_value(
    settings: LgiSettings,
    params: NoiseParams,
    seed: int,
    n_steps: Optional[int] = None,
) -> float:
    """L under motional dephasing and qubit phase averaging."""
    spec = settings.input_spec()
    dim = plan_dim(spec, 2 * settings.amp)
    rho = make_state(spec, dim)
    rho_mat = rho.density_matrix()
    aa, ab, ac = settings.alphas()
    pa, pb, pc = settings.phi_a, settings.phi_b, settings.phi_c
    c_ab = noisy_correlator(rho_mat, (aa, pa), (ab, pb), params, seed, n_steps)
    c_bc = noisy_correlator(rho_mat, (ab, pb), (ac, pc), params, seed + 1, n_steps)
    c_ac = noisy_correlator(rho_mat, (aa, pa), (ac, pc), params, seed + 2, n_steps)
    return c_ab + c_bc - c_ac


def noisy_lgi_curve(
    amp_grid: Sequence[float],
    nbar: float,
    params: NoiseParams,
    settings_source: Callable[[float], LgiSettings],
    seed: int = 0,
) -> List[dict]:
    """Ideal vs noisy L along an amp grid at the ideal optimal settings."""
    rows = []
    for i, amp in enumerate(amp_grid):
        settings = settings_source(float(amp))
        l_ideal = lgi_closed(settings).l_value
        l_noisy = noisy_lgi_value(settings, params, seed + 100 * i)
        rows.append({"amp": float(amp), "l_ideal": l_ideal, "l_noisy": l_noisy})
    return rows
