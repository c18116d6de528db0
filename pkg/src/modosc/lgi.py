"""Leggett-Garg analysis: value assembly, settings optimization, penalization.

Three asymmetric modular measurements A, B, C with displacements
alpha_X = amp * e^{i theta_X} (theta_X = omega t_X encodes the measurement
time) and qubit phases phi_X. The LGI combination is

    L = C_AB + C_BC - C_AC  <=  1   (macro-realist bound)

with each two-time correlator taken from a fresh input state and the third
measurement left out. The built-in measurement invasiveness is quantified by
the total forward signaling TS = 2(|S~_AB| + |S~_BC| + |S~_AC|), and the
penalized value is L - TS.

Settings are found by simplex (Nelder-Mead) maximization of the closed-form
L with continuation in amp, the procedure the source experiment describes;
values are verifiable against the exact branch-tree engine via lgi_value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import minimize

from .fock import StateSpec, make_state, overlap_matrix, plan_dim
from .formulas import corr_asymmetric, geometric_phase, sit_asymmetric
from .measure import ModularSetting, measure_once, measure_sequence


class ConvergenceError(Exception):
    """Optimizer failed to converge within its iteration budget."""


@dataclass(frozen=True)
class LgiSettings:
    amp: float
    theta_a: float
    theta_b: float
    theta_c: float
    phi_a: float
    phi_b: float
    phi_c: float
    nbar: float = 0.0
    input_squeeze: float = 0.0

    def __post_init__(self):
        if self.amp < 0:
            raise ValueError("amp must be >= 0")
        if self.nbar < 0:
            raise ValueError("nbar must be >= 0")

    def alphas(self) -> Tuple[complex, complex, complex]:
        return (
            self.amp * np.exp(1j * self.theta_a),
            self.amp * np.exp(1j * self.theta_b),
            self.amp * np.exp(1j * self.theta_c),
        )

    def angles(self) -> np.ndarray:
        return np.array([self.theta_a, self.theta_b, self.theta_c,
                         self.phi_a, self.phi_b, self.phi_c])

    def input_spec(self) -> StateSpec:
        if self.nbar > 0:
            return StateSpec(kind="thermal", nbar=self.nbar)
        if self.input_squeeze != 0:
            return StateSpec(kind="squeezed", xi=self.input_squeeze)
        return StateSpec()


@dataclass(frozen=True)
class LgiResult:
    c_ab: float
    c_bc: float
    c_ac: float
    l_value: float
    ts: float
    l_penalized: float

    def __post_init__(self):
        assert abs(self.l_value - (self.c_ab + self.c_bc - self.c_ac)) < 1e-12
        assert abs(self.l_penalized - (self.l_value - self.ts)) < 1e-12


# ---------------------------------------------------------------------------
# closed-form fast path


def _overlap_gaussian(beta: complex, nbar: float, squeeze: float) -> float:
    """<D(beta)> of the thermal/ground/squeezed inputs used here (real >= 0)."""
    if squeeze != 0.0:
        bp = beta * math.cosh(squeeze) + beta.conjugate() * math.sinh(squeeze)
        return math.exp(-abs(bp) ** 2 / 2)
    return math.exp(-abs(beta) ** 2 * (2 * nbar + 1) / 2)


def _corr_closed(ax: complex, ay: complex, px: float, py: float,
                 nbar: float, squeeze: float) -> float:
    phi = (ax.conjugate() * ay).imag
    gm = _overlap_gaussian(ax - ay, nbar, squeeze)
    gp = _overlap_gaussian(ax + ay, nbar, squeeze)
    return 0.5 * (gm * math.cos(px - py - phi) + gp * math.cos(px + py + phi))


def _sit_closed(ax: complex, ay: complex, py: float, nbar: float, squeeze: float) -> float:
    phi = (ax.conjugate() * ay).imag
    return 0.5 * math.sin(phi) * _overlap_gaussian(ay, nbar, squeeze) * math.sin(phi + py)


def lgi_closed(settings: LgiSettings) -> LgiResult:
    """Closed-form L, TS for Gaussian inputs; the optimizer objective."""
    aa, ab, ac = settings.alphas()
    nb, sq = settings.nbar, settings.input_squeeze
    pa, pb, pc = settings.phi_a, settings.phi_b, settings.phi_c
    c_ab = _corr_closed(aa, ab, pa, pb, nb, sq)
    c_bc = _corr_closed(ab, ac, pb, pc, nb, sq)
    c_ac = _corr_closed(aa, ac, pa, pc, nb, sq)
    s_ab = _sit_closed(aa, ab, pb, nb, sq)
    s_bc = _sit_closed(ab, ac, pc, nb, sq)
    s_ac = _sit_closed(aa, ac, pc, nb, sq)
    l = c_ab + c_bc - c_ac
    ts = 2 * (abs(s_ab) + abs(s_bc) + abs(s_ac))
    return LgiResult(c_ab, c_bc, c_ac, l, ts, l - ts)


# ---------------------------------------------------------------------------
# exact (branch-tree) path


def _pair_tree_stats(state, sx: ModularSetting, sy: ModularSetting) -> Tuple[float, float]:
    """(correlator, P_Y(A)(+1)) of the ordered pair from one exact tree."""
    tree = measure_sequence(state, [sx, sy])
    corr = 0.0
    for outcomes, leaf in tree.leaves():
        corr += outcomes[0] * outcomes[1] * leaf.probability
    return corr, tree.marginal(1, 1)


def lgi_value(settings: LgiSettings) -> LgiResult:
    """L and TS from exact branch trees (asymmetric implementation)."""
    spec = settings.input_spec()
    dim = plan_dim(spec, 2 * settings.amp)
    state = make_state(spec, dim)
    aa, ab, ac = settings.alphas()
    ma = ModularSetting(alpha=aa, phi=settings.phi_a, variant="asymmetric")
    mb = ModularSetting(alpha=ab, phi=settings.phi_b, variant="asymmetric")
    mc = ModularSetting(alpha=ac, phi=settings.phi_c, variant="asymmetric")

    c_ab, p_b_after_a = _pair_tree_stats(state, ma, mb)
    c_bc, p_c_after_b = _pair_tree_stats(state, mb, mc)
    c_ac, p_c_after_a = _pair_tree_stats(state, ma, mc)
    p_b = measure_once(state, mb).p_plus
    p_c = measure_once(state, mc).p_plus

    s_ab = p_b - p_b_after_a
    s_bc = p_c - p_c_after_b
    s_ac = p_c - p_c_after_a
    l = c_ab + c_bc - c_ac
    ts = 2 * (abs(s_ab) + abs(s_bc) + abs(s_ac))
    return LgiResult(c_ab, c_bc, c_ac, l, ts, l - ts)


# ---------------------------------------------------------------------------
# settings optimization


def _objective(settings_base: LgiSettings) -> Callable[[np.ndarray], float]:
    def negative_l(x: np.ndarray) -> float:
        s = replace(
            settings_base,
            theta_a=x[0], theta_b=x[1], theta_c=x[2],
            phi_a=x[3], phi_b=x[4], phi_c=x[5],
        )
        return -lgi_closed(s).l_value

    return negative_l


def _polish(settings_base: LgiSettings, x0: np.ndarray, max_iter: int) -> Tuple[np.ndarray, float]:
    res = minimize(
        _objective(settings_base),
        x0,
        method="Nelder-Mead",
        options={"maxiter": max_iter, "xatol": 1e-7, "fatol": 1e-9, "adaptive": True},
    )
    if not res.success:
        raise ConvergenceError(f"Nelder-Mead did not converge in {max_iter} iterations")
    return res.x, -res.fun


def optimize_settings(
    amp: float,
    nbar: float = 0.0,
    input_squeeze: float = 0.0,
    previous: Optional[LgiSettings] = None,
    seed: int = 0,
    n_restarts: int = 40,
    max_iter: int = 2000,
) -> LgiSettings:
    """Find settings maximizing L at fixed amp by simplex search.

    With ``previous`` given, continuation: the previous optimum seeds the
    search. Otherwise ``n_restarts`` random starts are polished and ties
    (equal L within 1e-9) break toward the lowest total |theta|, keeping the
    output deterministic for a fixed seed.
    """
    base = LgiSettings(amp, 0, 0, 0, 0, 0, 0, nbar=nbar, input_squeeze=input_squeeze)
    starts: List[np.ndarray] = []
    if previous is not None:
        starts.append(previous.angles())
    else:
        rng = np.random.default_rng(seed)
        starts.extend(rng.uniform(0, 2 * math.pi, size=(n_restarts, 6)))
    best: Optional[Tuple[np.ndarray, float]] = None
    for x0 in starts:
        x, l = _polish(base, np.asarray(x0, dtype=float), max_iter)
        if best is None or l > best[1] + 1e-9:
            best = (x, l)
        elif abs(l - best[1]) <= 1e-9:
            if np.sum(np.abs(x[:3])) < np.sum(np.abs(best[0][:3])):
                best = (x, l)
    assert best is not None
    x = best[0]
    return replace(
        base,
        theta_a=x[0], theta_b=x[1], theta_c=x[2],
        phi_a=x[3], phi_b=x[4], phi_c=x[5],
    )


def continuation_chain(
    amp_grid: Sequence[float],
    nbar: float = 0.0,
    input_squeeze: float = 0.0,
    seed: int = 0,
    n_restarts: int = 40,
    jump_threshold: float = 0.2,
) -> List[Tuple[float, LgiSettings, LgiResult]]:
    """Optimize along an ascending amp grid, seeding each step from the last.

    A jump in L larger than ``jump_threshold`` between adjacent grid points
    flags a branch switch and triggers random-restart verification.
    """
    amps = list(amp_grid)
    if any(b < a for a, b in zip(amps, amps[1:])):
        raise ValueError("amp grid must be ascending for continuation")
    out: List[Tuple[float, LgiSettings, LgiResult]] = []
    prev_settings: Optional[LgiSettings] = None
    prev_l: Optional[float] = None
    for amp in amps:
        settings = optimize_settings(
            amp, nbar=nbar, input_squeeze=input_squeeze,
            previous=prev_settings, seed=seed, n_restarts=n_restarts,
        )
        result = lgi_closed(settings)
        if prev_l is not None and abs(result.l_value - prev_l) > jump_threshold:
            verified = optimize_settings(
                amp, nbar=nbar, input_squeeze=input_squeeze,
                previous=None, seed=seed + 1, n_restarts=n_restarts,
            )
            vres = lgi_closed(verified)
            if vres.l_value > result.l_value:
                settings, result = verified, vres
        out.append((amp, settings, result))
        prev_settings, prev_l = settings, result.l_value
    return out


# ---------------------------------------------------------------------------
# SIT -> LGI protocol


@dataclass(frozen=True)
class SitProtocol:
    """Result assignments turning an observed signaling into an LGI violation.

    Measurement A is the state-preparation confirmation (always 'up'), B's
    outcome is discarded (constant +1), and C's assignment depends on the
    sign of a = P_C(B)(D) - P_C(D).
    """

    f_a: dict
    f_b: dict
    f_c: dict
    a: float
    l_value: float


def sit_to_lgi_protocol(a: float) -> SitProtocol:
    """Assignments and L = 1 + 2a for a given positive signaling gap a."""
    if not (0.0 <= a <= 1.0):
        raise ValueError("a must lie in [0, 1]")
    return SitProtocol(
        f_a={"U": +1, "D": -1},
        f_b={"U": +1, "D": +1},
        f_c={"U": -1, "D": +1},
        a=a,
        l_value=1.0 + 2.0 * a,
    )


def run_sit_protocol(state, setting_b: ModularSetting, setting_c: ModularSetting) -> SitProtocol:
    """End-to-end: measure the pair, assign results, assemble L from correlators."""
    p_c_alone = measure_once(state, setting_c)
    tree = measure_sequence(state, [setting_b, setting_c])
    # outcome labels: U = +1 branch, D = -1 branch
    p_c_d = p_c_alone.p_minus
    p_cb_d = tree.marginal(1, -1)
    a = p_cb_d - p_c_d
    f_c = {"U": -1, "D": +1} if a >= 0 else {"U": +1, "D": -1}
    # correlators under the assignments: C_AB = 1, C_BC, C_AC from the data
    sign = 1 if a >= 0 else -1
    c_bc = sign * (p_cb_d - tree.marginal(1, 1))
    c_ac = sign * (p_c_alone.p_minus - p_c_alone.p_plus)
    l = 1.0 + c_bc - c_ac
    return SitProtocol(
        f_a={"U": +1, "D": -1},
        f_b={"U": +1, "D": +1},
        f_c=f_c,
        a=abs(a),
        l_value=l,
    )


# ---------------------------------------------------------------------------
# squeezed-input comparison


def squeezed_lgi_comparison(
    amp_grid: Sequence[float],
    r: float = 0.9,
    seed: int = 0,
    n_restarts: int = 40,
) -> List[dict]:
    """Optimized L and TS for ground vs squeezed input at each amp.

    Also reports the separation-to-wave-packet-size improvement e^r of the
    squeezed input.
    """
    ground = continuation_chain(amp_grid, nbar=0.0, seed=seed, n_restarts=n_restarts)
    squeezed = continuation_chain(amp_grid, input_squeeze=r, seed=seed, n_restarts=n_restarts)
    rows = []
    for (amp, _, gres), (_, _, sres) in zip(ground, squeezed):
        rows.append(
            {
                "amp": amp,
                "l_ground": gres.l_value,
                "l_squeezed": sres.l_value,
                "ts_ground": gres.ts,
                "ts_squeezed": sres.ts,
                "packet_ratio_gain": math.exp(r),
            }
        )
    return rows
