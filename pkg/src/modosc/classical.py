"""Semi-classical Ramsey model: a qubit coupled to a classical noisy field.

A qubit accumulates phase from x(t) = A cos(2 pi f t) between two Ramsey
pulses, with A drawn per shot from a Gaussian of mean A0 and width sigma
(slow noise, synchronized experiment). Single-time statistics:

    <Q> = -exp(-(sin(2 pi f T) sigma / (2 pi f))^2 / 2)
          * cos(phi + (A0 / (2 pi f)) sin(2 pi f T))

This reproduces the oscillations and revivals that single-time detections of
oscillator superpositions show, which is exactly why single-time revivals do
not certify quantum states. Between two sequential measurements the classical
field is unchanged by the first readout, so sequential signaling vanishes
identically; the quantum engine shows S != 0 at the same single-time
statistics. The exponent sign here is the decaying one (a Gaussian average of
a cosine contracts); the Monte Carlo sampler in this module is the oracle
fixing it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class ClassicalFieldParams:
    a0: float
    sigma: float
    f: float  # noise frequency, Hz
    wait: float  # Ramsey wait time T, s
    phi: float = 0.0

    def __post_init__(self):
        if self.sigma < 0:
            raise ValueError("sigma must be >= 0")
        if self.f <= 0:
            raise ValueError("f must be > 0")


def _phase_vec(a: np.ndarray, params: ClassicalFieldParams) -> np.ndarray:
    """Phase integral of x(t) over the Ramsey wait window [0, T]."""
    w = 2 * math.pi * params.f
    return a * math.sin(w * params.wait) / w


def classical_q_expect(params: ClassicalFieldParams) -> float:
    """<Q> = <P(+1) - P(-1)> averaged over the Gaussian amplitude."""
    w = 2 * math.pi * params.f
    s = math.sin(w * params.wait)
    envelope = math.exp(-0.5 * (s * params.sigma / w) ** 2)
    return -envelope * math.cos(params.phi + params.a0 * s / w)


def classical_q_expect_mc(params: ClassicalFieldParams, n_samples: int, seed: int) -> float:
    """Monte Carlo oracle: draw A per shot, average -cos(phi + theta(A))."""
    rng = np.random.default_rng(seed)
    a = rng.normal(params.a0, params.sigma, size=n_samples)
    w = 2 * math.pi * params.f
    theta = a * math.sin(w * params.wait) / w
    return float(np.mean(-np.cos(params.phi + theta)))


def classical_sequential_sit(
    params_b: ClassicalFieldParams,
    params_c: ClassicalFieldParams,
    mode: str = "analytic",
    n_shots: int = 0,
    seed: int = 0,
) -> float:
    """S = P_C(+1) - P_C(B)(+1) for two Ramsey measurements on the same field.

    The classical variable is unchanged by the first measurement, so the
    analytic value is exactly 0; Monte Carlo mode verifies this to sampling
    error (both measurements share the per-shot amplitude draw).
    """
    if mode == "analytic":
        # P_C(c) = <p_c(A)> and P_CB(c) = <sum_b p_b(A) p_c(A)> = <p_c(A)>
        return 0.0
    if mode != "mc":
        raise ValueError("mode must be 'analytic' or 'mc'")
    rng = np.random.default_rng(seed)
    # sequence shots: B's outcome is sampled but cannot feed back on the field
    a = rng.normal(params_b.a0, params_b.sigma, size=n_shots)
    p_b = 0.5 * (1 - np.cos(params_b.phi + _phase_vec(a, params_b)))
    p_c = 0.5 * (1 - np.cos(params_c.phi + _phase_vec(a, params_c)))
    _ = rng.random(n_shots) < p_b
    c_after_b = rng.random(n_shots) < p_c
    # C alone, fresh shots with identical field statistics
    a2 = rng.normal(params_c.a0, params_c.sigma, size=n_shots)
    p_c_alone = 0.5 * (1 - np.cos(params_c.phi + _phase_vec(a2, params_c)))
    c_alone = rng.random(n_shots) < p_c_alone
    return float(np.mean(c_alone) - np.mean(c_after_b))


def q_trace(
    a0: float,
    sigma: float,
    f: float,
    phi: float,
    waits: np.ndarray,
) -> np.ndarray:
    """<Q>(T) over a grid of Ramsey wait times (one figure panel)."""
    return np.array(
        [classical_q_expect(ClassicalFieldParams(a0, sigma, f, float(t), phi)) for t in waits]
    )
