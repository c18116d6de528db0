"""Analytic predictors for signaling, correlators and NSIT conditions.

These closed forms are the fast path for parameter sweeps and the oracle
partner of the exact matrix engine in measure.py; the test suite checks the
two against each other to 1e-8 over randomized experiments.

All formulas use the geometric phase Phi = Im(conj(alpha_A) * alpha_B); note
the matrix composition law D(a)D(b) = e^{i Im(a conj(b))} D(a+b) carries the
opposite sign (see fock module docs).

The asymmetric signaling formula carries a factor 1/2 relative to its usual
printed form; the factor is fixed by the matrix oracle and is required for
P_B - P_B(A) to be a difference of probabilities of the stated measurements.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .fock import StateSpec


@dataclass(frozen=True)
class OverlapValue:
    """Wave-packet overlap m = |m| e^{i arg} with |m| <= 1."""

    magnitude: float
    phase: float

    def __post_init__(self):
        if not (0.0 <= self.magnitude <= 1.0 + 1e-9):
            raise ValueError(f"overlap magnitude {self.magnitude} outside [0, 1]")

    @classmethod
    def from_complex(cls, z: complex) -> "OverlapValue":
        return cls(min(abs(z), 1.0), float(np.angle(z)))

    def as_complex(self) -> complex:
        return self.magnitude * complex(math.cos(self.phase), math.sin(self.phase))


Overlap = Union[OverlapValue, complex]


def _mag_arg(m: Overlap):
    if isinstance(m, OverlapValue):
        return m.magnitude, m.phase
    return abs(m), float(np.angle(m))


def geometric_phase(alpha_a: complex, alpha_b: complex) -> float:
    """Phi = Im(conj(alpha_A) alpha_B), the phase controlling signaling."""
    return float(np.imag(np.conj(alpha_a) * alpha_b))


def sit_symmetric(alpha_a: complex, alpha_b: complex, m: Overlap) -> float:
    """S = (1 - cos Phi)/2 * |m_aB| cos(arg m_aB) for symmetric measurements."""
    mag, arg = _mag_arg(m)
    phi = geometric_phase(alpha_a, alpha_b)
    return 0.5 * (1.0 - math.cos(phi)) * mag * math.cos(arg)


def sit_asymmetric(alpha_a: complex, alpha_b: complex, phi_b: float, m: Overlap) -> float:
    """S~ = (1/2) sin(Phi) |m_aB| sin(Phi + phi_B + arg m_aB).

    Vanishes whenever Phi = pi k (the asymmetric NSIT condition).
    """
    mag, arg = _mag_arg(m)
    phi = geometric_phase(alpha_a, alpha_b)
    return 0.5 * math.sin(phi) * mag * math.sin(phi + phi_b + arg)


def corr_symmetric(
    alpha_a: complex, alpha_b: complex, m_minus: Overlap, m_plus: Overlap
) -> float:
    """C_AB = (|m_-| cos(arg m_-) + |m_+| cos(arg m_+)) / 2.

    m_-/m_+ are the input-state overlaps at alpha_A -/+ alpha_B; independent
    of the geometric phase.
    """
    mag_m, arg_m = _mag_arg(m_minus)
    mag_p, arg_p = _mag_arg(m_plus)
    return 0.5 * (mag_m * math.cos(arg_m) + mag_p * math.cos(arg_p))


def corr_asymmetric(
    alpha_a: complex,
    alpha_b: complex,
    phi_a: float,
    phi_b: float,
    m_minus: Overlap,
    m_plus: Overlap,
) -> float:
    """C~_AB with phases phi~± = phi_A ± phi_B ± Phi + arg(m_±)."""
    mag_m, arg_m = _mag_arg(m_minus)
    mag_p, arg_p = _mag_arg(m_plus)
    phi = geometric_phase(alpha_a, alpha_b)
    return 0.5 * (
        mag_m * math.cos(phi_a - phi_b - phi + arg_m)
        + mag_p * math.cos(phi_a + phi_b + phi + arg_p)
    )


@dataclass(frozen=True)
class NsitConditions:
    """The three commutation/no-signaling conditions at given settings.

    ``observables_commute`` with odd k (Phi an odd multiple of pi) is exactly
    the case where commuting observables still show symmetric-implementation
    signaling.
    """

    symmetric_nsit: bool
    asymmetric_nsit: bool
    observables_commute: bool


def nsit_conditions(alpha_a: complex, alpha_b: complex, tol: float = 1e-9) -> NsitConditions:
    phi = geometric_phase(alpha_a, alpha_b)
    k2 = phi / (2 * math.pi)
    k1 = phi / math.pi
    sym = abs(k2 - round(k2)) * 2 * math.pi < tol
    asym = abs(k1 - round(k1)) * math.pi < tol
    return NsitConditions(symmetric_nsit=sym, asymmetric_nsit=asym, observables_commute=asym)


def classical_fidelity(p_b: Sequence[float], p_ba: Sequence[float]) -> float:
    """Bhattacharyya overlap kappa = sum_b sqrt(P_B(b) P_B(A)(b)); 1 iff equal."""
    if len(p_b) != 2 or len(p_ba) != 2:
        raise ValueError("classical_fidelity expects two-outcome distributions")
    return float(sum(math.sqrt(max(p, 0.0) * max(q, 0.0)) for p, q in zip(p_b, p_ba)))


# ---------------------------------------------------------------------------
# closed-form overlaps (characteristic functions) for the standard inputs


def overlap_closed_form(spec: Union[StateSpec, dict, str], alpha: complex) -> complex:
    """m_alpha = <D(alpha)> where a closed form exists.

    Supported: vacuum, coherent, squeezed, fock (n <= 2), thermal. Used both
    as the sweep fast path and as the test oracle against overlap_matrix.
    """
    if not isinstance(spec, StateSpec):
        spec = StateSpec.from_dict(spec)
    x = abs(alpha) ** 2
    if spec.kind == "vacuum":
        return complex(math.exp(-x / 2))
    if spec.kind == "coherent":
        return math.exp(-x / 2) * np.exp(2j * np.imag(alpha * np.conj(spec.alpha)))
    if spec.kind == "squeezed":
        r = abs(spec.xi)
        if r == 0:
            return complex(math.exp(-x / 2))
        phase = np.exp(1j * np.angle(spec.xi)) if spec.xi != 0 else 1.0
        ap = alpha * math.cosh(r) + np.conj(alpha) * phase * math.sinh(r)
        return complex(math.exp(-abs(ap) ** 2 / 2))
    if spec.kind == "fock":
        if spec.n == 0:
            return complex(math.exp(-x / 2))
        if spec.n == 1:
            return complex(math.exp(-x / 2) * (1 - x))
        if spec.n == 2:
            return complex(math.exp(-x / 2) * (1 - 2 * x + x * x / 2))
        raise ValueError("fock overlap closed form implemented for n <= 2")
    if spec.kind == "thermal":
        return complex(math.exp(-x * (2 * spec.nbar + 1) / 2))
    raise ValueError(f"no closed-form overlap for kind {spec.kind!r}")
