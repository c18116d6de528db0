"""Three-level pulse-sequence simulation of the asymmetric measurement.

Independent oracle for the asymmetric Kraus pair: the measurement is built
from carrier pulses on two transitions of a three-level system
{|a>, |down>, |up>} (indices 0, 1, 2) plus one entangling displacement on the
(down, up) transition, exactly as the hardware sequence does.

Pulse: R_k(phi) = (1 - i sin(phi) sigma_kx + i cos(phi) sigma_ky) / sqrt(2),
with sigma_1 acting on (a, down) and sigma_2 on (down, up), standard Pauli
matrices in those ordered bases.

With this fixed convention, composing the printed sequence
R1(phi) R2(0) D(alpha sigma_x2) R2(pi) R1(0) makes the two transition-1
pulses a pi-pulse at phi = 0, which lands the (1 + e^{i phi} D) component on
|a>. ``asymmetric_sequence`` therefore uses final pulse phase (pi - phi),
which reproduces the intended output: |down> carries (1 + e^{i phi} D)|psi>,
|a> carries (1 - e^{i phi} D)|psi>, up to branch-global phases (the printed
relative minus sign between branches is unobservable).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .fock import PureState, displacement_matrix

LEVELS = ("a", "down", "up")
AUX, DOWN, UP = 0, 1, 2

_SIGMA_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
_SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)

# (row, col) index pairs of the addressed 2-level block per transition
_BLOCK = {1: (AUX, DOWN), 2: (DOWN, UP)}


@dataclass(frozen=True)
class ThreeLevelState:
    """Level ⊗ Fock amplitudes, shape (3, dim)."""

    dim: int
    amplitudes: np.ndarray

    def __post_init__(self):
        amp = np.asarray(self.amplitudes, dtype=np.complex128)
        object.__setattr__(self, "amplitudes", amp)
        if amp.shape != (3, self.dim):
            raise ValueError(f"amplitudes shape {amp.shape} != (3, {self.dim})")
        norm2 = float(np.sum(np.abs(amp) ** 2))
        if abs(norm2 - 1.0) > 1e-10:
            raise ValueError(f"norm^2 = {norm2} deviates from 1")

    def level_population(self, level: int) -> float:
        return float(np.sum(np.abs(self.amplitudes[level]) ** 2))

    def branch(self, level: int) -> Tuple[float, np.ndarray]:
        """(probability, normalized oscillator vector) of one level."""
        vec = self.amplitudes[level]
        p = float(np.vdot(vec, vec).real)
        if p < 1e-15:
            return p, vec
        return p, vec / np.sqrt(p)


def from_oscillator(psi, level: int = DOWN) -> ThreeLevelState:
    amp = np.zeros((3, psi.dim), dtype=np.complex128)
    amp[level] = psi.amplitudes
    return ThreeLevelState(psi.dim, amp)


def _rotation_2x2(phi: float) -> np.ndarray:
    return (np.eye(2) - 1j * np.sin(phi) * _SIGMA_X + 1j * np.cos(phi) * _SIGMA_Y) / np.sqrt(2)


def apply_rotation(state: ThreeLevelState, k: int, phi: float) -> ThreeLevelState:
    """Carrier pi/2 pulse R_k(phi) on transition k; third level untouched."""
    if k not in _BLOCK:
        raise ValueError("transition k must be 1 or 2")
    i, j = _BLOCK[k]
    r = _rotation_2x2(phi)
    amp = state.amplitudes.copy()
    amp[i], amp[j] = (
        r[0, 0] * state.amplitudes[i] + r[0, 1] * state.amplitudes[j],
        r[1, 0] * state.amplitudes[i] + r[1, 1] * state.amplitudes[j],
    )
    return ThreeLevelState(state.dim, amp)


def apply_sdf(state: ThreeLevelState, alpha: complex) -> ThreeLevelState:
    """Entangling displacement D(alpha sigma_x2) on the (down, up) transition.

    Exact construction in the sigma_x eigenbasis: |±> components get D(±alpha);
    |a> is untouched.
    """
    d_plus = displacement_matrix(alpha, state.dim).matrix
    d_minus = d_plus.conj().T
    down, up = state.amplitudes[DOWN], state.amplitudes[UP]
    plus = (down + up) / np.sqrt(2)
    minus = (down - up) / np.sqrt(2)
    plus = d_plus @ plus
    minus = d_minus @ minus
    amp = state.amplitudes.copy()
    amp[DOWN] = (plus + minus) / np.sqrt(2)
    amp[UP] = (plus - minus) / np.sqrt(2)
    return ThreeLevelState(state.dim, amp)


def inner_block(state: ThreeLevelState, alpha: complex) -> ThreeLevelState:
    """The calibrated block R2(0) D(alpha sigma_x2) R2(pi)."""
    state = apply_rotation(state, 2, np.pi)
    state = apply_sdf(state, alpha)
    return apply_rotation(state, 2, 0.0)


def asymmetric_sequence(psi_in: PureState, alpha: complex, phi: float) -> ThreeLevelState:
    """Full pulse sequence implementing the asymmetric modular measurement.

    Output: |down> branch ∝ (1 + e^{i phi} D(alpha))|psi_in>,
            |a> branch    ∝ (1 - e^{i phi} D(alpha))|psi_in>,
    so the detection probabilities equal Tr(F±† F± rho).
    """
    state = from_oscillator(psi_in, DOWN)
    state = apply_rotation(state, 1, 0.0)
    state = inner_block(state, alpha)
    return apply_rotation(state, 1, np.pi - phi)


def branch_probabilities(state: ThreeLevelState) -> dict:
    """Outcome probabilities: +1 = |down| branch, -1 = |a> branch."""
    return {
        +1: state.level_population(DOWN),
        -1: state.level_population(AUX),
        "up_leak": state.level_population(UP),
    }
