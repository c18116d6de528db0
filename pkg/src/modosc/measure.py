"""Modular-variable measurements: Kraus pairs and the exact sequential engine.

A modular measurement couples the oscillator to an ancilla qubit and reads the
qubit out, implementing a two-outcome POVM on the oscillator:

* symmetric variant:   E±(alpha) = (D(-alpha/2) ± D(alpha/2)) / 2
* asymmetric variant:  F±(phi, alpha) = (1 ± e^{i phi} D(alpha)) / 2

Both satisfy E+†E+ + E-†E- = 1 and measure the modular observable
Q = cos(phi + 2 Im(alpha) X - 2 Re(alpha) P) (phi = 0 for symmetric).

Sequences are evaluated exactly as a binary tree of conditioned branches;
heralding in the experiment corresponds to following one branch, but both are
retained here because the analysis layer needs full joint distributions.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from .fock import (
    MixedState,
    OperatorMatrix,
    PureState,
    State,
    displacement_matrix,
)

DEGENERATE_P = 1e-12

VARIANTS = ("symmetric", "asymmetric")


@dataclass(frozen=True)
class ModularSetting:
    """One measurement: displacement alpha, phase phi, implementation variant."""

    alpha: complex
    phi: float = 0.0
    variant: str = "symmetric"

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"variant must be one of {VARIANTS}")

    def reach(self) -> float:
        """Largest |displacement| either Kraus branch applies."""
        return abs(self.alpha) if self.variant == "asymmetric" else abs(self.alpha) / 2

    @classmethod
    def from_dict(cls, data: dict) -> "ModularSetting":
        from .fock import _parse_complex

        return cls(
            alpha=_parse_complex(data["alpha"]),
            phi=float(data.get("phi", 0.0)),
            variant=data.get("variant", "symmetric"),
        )


def kraus_pair(setting: ModularSetting, dim: int) -> Tuple[OperatorMatrix, OperatorMatrix]:
    """The (plus, minus) Kraus operators of one modular measurement."""
    if setting.variant == "symmetric":
        dp = displacement_matrix(setting.alpha / 2, dim).matrix
        dm = dp.conj().T  # D(-alpha/2) exactly, truncated generator is anti-Hermitian
        return (
            OperatorMatrix(dim, (dm + dp) / 2),
            OperatorMatrix(dim, (dm - dp) / 2),
        )
    phase = np.exp(1j * setting.phi)
    d = displacement_matrix(setting.alpha, dim).matrix
    eye = np.eye(dim, dtype=np.complex128)
    return (
        OperatorMatrix(dim, (eye + phase * d) / 2),
        OperatorMatrix(dim, (eye - phase * d) / 2),
    )


def modular_observable(setting: ModularSetting, dim: int) -> np.ndarray:
    """Q = E+†E+ - E-†E- = cos(phi + 2 Im(alpha) X - 2 Re(alpha) P)."""
    ep, em = kraus_pair(setting, dim)
    return ep.matrix.conj().T @ ep.matrix - em.matrix.conj().T @ em.matrix


@dataclass(frozen=True)
class MeasureResult:
    p_plus: float
    p_minus: float
    post_plus: Optional[State]
    post_minus: Optional[State]

    @property
    def degenerate_plus(self) -> bool:
        return self.post_plus is None

    @property
    def degenerate_minus(self) -> bool:
        return self.post_minus is None


def _apply_kraus(state: State, k: np.ndarray) -> Tuple[float, Optional[State]]:
    if isinstance(state, PureState):
        vec = k @ state.amplitudes
        p = float(np.vdot(vec, vec).real)
        if p < DEGENERATE_P:
            return p, None
        return p, PureState(state.dim, vec / np.sqrt(p))
    mat = k @ state.matrix @ k.conj().T
    p = float(np.trace(mat).real)
    if p < DEGENERATE_P:
        return p, None
    mat = mat / p
    mat = (mat + mat.conj().T) / 2  # scrub roundoff before invariant checks
    return p, MixedState(state.dim, mat)


def measure_once(state: State, setting: ModularSetting) -> MeasureResult:
    """Single modular measurement: outcome probabilities and post-states.

    A branch with probability below ``DEGENERATE_P`` is flagged by a ``None``
    post-state rather than a garbage renormalization.
    """
    kp, km = kraus_pair(setting, state.dim)
    p_plus, post_plus = _apply_kraus(state, kp.matrix)
    p_minus, post_minus = _apply_kraus(state, km.matrix)
    total = p_plus + p_minus
    if abs(total - 1.0) > 1e-10:
        raise ValueError(f"completeness violated: p+ + p- = {total}")
    return MeasureResult(p_plus, p_minus, post_plus, post_minus)


@dataclass(frozen=True)
class BranchNode:
    """Node of the sequential-measurement tree.

    ``probability`` is the joint probability of the outcome string from the
    root; the root has outcome 0 and probability 1. Leaves of a degenerate
    branch carry ``state=None``.
    """

    outcome: int
    probability: float
    state: Optional[State]
    children: Tuple["BranchNode", ...] = ()

    @property
    def is_leaf(self) -> bool:
        return not self.children

    def leaves(self) -> Iterable[Tuple[Tuple[int, ...], "BranchNode"]]:
        def walk(node, prefix):
            if node.is_leaf:
                yield prefix, node
            for child in node.children:
                yield from walk(child, prefix + (child.outcome,))

        yield from walk(self, ())

    def joint_probabilities(self) -> dict:
        """Outcome string (e.g. '+-') -> joint probability."""
        sym = {1: "+", -1: "-"}
        return {
            "".join(sym[o] for o in outcomes): leaf.probability
            for outcomes, leaf in self.leaves()
        }

    def marginal(self, index: int, outcome: int) -> float:
        """P(measurement #index gave ``outcome``), summed over the others."""
        total = 0.0
        for outcomes, leaf in self.leaves():
            if len(outcomes) > index and outcomes[index] == outcome:
                total += leaf.probability
        return total

    def to_json(self, include_states: bool = False) -> str:
        payload = {"probabilities": self.joint_probabilities()}
        if include_states:
            states = {}
            for outcomes, leaf in self.leaves():
                key = "".join("+" if o == 1 else "-" for o in outcomes)
                if leaf.state is None:
                    states[key] = None
                elif isinstance(leaf.state, PureState):
                    states[key] = {
                        "type": "pure",
                        "re": leaf.state.amplitudes.real.tolist(),
                        "im": leaf.state.amplitudes.imag.tolist(),
                    }
                else:
                    states[key] = {
                        "type": "mixed",
                        "re": leaf.state.matrix.real.tolist(),
                        "im": leaf.state.matrix.imag.tolist(),
                    }
            payload["states"] = states
        return json.dumps(payload, sort_keys=True)


def measure_sequence(state: State, settings: Sequence[ModularSetting]) -> BranchNode:
    """Exact binary tree for a sequence of modular measurements."""

    def extend(node_state: Optional[State], node_prob: float, rest) -> Tuple["BranchNode", ...]:
        if not rest:
            return ()
        if node_state is None:
            # degenerate branch: propagate the marker, probabilities stay 0
            child = lambda o: BranchNode(o, 0.0, None, extend(None, 0.0, rest[1:]))
            return (child(1), child(-1))
        res = measure_once(node_state, rest[0])
        plus = BranchNode(
            1, node_prob * res.p_plus, res.post_plus,
            extend(res.post_plus, node_prob * res.p_plus, rest[1:]),
        )
        minus = BranchNode(
            -1, node_prob * res.p_minus, res.post_minus,
            extend(res.post_minus, node_prob * res.p_minus, rest[1:]),
        )
        return (plus, minus)

    return BranchNode(0, 1.0, state, extend(state, 1.0, list(settings)))


def signaling(state: State, setting_a: ModularSetting, setting_b: ModularSetting) -> dict:
    """SIT quantifier of A on B: S = P_B(+1) - P_B(A)(+1), from exact trees."""
    alone = measure_once(state, setting_b)
    tree = measure_sequence(state, [setting_a, setting_b])
    p_b_given_a = tree.marginal(1, 1)
    return {
        "p_b": alone.p_plus,
        "p_b_after_a": p_b_given_a,
        "s": alone.p_plus - p_b_given_a,
    }


def correlator(state: State, setting_a: ModularSetting, setting_b: ModularSetting) -> float:
    """Two-time correlator C_AB = sum_ab ab P(a, b) from the exact tree."""
    tree = measure_sequence(state, [setting_a, setting_b])
    total = 0.0
    for outcomes, leaf in tree.leaves():
        total += outcomes[0] * outcomes[1] * leaf.probability
    return total


def sample_shots(
    state: State,
    settings: Sequence[ModularSetting],
    n_shots: int,
    seed: int,
) -> dict:
    """Multinomial shot sampling of the exact tree probabilities."""
    if n_shots < 0:
        raise ValueError("n_shots must be >= 0")
    probs = measure_sequence(state, settings).joint_probabilities()
    keys = sorted(probs)
    if n_shots == 0:
        return {}
    p = np.array([max(probs[k], 0.0) for k in keys])
    p = p / p.sum()
    counts = np.random.default_rng(seed).multinomial(n_shots, p)
    return {k: int(c) for k, c in zip(keys, counts) if c > 0}
