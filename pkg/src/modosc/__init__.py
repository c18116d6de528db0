"""Sequential modular position/momentum measurements of a harmonic oscillator.

Exact truncated-Fock simulation, closed-form predictors, Leggett-Garg
analysis with optimization and noise modeling, plus supporting oracles
(three-level pulse sequence, classical Ramsey model) and Wigner plotting.
"""

from .fock import (
    MixedState,
    OperatorMatrix,
    OscillatorConstants,
    PureState,
    StateSpec,
    TruncationError,
    auto_dim,
    composition_phase,
    displacement_matrix,
    make_state,
    overlap_matrix,
    plan_dim,
    squeeze_matrix,
)
from .formulas import (
    NsitConditions,
    OverlapValue,
    classical_fidelity,
    corr_asymmetric,
    corr_symmetric,
    geometric_phase,
    nsit_conditions,
    overlap_closed_form,
    sit_asymmetric,
    sit_symmetric,
)
from .measure import (
    BranchNode,
    MeasureResult,
    ModularSetting,
    correlator,
    kraus_pair,
    measure_once,
    measure_sequence,
    sample_shots,
    signaling,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
