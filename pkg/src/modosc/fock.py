"""Truncated Fock-space representation of a harmonic oscillator.

Conventions used throughout the package (all verified by the test suite):

* dimensionless quadratures X = (a + a†)/2, P = (a - a†)/(2i), so that
  [X, P] = i/2 and <alpha|X|alpha> = Re(alpha), <alpha|P|alpha> = Im(alpha).
  The vacuum has Var(X) = Var(P) = 1/4.
* displacement D(alpha) = exp(alpha a† - conj(alpha) a) with composition law
  D(a) D(b) = exp(i Im(a conj(b))) D(a + b)   (the matrix-verified sign).
* squeeze S(xi) = exp((conj(xi) a^2 - xi a†^2)/2); positive real xi squeezes
  position: Var_X(S(r)|0>) = exp(-2r)/4.

Truncation policy: every experiment computes its maximum total displacement up
front and calls :func:`auto_dim`; states validate a leakage invariant on
construction so silent truncation cannot creep in.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache as _lru_cache
from typing import Optional, Union

import numpy as np

DEFAULT_DIM_CEILING = 400
NORM_TOL = 1e-10
LEAKAGE_TOL = 1e-8


class TruncationError(Exception):
    """Raised when an experiment does not fit in the allowed Fock truncation."""


@dataclass(frozen=True)
class OscillatorConstants:
    """Physical constants of the trapped-oscillator realization.

    Only ``displacement_rate_c`` enters the numerics (it converts displacement
    amplitude to pulse duration for the noise model); the rest document the
    physical setting and are validated for sanity.
    """

    trap_frequency: float = 2 * math.pi * 1.85e6  # rad/s
    mass_amu: float = 40.0
    lamb_dicke: float = 0.05
    displacement_rate_c: float = 0.030  # amplitude per microsecond of SDF drive

    C_RANGE = (0.028, 0.035)

    def __post_init__(self):
        for name in ("trap_frequency", "mass_amu", "lamb_dicke", "displacement_rate_c"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be strictly positive")

    @classmethod
    def from_config(cls, data: dict) -> "OscillatorConstants":
        const = cls(**data)
        lo, hi = cls.C_RANGE
        if not (lo <= const.displacement_rate_c <= hi):
            raise ValueError(
                f"displacement_rate_c={const.displacement_rate_c} outside the "
                f"admissible range [{lo}, {hi}]"
            )
        return const


def auto_dim(
    max_total_displacement: float,
    base_excitation: int = 0,
    margin: float = 3.0,
    ceiling: int = DEFAULT_DIM_CEILING,
) -> int:
    """Fock truncation size covering a planned experiment.

    ``max_total_displacement`` is the largest |center| any branch of the
    experiment reaches in phase space; ``base_excitation`` covers the Fock
    spread of the undisplaced input state (thermal/squeezed/Fock tails).
    """
    if max_total_displacement < 0:
        raise ValueError("max_total_displacement must be >= 0")
    n = math.ceil((max_total_displacement + margin) ** 2) + int(base_excitation) + 20
    if n > ceiling:
        raise TruncationError(
            f"required Fock dimension {n} exceeds ceiling {ceiling}; "
            "experiment too large for desk scale"
        )
    return n


# ---------------------------------------------------------------------------
# operators


def destroy(dim: int) -> np.ndarray:
    return np.diag(np.sqrt(np.arange(1, dim)), 1).astype(np.complex128)


def create(dim: int) -> np.ndarray:
    return destroy(dim).conj().T


def number_op(dim: int) -> np.ndarray:
    return np.diag(np.arange(dim)).astype(np.complex128)


def position_op(dim: int) -> np.ndarray:
    a = destroy(dim)
    return (a + a.conj().T) / 2


def momentum_op(dim: int) -> np.ndarray:
    a = destroy(dim)
    return (a - a.conj().T) / 2j


@dataclass(frozen=True)
class OperatorMatrix:
    dim: int
    matrix: np.ndarray

    def __matmul__(self, other):
        if isinstance(other, OperatorMatrix):
            return OperatorMatrix(self.dim, self.matrix @ other.matrix)
        return self.matrix @ other

    def dagger(self) -> "OperatorMatrix":
        return OperatorMatrix(self.dim, self.matrix.conj().T)


def _expm(mat: np.ndarray) -> np.ndarray:
    # scipy's expm is accurate for the anti-Hermitian generators used here
    from scipy.linalg import expm

    return expm(mat)


@_lru_cache(maxsize=512)
def _displacement_cached(alpha: complex, dim: int) -> np.ndarray:
    a = destroy(dim)
    mat = _expm(alpha * a.conj().T - np.conj(alpha) * a)
    mat.setflags(write=False)
    return mat


def displacement_matrix(alpha: complex, dim: int) -> OperatorMatrix:
    """D(alpha) = exp(alpha a† - conj(alpha) a) in the Fock basis.

    Cached: sweeps and trees reuse the same displacements heavily.
    """
    return OperatorMatrix(dim, _displacement_cached(complex(alpha), dim))


def squeeze_matrix(xi: complex, dim: int) -> OperatorMatrix:
    """S(xi) = exp((conj(xi) a^2 - xi a†^2)/2); real xi>0 squeezes position."""
    a = destroy(dim)
    ad = a.conj().T
    return OperatorMatrix(dim, _expm(0.5 * (np.conj(xi) * a @ a - xi * ad @ ad)))


def composition_phase(alpha_a: complex, alpha_b: complex) -> float:
    """Phase in D(a)D(b) = exp(i*phase) D(a+b), matrix-verified sign.

    This is the negative of the geometric phase Phi = Im(conj(a)*b) that
    enters the signaling and correlator formulas (see formulas module).
    """
    return float(np.imag(alpha_a * np.conj(alpha_b)))


# ---------------------------------------------------------------------------
# states


def _check_leakage(probs: np.ndarray, threshold: float, what: str) -> None:
    dim = probs.shape[0]
    top = max(1, dim - int(math.floor(0.9 * dim)))
    leak = float(np.sum(probs[dim - top:]))
    if leak > threshold:
        raise TruncationError(
            f"{what}: probability {leak:.3e} in the top 10% of Fock levels "
            f"exceeds {threshold:.1e}; increase dim"
        )


@dataclass(frozen=True)
class PureState:
    dim: int
    amplitudes: np.ndarray
    leakage_tol: float = LEAKAGE_TOL

    def __post_init__(self):
        vec = np.asarray(self.amplitudes, dtype=np.complex128)
        object.__setattr__(self, "amplitudes", vec)
        if vec.shape != (self.dim,):
            raise ValueError(f"amplitudes shape {vec.shape} != ({self.dim},)")
        norm2 = float(np.vdot(vec, vec).real)
        if abs(norm2 - 1.0) > NORM_TOL:
            raise ValueError(f"state norm^2 = {norm2} deviates from 1 beyond {NORM_TOL}")
        _check_leakage(np.abs(vec) ** 2, self.leakage_tol, "PureState")

    @classmethod
    def normalized(cls, vec: np.ndarray, leakage_tol: float = LEAKAGE_TOL) -> "PureState":
        vec = np.asarray(vec, dtype=np.complex128)
        norm = np.linalg.norm(vec)
        if norm < 1e-300:
            raise ValueError("cannot normalize a zero vector")
        return cls(len(vec), vec / norm, leakage_tol)

    def density_matrix(self) -> np.ndarray:
        return np.outer(self.amplitudes, self.amplitudes.conj())

    def to_mixed(self) -> "MixedState":
        return MixedState(self.dim, self.density_matrix(), self.leakage_tol)

    def expect(self, op: np.ndarray) -> complex:
        return complex(np.vdot(self.amplitudes, op @ self.amplitudes))


@dataclass(frozen=True)
class MixedState:
    dim: int
    matrix: np.ndarray
    leakage_tol: float = LEAKAGE_TOL

    def __post_init__(self):
        mat = np.asarray(self.matrix, dtype=np.complex128)
        object.__setattr__(self, "matrix", mat)
        if mat.shape != (self.dim, self.dim):
            raise ValueError(f"matrix shape {mat.shape} != ({self.dim}, {self.dim})")
        herm = float(np.max(np.abs(mat - mat.conj().T)))
        if herm > 1e-10:
            raise ValueError(f"density matrix not Hermitian (max dev {herm:.2e})")
        tr = float(np.trace(mat).real)
        if abs(tr - 1.0) > NORM_TOL:
            raise ValueError(f"trace {tr} deviates from 1 beyond {NORM_TOL}")
        evals = np.linalg.eigvalsh(mat)
        if float(evals.min()) < -1e-9:
            raise ValueError(f"negative eigenvalue {evals.min():.2e} below -1e-9")
        _check_leakage(np.abs(np.diag(mat).real), self.leakage_tol, "MixedState")

    def density_matrix(self) -> np.ndarray:
        return self.matrix

    def expect(self, op: np.ndarray) -> complex:
        return complex(np.trace(self.matrix @ op))

    def purity(self) -> float:
        return float(np.trace(self.matrix @ self.matrix).real)


State = Union[PureState, MixedState]


# ---------------------------------------------------------------------------
# state specifications

_KINDS = ("vacuum", "fock", "coherent", "squeezed", "thermal", "cat", "gkp")


@dataclass(frozen=True)
class StateSpec:
    """Tagged description of an input state, serializable for configs.

    kinds: vacuum | fock(n) | coherent(alpha) | squeezed(xi) | thermal(nbar)
    | cat(beta, base)  -- normalized (D(-beta/2) + D(beta/2)) |base>
    | gkp(spacing, envelope) -- Gaussian-envelope comb of displaced
      position-squeezed vacua with r = -ln(envelope).
    """

    kind: str = "vacuum"
    n: int = 0
    alpha: complex = 0j
    xi: complex = 0j
    nbar: float = 0.0
    beta: complex = 0j
    base: Optional["StateSpec"] = None
    spacing: float = 0.0
    envelope: float = 0.0

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown state kind {self.kind!r}")
        if self.kind == "thermal" and self.nbar < 0:
            raise ValueError("thermal nbar must be >= 0")
        if self.kind == "fock" and self.n < 0:
            raise ValueError("fock n must be >= 0")
        if self.kind == "gkp" and (self.spacing <= 0 or not (0 < self.envelope < 1)):
            raise ValueError("gkp requires spacing > 0 and 0 < envelope < 1")
        if self.kind == "cat" and self.base is not None and self.base.kind in ("cat", "gkp", "thermal"):
            raise ValueError(f"cat base kind {self.base.kind!r} not supported")

    # -- config (de)serialization ------------------------------------------
    @classmethod
    def from_dict(cls, data: Union[dict, str]) -> "StateSpec":
        if isinstance(data, str):
            data = {"kind": data}
        data = dict(data)
        kind = data.pop("kind")
        kwargs = {}
        for key, val in data.items():
            if key == "base":
                kwargs["base"] = cls.from_dict(val)
            elif key in ("alpha", "xi", "beta"):
                kwargs[key] = _parse_complex(val)
            else:
                kwargs[key] = val
        return cls(kind=kind, **kwargs)

    def to_dict(self) -> dict:
        out: dict = {"kind": self.kind}
        if self.kind == "fock":
            out["n"] = self.n
        elif self.kind == "coherent":
            out["alpha"] = _format_complex(self.alpha)
        elif self.kind == "squeezed":
            out["xi"] = _format_complex(self.xi)
        elif self.kind == "thermal":
            out["nbar"] = self.nbar
        elif self.kind == "cat":
            out["beta"] = _format_complex(self.beta)
            out["base"] = (self.base or StateSpec()).to_dict()
        elif self.kind == "gkp":
            out["spacing"] = self.spacing
            out["envelope"] = self.envelope
        return out

    # -- truncation planning -----------------------------------------------
    def displacement_reach(self) -> float:
        """Largest |phase-space center| the bare state occupies."""
        if self.kind == "coherent":
            return abs(self.alpha)
        if self.kind == "cat":
            reach = abs(self.beta) / 2
            if self.base is not None:
                reach += self.base.displacement_reach()
            return reach
        if self.kind == "gkp":
            return _gkp_cut(self.spacing, self.envelope) * self.spacing
        return 0.0

    def base_excitation(self) -> int:
        """Fock levels needed by the undisplaced envelope (tail < ~1e-10)."""
        if self.kind == "fock":
            return self.n
        if self.kind == "squeezed":
            return _squeeze_excitation(abs(self.xi))
        if self.kind == "thermal":
            return _thermal_excitation(self.nbar)
        if self.kind == "cat":
            return (self.base or StateSpec()).base_excitation()
        if self.kind == "gkp":
            return _squeeze_excitation(-math.log(self.envelope))
        return 0


def _parse_complex(val) -> complex:
    if isinstance(val, (int, float, complex)):
        return complex(val)
    if isinstance(val, (list, tuple)) and len(val) == 2:
        return complex(float(val[0]), float(val[1]))
    if isinstance(val, str):
        return complex(val.replace(" ", "").replace("i", "j"))
    raise ValueError(f"cannot parse complex value {val!r}")


def _format_complex(z: complex) -> str:
    return f"{z.real:.12g}{z.imag:+.12g}j"


def _squeeze_excitation(r: float) -> int:
    """Smallest even cutoff with squeezed-vacuum Fock tail below 1e-10."""
    if r < 1e-12:
        return 0
    t2 = math.tanh(r) ** 2
    term = 1.0 / math.cosh(r)  # p_0
    total = term
    k = 0
    while 1.0 - total > 1e-10 and k < 4000:
        k += 1
        term *= t2 * (2 * k - 1) / (2 * k)
        total += term
    return 2 * k + 2


def _thermal_excitation(nbar: float) -> int:
    if nbar < 1e-12:
        return 0
    ratio = nbar / (1.0 + nbar)
    return int(math.ceil(-23.0 / math.log(ratio))) + 2


def _gkp_cut(spacing: float, envelope: float) -> int:
    """Comb half-length L with dropped Gaussian-envelope weight < 1e-6."""
    l = 1
    while math.exp(-(envelope * spacing * l) ** 2) > 1e-7:
        l += 1
        if l > 10000:
            raise ValueError("gkp comb does not converge")
    return l


def make_state(spec: Union[StateSpec, dict, str], dim: int) -> State:
    """Construct the state described by ``spec`` at truncation ``dim``.

    Thermal specs return a MixedState; everything else a PureState.
    """
    if not isinstance(spec, StateSpec):
        spec = StateSpec.from_dict(spec)
    if spec.kind == "vacuum":
        vec = np.zeros(dim, np.complex128)
        vec[0] = 1.0
        return PureState(dim, vec)
    if spec.kind == "fock":
        if spec.n >= dim:
            raise TruncationError(f"fock level {spec.n} >= dim {dim}")
        vec = np.zeros(dim, np.complex128)
        vec[spec.n] = 1.0
        return PureState(dim, vec)
    if spec.kind == "coherent":
        return _displaced_vacuum(spec.alpha, dim)
    if spec.kind == "squeezed":
        vac = np.zeros(dim, np.complex128)
        vac[0] = 1.0
        return PureState.normalized(squeeze_matrix(spec.xi, dim).matrix @ vac)
    if spec.kind == "thermal":
        if spec.nbar == 0:
            mat = np.zeros((dim, dim), np.complex128)
            mat[0, 0] = 1.0
            return MixedState(dim, mat)
        p = np.exp(np.arange(dim) * math.log(spec.nbar / (1 + spec.nbar)))
        p = p / p.sum()
        return MixedState(dim, np.diag(p).astype(np.complex128))
    if spec.kind == "cat":
        base = make_state(spec.base or StateSpec(), dim)
        if isinstance(base, MixedState):
            raise ValueError("cat over a mixed base is not supported")
        half = spec.beta / 2
        dp = displacement_matrix(half, dim).matrix
        vec = dp.conj().T @ base.amplitudes + dp @ base.amplitudes
        return PureState.normalized(vec)
    if spec.kind == "gkp":
        r = -math.log(spec.envelope)
        vac = np.zeros(dim, np.complex128)
        vac[0] = 1.0
        packet = squeeze_matrix(r, dim).matrix @ vac
        cut = _gkp_cut(spec.spacing, spec.envelope)
        vec = np.zeros(dim, np.complex128)
        for l in range(-cut, cut + 1):
            weight = math.exp(-0.5 * (spec.envelope * spec.spacing * l) ** 2)
            vec += weight * (displacement_matrix(l * spec.spacing, dim).matrix @ packet)
        return PureState.normalized(vec)
    raise ValueError(f"unhandled kind {spec.kind}")


def _displaced_vacuum(alpha: complex, dim: int) -> PureState:
    # direct Fock expansion avoids an expm for plain coherent states
    if alpha == 0:
        vec = np.zeros(dim, np.complex128)
        vec[0] = 1.0
        return PureState(dim, vec)
    from scipy.special import gammaln

    n = np.arange(dim)
    logmag = -0.5 * abs(alpha) ** 2 + n * math.log(abs(alpha))
    amps = np.exp(logmag - 0.5 * gammaln(n + 1)) * np.exp(1j * n * np.angle(alpha))
    return PureState.normalized(amps)


def plan_dim(
    spec: Union[StateSpec, dict, str],
    measurement_reach: float,
    margin: float = 3.0,
    ceiling: int = DEFAULT_DIM_CEILING,
) -> int:
    """auto_dim for an input state plus the measurement displacement budget."""
    if not isinstance(spec, StateSpec):
        spec = StateSpec.from_dict(spec)
    return auto_dim(
        spec.displacement_reach() + measurement_reach,
        spec.base_excitation(),
        margin,
        ceiling,
    )


def overlap_matrix(state: State, alpha: complex) -> complex:
    """Wave-packet overlap m_alpha = <D(alpha)> = Tr(rho D(alpha))."""
    dmat = displacement_matrix(alpha, state.dim).matrix
    if isinstance(state, PureState):
        val = complex(np.vdot(state.amplitudes, dmat @ state.amplitudes))
    else:
        val = complex(np.trace(state.matrix @ dmat))
    if abs(val) > 1.0 + 1e-9:
        raise TruncationError(f"|overlap| = {abs(val)} > 1; truncation too small")
    return val
