"""Batch experiment runner: declarative YAML configs -> CSV + JSON sidecar.

Every figure of the study has a canned config in configs/; outputs are
deterministic for a fixed seed (CSV files reproduce bit-identically). Exit
codes: 0 success, 1 numerical failure (truncation/convergence), 2 config
error. Schema violations and runtime failures emit machine-readable JSON on
stderr.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Callable, List, Optional, Sequence

import numpy as np
import yaml

from . import classical as cl
from . import threelevel as tl
from .fock import StateSpec, TruncationError, make_state, overlap_matrix, plan_dim
from .formulas import (
    corr_asymmetric,
    geometric_phase,
    overlap_closed_form,
    sit_symmetric,
)
from .lgi import (
    ConvergenceError,
    LgiSettings,
    continuation_chain,
    lgi_closed,
    squeezed_lgi_comparison,
)
from .measure import ModularSetting, correlator, measure_once, signaling
from .noise import NoiseParams, noisy_lgi_value
from .wigner import wigner_grid


class ConfigError(Exception):
    """Invalid experiment configuration."""


KINDS = (
    "sit-scan",
    "nsit-suite",
    "correlator-map",
    "lgi-sweep",
    "lgi-optimize",
    "wigner",
    "classical-ramsey",
    "three-level-check",
)

_GRID = {
    "type": "object",
    "required": ["start", "stop", "step"],
    "properties": {
        "start": {"type": "number"},
        "stop": {"type": "number"},
        "step": {"type": "number", "exclusiveMinimum": 0},
    },
    "additionalProperties": False,
}

_COMPLEX = {"type": ["string", "number", "array"]}

_STATE = {"type": ["object", "string"]}

_NOISE = {
    "type": "object",
    "properties": {
        "dephasing_rate": {"type": "number", "minimum": 0},
        "linewidth_fwhm": {"type": "number", "minimum": 0},
        "phase_offset": {"type": "number", "minimum": 0},
        "n_phase_samples": {"type": "integer", "minimum": 1},
        "sdf_time_per_unit": {"type": "number", "minimum": 0},
    },
    "additionalProperties": False,
}

_COMMON = {
    "kind": {"enum": list(KINDS)},
    "name": {"type": "string", "pattern": r"^[A-Za-z0-9_\-]+$"},
    "seed": {"type": "integer", "minimum": 0},
}

SCHEMAS = {
    "sit-scan": {
        "type": "object",
        "required": ["kind", "name", "alpha_b", "sweep"],
        "properties": {
            **_COMMON,
            "state": _STATE,
            "alpha_a": _COMPLEX,
            "alpha_b": _COMPLEX,
            "variant": {"enum": ["symmetric", "asymmetric"]},
            "phi_b": {"type": "number"},
            "sweep": {
                "type": "object",
                "required": ["parameter"],
                "properties": {
                    "parameter": {"enum": ["squeeze_r", "alpha_a_real"]},
                    "start": {"type": "number"},
                    "stop": {"type": "number"},
                    "step": {"type": "number", "exclusiveMinimum": 0},
                    "values": {"type": "array", "items": {"type": "number"}},
                },
                "additionalProperties": False,
            },
        },
        "additionalProperties": False,
    },
    "nsit-suite": {
        "type": "object",
        "required": ["kind", "name", "alpha_a", "alpha_b", "bases", "n_phases"],
        "properties": {
            **_COMMON,
            "alpha_a": _COMPLEX,
            "alpha_b": _COMPLEX,
            "sit_alpha_a": _COMPLEX,
            "bases": {"type": "array", "items": _STATE, "minItems": 1},
            "n_phases": {"type": "integer", "minimum": 1},
        },
        "additionalProperties": False,
    },
    "correlator-map": {
        "type": "object",
        "required": ["kind", "name", "alpha_a", "phi_a", "phi_b", "re_grid", "im_grid"],
        "properties": {
            **_COMMON,
            "state": _STATE,
            "alpha_a": _COMPLEX,
            "phi_a": {"type": "number"},
            "phi_b": {"type": "number"},
            "re_grid": _GRID,
            "im_grid": _GRID,
            "tree_check_stride": {"type": "integer", "minimum": 0},
        },
        "additionalProperties": False,
    },
    "lgi-sweep": {
        "type": "object",
        "required": ["kind", "name", "amp_grid", "nbar_values"],
        "properties": {
            **_COMMON,
            "amp_grid": _GRID,
            "nbar_values": {"type": "array", "items": {"type": "number", "minimum": 0}},
            "continuation_start": {"type": "number", "exclusiveMinimum": 0},
            "continuation_step": {"type": "number", "exclusiveMinimum": 0},
            "n_restarts": {"type": "integer", "minimum": 1},
            "noise": _NOISE,
        },
        "additionalProperties": False,
    },
    "lgi-optimize": {
        "type": "object",
        "required": ["kind", "name", "amp_grid"],
        "properties": {
            **_COMMON,
            "amp_grid": _GRID,
            "nbar": {"type": "number", "minimum": 0},
            "n_restarts": {"type": "integer", "minimum": 1},
            "squeeze_compare": {"type": "number"},
        },
        "additionalProperties": False,
    },
    "wigner": {
        "type": "object",
        "required": ["kind", "name", "state"],
        "properties": {
            **_COMMON,
            "state": _STATE,
            "pipeline": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": ["alpha"],
                    "properties": {
                        "alpha": _COMPLEX,
                        "phi": {"type": "number"},
                        "variant": {"enum": ["symmetric", "asymmetric"]},
                        "branch": {"enum": [1, -1]},
                    },
                    "additionalProperties": False,
                },
            },
            "resolution": {"type": "integer", "minimum": 11},
            "extent": {"type": ["number", "null"]},
        },
        "additionalProperties": False,
    },
    "classical-ramsey": {
        "type": "object",
        "required": ["kind", "name", "a0_values", "sigma", "frequency", "wait_grid"],
        "properties": {
            **_COMMON,
            "a0_values": {"type": "array", "items": {"type": "number"}},
            "sigma": {"type": "number", "minimum": 0},
            "frequency": {"type": "number", "exclusiveMinimum": 0},
            "phi": {"type": "number"},
            "wait_grid": _GRID,
            "mc_check": {
                "type": "object",
                "required": ["n_samples", "every"],
                "properties": {
                    "n_samples": {"type": "integer", "minimum": 1},
                    "every": {"type": "integer", "minimum": 1},
                },
                "additionalProperties": False,
            },
        },
        "additionalProperties": False,
    },
    "three-level-check": {
        "type": "object",
        "required": ["kind", "name", "n_cases"],
        "properties": {**_COMMON, "n_cases": {"type": "integer", "minimum": 1}},
        "additionalProperties": False,
    },
}


def validate_config(config: dict) -> None:
    import jsonschema

    if not isinstance(config, dict) or "kind" not in config:
        raise ConfigError("config must be a mapping with a 'kind' field")
    kind = config["kind"]
    if kind not in SCHEMAS:
        raise ConfigError(f"unknown experiment kind {kind!r}; valid: {', '.join(KINDS)}")
    try:
        jsonschema.validate(config, SCHEMAS[kind])
    except jsonschema.ValidationError as err:
        path = "/".join(str(p) for p in err.absolute_path) or "<root>"
        raise ConfigError(f"field {path}: {err.message}") from err


# ---------------------------------------------------------------------------
# helpers


def _grid(spec: dict) -> np.ndarray:
    n = int(round((spec["stop"] - spec["start"]) / spec["step"])) + 1
    return np.round(spec["start"] + spec["step"] * np.arange(n), 12)


def _parse_alpha(val) -> complex:
    from .fock import _parse_complex

    return _parse_complex(val)


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, str):
        return value
    return f"{float(value):.12e}"


def write_csv(path: Path, header: Sequence[str], rows: Sequence[Sequence]) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def _parallel_map(fn: Callable, items: Sequence, threads: int) -> List:
    if threads <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


# ---------------------------------------------------------------------------
# experiment implementations (each returns {file stem -> (header, rows)} +
# diagnostics)


def _run_sit_scan(config: dict, threads: int, dim_override: Optional[int]):
    variant = config.get("variant", "symmetric")
    phi_b = float(config.get("phi_b", 0.0))
    alpha_b = _parse_alpha(config["alpha_b"])
    sweep = config["sweep"]
    values = sweep.get("values")
    grid = np.asarray(values, dtype=float) if values else _grid(sweep)
    param = sweep["parameter"]
    dims = set()

    def point(value: float):
        if param == "squeeze_r":
            spec = StateSpec(kind="squeezed", xi=float(value))
            alpha_a = _parse_alpha(config["alpha_a"])
        else:
            spec = StateSpec.from_dict(config.get("state", "vacuum"))
            alpha_a = complex(float(value))
        sa = ModularSetting(alpha=alpha_a, variant=variant)
        sb = ModularSetting(alpha=alpha_b, phi=phi_b, variant=variant)
        dim = dim_override or plan_dim(spec, sa.reach() + sb.reach() + abs(alpha_b))
        dims.add(dim)
        st = make_state(spec, dim)
        sig = signaling(st, sa, sb)
        m_b = overlap_matrix(st, alpha_b)
        s_closed = sit_symmetric(alpha_a, alpha_b, m_b) if variant == "symmetric" else None
        if variant == "asymmetric":
            from .formulas import sit_asymmetric

            s_closed = sit_asymmetric(alpha_a, alpha_b, phi_b, m_b)
        return (value, sig["p_b"], sig["p_b_after_a"], sig["s"], s_closed)

    rows = _parallel_map(point, list(grid), threads)
    header = [param, "p_b", "p_b_after_a", "s_tree", "s_closed"]
    return {config["name"]: (header, rows)}, {"dims": sorted(dims), "points": len(rows)}


def _nsit_suite_rows(
    bases: Sequence[StateSpec],
    n_phases: int,
    alpha_a: complex,
    alpha_b: complex,
    sit_alpha_a: Optional[complex],
    threads: int,
    dim_override: Optional[int],
):
    """Shared engine for the 150-state suite (also used by the tests)."""
    phis = np.linspace(0.0, 2 * math.pi, n_phases, endpoint=False)
    tasks = [(bi, base, float(phi)) for bi, base in enumerate(bases) for phi in phis]
    dims = set()

    def point(task):
        bi, base, phi_i = task
        spec = StateSpec(kind="cat", beta=abs(alpha_b) * np.exp(1j * phi_i), base=base)
        sa = ModularSetting(alpha=alpha_a)
        sb = ModularSetting(alpha=alpha_b)
        dim = dim_override or plan_dim(spec, sa.reach() + sb.reach())
        dims.add(dim)
        st = make_state(spec, dim)
        sig = signaling(st, sa, sb)
        s_sit = None
        if sit_alpha_a is not None:
            s_sit = signaling(st, ModularSetting(alpha=sit_alpha_a), sb)["s"]
        return (bi, base.kind, phi_i, sig["p_b"], sig["p_b_after_a"], sig["s"], s_sit)

    rows = _parallel_map(point, tasks, threads)
    return rows, dims


def _run_nsit_suite(config: dict, threads: int, dim_override: Optional[int]):
    bases = [StateSpec.from_dict(b) for b in config["bases"]]
    alpha_a = _parse_alpha(config["alpha_a"])
    alpha_b = _parse_alpha(config["alpha_b"])
    sit_alpha = _parse_alpha(config["sit_alpha_a"]) if "sit_alpha_a" in config else None
    rows, dims = _nsit_suite_rows(
        bases, int(config["n_phases"]), alpha_a, alpha_b, sit_alpha, threads, dim_override
    )
    header = ["base_index", "base_kind", "phi_i", "p_b", "p_b_after_a", "s", "s_sit_theory"]

    # histogram summary over both S populations
    s_vals = np.array([r[5] for r in rows])
    hist_rows = []
    edges = np.linspace(-0.55, 0.55, 45)
    counts_nsit, _ = np.histogram(s_vals, bins=edges)
    if sit_alpha is not None:
        sit_vals = np.array([r[6] for r in rows])
        counts_sit, _ = np.histogram(sit_vals, bins=edges)
    else:
        counts_sit = np.zeros_like(counts_nsit)
    for lo, hi, cn, cs in zip(edges[:-1], edges[1:], counts_nsit, counts_sit):
        hist_rows.append((lo, hi, int(cn), int(cs)))
    name = config["name"]
    return (
        {
            name: (header, rows),
            f"{name}_hist": (["bin_left", "bin_right", "count_nsit", "count_sit"], hist_rows),
        },
        {
            "dims": sorted(dims),
            "states": len(rows),
            "max_abs_s": float(np.max(np.abs(s_vals))),
        },
    )


def _run_correlator_map(config: dict, threads: int, dim_override: Optional[int]):
    spec = StateSpec.from_dict(config.get("state", "vacuum"))
    alpha_a = _parse_alpha(config["alpha_a"])
    phi_a, phi_b = float(config["phi_a"]), float(config["phi_b"])
    stride = int(config.get("tree_check_stride", 0))
    res = _grid(config["re_grid"])
    ims = _grid(config["im_grid"])
    points = [(float(r), float(i)) for i in ims for r in res]
    dims = set()

    def point(idx_pt):
        idx, (re_b, im_b) = idx_pt
        alpha_b = complex(re_b, im_b)
        m_minus = overlap_closed_form(spec, alpha_a - alpha_b)
        m_plus = overlap_closed_form(spec, alpha_a + alpha_b)
        c_closed = corr_asymmetric(alpha_a, alpha_b, phi_a, phi_b, m_minus, m_plus)
        c_tree = None
        if stride and idx % stride == 0:
            sa = ModularSetting(alpha=alpha_a, phi=phi_a, variant="asymmetric")
            sb = ModularSetting(alpha=alpha_b, phi=phi_b, variant="asymmetric")
            dim = dim_override or plan_dim(spec, sa.reach() + sb.reach())
            dims.add(dim)
            st = make_state(spec, dim)
            c_tree = correlator(st, sa, sb)
        return (re_b, im_b, c_closed, geometric_phase(alpha_a, alpha_b), c_tree)

    rows = _parallel_map(point, list(enumerate(points)), threads)
    header = ["re_b", "im_b", "c_closed", "phi_geo", "c_tree"]
    checked = [r for r in rows if r[4] is not None]
    max_dev = max((abs(r[2] - r[4]) for r in checked), default=0.0)
    return {config["name"]: (header, rows)}, {
        "dims": sorted(dims),
        "points": len(rows),
        "tree_checked": len(checked),
        "max_tree_dev": max_dev,
    }


def _run_lgi_sweep(config: dict, threads: int, dim_override: Optional[int], seed: int):
    amp_grid = _grid(config["amp_grid"])
    start = float(config.get("continuation_start", 0.2))
    step = float(config.get("continuation_step", 0.05))
    n_restarts = int(config.get("n_restarts", 40))
    chain_grid = np.round(np.arange(start, amp_grid[-1] + step / 2, step), 10)
    noise = NoiseParams.from_config(config["noise"]) if "noise" in config else None
    rows = []
    diag = {"chain_points": len(chain_grid), "n_restarts": n_restarts}
    for nbar in config["nbar_values"]:
        chain = continuation_chain(chain_grid, nbar=float(nbar), seed=seed, n_restarts=n_restarts)
        by_amp = {round(a, 10): (s, r) for a, s, r in chain}
        for amp in amp_grid:
            settings, result = by_amp[round(float(amp), 10)]
            l_noisy = None
            if noise is not None:
                l_noisy = noisy_lgi_value(settings, noise, seed)
            rows.append((nbar, amp, result.l_value, result.ts, result.l_penalized, l_noisy))
    header = ["nbar", "amp", "l_ideal", "ts", "l_pen", "l_noisy"]
    return {config["name"]: (header, rows)}, diag


def _run_lgi_optimize(config: dict, threads: int, dim_override: Optional[int], seed: int):
    amp_grid = _grid(config["amp_grid"])
    n_restarts = int(config.get("n_restarts", 40))
    if "squeeze_compare" in config:
        rows = squeezed_lgi_comparison(
            [float(a) for a in amp_grid], r=float(config["squeeze_compare"]),
            seed=seed, n_restarts=n_restarts,
        )
        header = ["amp", "l_ground", "l_squeezed", "ts_ground", "ts_squeezed", "packet_ratio_gain"]
        table = [tuple(row[h] for h in header) for row in rows]
        return {config["name"]: (header, table)}, {"points": len(table)}
    nbar = float(config.get("nbar", 0.0))
    chain = continuation_chain(amp_grid, nbar=nbar, seed=seed, n_restarts=n_restarts)
    header = ["amp", "theta_a", "theta_b", "theta_c", "phi_a", "phi_b", "phi_c", "l", "ts", "l_pen"]
    rows = [
        (a, s.theta_a, s.theta_b, s.theta_c, s.phi_a, s.phi_b, s.phi_c,
         r.l_value, r.ts, r.l_penalized)
        for a, s, r in chain
    ]
    return {config["name"]: (header, rows)}, {"points": len(rows), "n_restarts": n_restarts}


def _run_wigner(config: dict, threads: int, dim_override: Optional[int]):
    spec = StateSpec.from_dict(config["state"])
    pipeline = config.get("pipeline", [])
    settings = [
        ModularSetting(
            alpha=_parse_alpha(step["alpha"]),
            phi=float(step.get("phi", 0.0)),
            variant=step.get("variant", "symmetric"),
        )
        for step in pipeline
    ]
    reach = sum(s.reach() for s in settings)
    dim = dim_override or plan_dim(spec, reach)
    state = make_state(spec, dim)
    labels_states = [("input", state)]
    current = state
    for i, (setting, step) in enumerate(zip(settings, pipeline)):
        res = measure_once(current, setting)
        branch = int(step.get("branch", 1))
        current = res.post_plus if branch == 1 else res.post_minus
        if current is None:
            raise TruncationError(f"pipeline step {i} hit a degenerate branch")
        labels_states.append((f"after_{i + 1}", current))
    resolution = int(config.get("resolution", 201))
    extent = config.get("extent")
    rows = []
    for label, st in labels_states:
        grid = wigner_grid(st, extent=extent, resolution=resolution)
        for ip, p in enumerate(grid.p_axis):
            for ix, x in enumerate(grid.x_axis):
                rows.append((label, float(x), float(p), float(grid.values[ip, ix])))
    header = ["state", "x", "p", "w"]
    return {config["name"]: (header, rows)}, {"dim": dim, "states": len(labels_states)}


def _run_classical(config: dict, threads: int, dim_override: Optional[int], seed: int):
    waits = _grid(config["wait_grid"])
    sigma = float(config["sigma"])
    freq = float(config["frequency"])
    phi = float(config.get("phi", 0.0))
    mc = config.get("mc_check")
    rows = []
    for a0 in config["a0_values"]:
        for i, t in enumerate(waits):
            params = cl.ClassicalFieldParams(float(a0), sigma, freq, float(t), phi)
            q = cl.classical_q_expect(params)
            q_mc = None
            if mc and i % int(mc["every"]) == 0:
                q_mc = cl.classical_q_expect_mc(params, int(mc["n_samples"]), seed + i)
            rows.append((a0, t, q, q_mc))
    header = ["a0", "wait", "q_analytic", "q_mc"]
    return {config["name"]: (header, rows)}, {"points": len(rows)}


def _run_three_level(config: dict, threads: int, dim_override: Optional[int], seed: int):
    rng = np.random.default_rng(seed)
    rows = []
    worst = 0.0
    for case in range(int(config["n_cases"])):
        alpha = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        phi = float(rng.uniform(0, 2 * math.pi))
        spec = StateSpec()
        dim = dim_override or plan_dim(spec, abs(alpha) + 1.0)
        psi = make_state(spec, dim)
        out = tl.asymmetric_sequence(psi, alpha, phi)
        probs = tl.branch_probabilities(out)
        res = measure_once(psi, ModularSetting(alpha=alpha, phi=phi, variant="asymmetric"))
        dev = max(abs(probs[+1] - res.p_plus), abs(probs[-1] - res.p_minus))
        fid_p = fid_m = 1.0
        p, v = out.branch(tl.DOWN)
        if res.post_plus is not None and p > 1e-9:
            fid_p = abs(np.vdot(v, res.post_plus.amplitudes)) ** 2
        p, v = out.branch(tl.AUX)
        if res.post_minus is not None and p > 1e-9:
            fid_m = abs(np.vdot(v, res.post_minus.amplitudes)) ** 2
        inner = tl.inner_block(tl.from_oscillator(psi, tl.DOWN), alpha)
        block_dev = abs(inner.level_population(tl.DOWN) - 1.0)
        worst = max(worst, dev, 1 - fid_p, 1 - fid_m, block_dev)
        rows.append((case, alpha.real, alpha.imag, phi, res.p_plus, probs[+1], dev,
                     fid_p, fid_m, block_dev))
    header = ["case", "alpha_re", "alpha_im", "phi", "p_plus_kraus", "p_plus_sequence",
              "prob_dev", "fid_plus", "fid_minus", "inner_block_dev"]
    return {config["name"]: (header, rows)}, {"worst_deviation": worst}


# ---------------------------------------------------------------------------
# runner


def run(
    config: dict,
    out_dir: Path,
    seed: Optional[int] = None,
    dim_override: Optional[int] = None,
    threads: int = 1,
) -> dict:
    """Validate and execute one experiment config; returns the sidecar data."""
    validate_config(config)
    t0 = time.time()
    kind = config["kind"]
    eff_seed = int(config.get("seed", 0)) if seed is None else int(seed)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    if kind == "sit-scan":
        tables, diag = _run_sit_scan(config, threads, dim_override)
    elif kind == "nsit-suite":
        tables, diag = _run_nsit_suite(config, threads, dim_override)
    elif kind == "correlator-map":
        tables, diag = _run_correlator_map(config, threads, dim_override)
    elif kind == "lgi-sweep":
        tables, diag = _run_lgi_sweep(config, threads, dim_override, eff_seed)
    elif kind == "lgi-optimize":
        tables, diag = _run_lgi_optimize(config, threads, dim_override, eff_seed)
    elif kind == "wigner":
        tables, diag = _run_wigner(config, threads, dim_override)
    elif kind == "classical-ramsey":
        tables, diag = _run_classical(config, threads, dim_override, eff_seed)
    elif kind == "three-level-check":
        tables, diag = _run_three_level(config, threads, dim_override, eff_seed)
    else:  # pragma: no cover - guarded by validate_config
        raise ConfigError(f"unhandled kind {kind}")

    files = []
    for stem, (header, rows) in tables.items():
        path = out_dir / f"{stem}.csv"
        write_csv(path, header, rows)
        files.append(str(path))

    sidecar = {
        "config_sha256": hashlib.sha256(
            json.dumps(config, sort_keys=True, default=str).encode()
        ).hexdigest(),
        "kind": kind,
        "seed": eff_seed,
        "dim_override": dim_override,
        "diagnostics": diag,
        "outputs": files,
        "wall_time_s": round(time.time() - t0, 3),
    }
    meta_path = out_dir / f"{config['name']}.meta.json"
    with open(meta_path, "w") as fh:
        json.dump(sidecar, fh, indent=2, sort_keys=True)
    return sidecar


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = argparse.ArgumentParser(prog="modosc", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    runp = sub.add_parser("run", help="run an experiment config")
    runp.add_argument("config", type=Path, help="YAML config file")
    runp.add_argument("--out", type=Path, default=Path("out"), help="output directory")
    runp.add_argument("--seed", type=int, default=None, help="override the config seed")
    runp.add_argument("--dim-override", type=int, default=None, help="force the Fock dimension")
    runp.add_argument("--threads", type=int, default=1, help="worker threads for sweep points")
    args = parser.parse_args(argv)

    try:
        with open(args.config) as fh:
            config = yaml.safe_load(fh)
    except (OSError, yaml.YAMLError) as err:
        print(json.dumps({"error": {"type": "config", "message": str(err)}}), file=sys.stderr)
        return 2
    try:
        sidecar = run(config, args.out, args.seed, args.dim_override, args.threads)
    except ConfigError as err:
        print(json.dumps({"error": {"type": "config", "message": str(err)}}), file=sys.stderr)
        return 2
    except (TruncationError, ConvergenceError, FloatingPointError, ValueError) as err:
        print(
            json.dumps({"error": {"type": "numerical", "message": str(err)}}), file=sys.stderr
        )
        return 1
    print(json.dumps({"ok": sidecar["outputs"], "wall_time_s": sidecar["wall_time_s"]}))
    return 0


if __name__ == "__main__":
    sys.exit(main())
