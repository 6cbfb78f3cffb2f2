"""Configuration-driven sweeps producing data tables.

Each command has a typed schema of unit-suffixed keys with defaults.  A
configuration is a TOML document with one table per command (``[advantage]``,
``[rates]``, …); unknown tables or keys raise :class:`ConfigurationError`
naming the offending path.  Grid axes are sub-tables holding either
``min``/``max``/``count``/``spacing`` or an explicit ``values`` list.

Row evaluation is pure: a grid is a list of point specifications evaluated by
module-level functions, so it can be farmed out to worker processes and
re-assembled in index order.
"""
from __future__ import annotations

import copy
import hashlib
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Sequence

import numpy as np

from . import _toml
from .constants import E_A0, TWO_PI, mhz, to_mhz
from .constructions import (
    Role,
    cpf_construction,
    dit_construction,
    emitter_construction,
    fixed_finesse_collection,
)
from .cqed import CavityRates, collection_p1
from .errors import ConfigurationError
from .geometry import MirrorProcess
from .link import canonical_modality, canonical_protocol, evaluate_link
from .protocols import LinkBudget, Protocol, cpf_fidelity_from_reflections
from .rates import BIN_CONVENTIONS, advantage, scenario
from .scattering import Detunings, scatter_coeffs
from .transitions import get_transition, transition_for_modality, transition_registry

__all__ = [
    "COMMANDS",
    "SCHEMAS",
    "Axis",
    "Table",
    "resolve_config",
    "parse_override",
    "config_hash",
    "run_collect",
    "run_receiver_curves",
    "run_advantage",
    "run_rates",
    "run_oracle",
    "run_optimize",
    "run_transitions",
]


def _axis(lo, hi, count, spacing="log"):
    return {"min": lo, "max": hi, "count": count, "spacing": spacing}


_BUDGET = {"p_ex": 1.0, "p_half": 1.0, "p_det": 1.0, "xi": 1.0}

#: Command → key → default.  Dict defaults are axis tables; list defaults are lists.
SCHEMAS: dict[str, dict[str, Any]] = {
    "collect": {
        "R_mm": [5.0, 2.0, 1.0, 0.5, 0.3],
        "finesse": 4000.0,
        "h_ion_um": 70.0,
        "wavelength_nm": 493.0,
        "dipole_ea0": 2.34,
        "linewidth_MHz": 19.9,
        "left_fraction": 0.5,
        "n_points": 200,
    },
    "receiver-curves": {
        "C": _axis(0.01, 1.0e4, 121),
        "include_C": [30.607],
    },
    "advantage": {
        "protocol": "DIT",
        "modality": "tb",
        "F_min": 0.999,
        "h_ion_um": 70.0,
        "R_um": _axis(250.0, 5000.0, 50),
        "loss_bad_ppm": _axis(1.0, 300.0, 50),
        **_BUDGET,
    },
    "rates": {
        "scenario": "E1",
        "modalities": ["tb"],
        "protocols": ["type-II", "DIT", "CPF"],
        "F_min": [0.99],
        "R_um": 400.0,
        "h_ion_um": 70.0,
        "loss_bad_ppm": _axis(1.0, 300.0, 50),
        "bin_convention": "K",
        "bandwidth_pad": "scenario",
        **_BUDGET,
    },
    "oracle": {
        "n_points": 20,
        "seed": 0,
        "sampling": "uniform",
        "rate_min_MHz": 1.0,
        "rate_max_MHz": 100.0,
        "s_over_K": 12.0,
        "tolerance_P1": 1.0e-3,
        "scatter": [
            {"g_MHz": 20.0, "kappa_L_MHz": 10.0, "kappa_R_MHz": 0.0, "kappa_B_MHz": 0.0, "gamma_MHz": 10.0},
            {"g_MHz": 20.0, "kappa_L_MHz": 5.0, "kappa_R_MHz": 5.0, "kappa_B_MHz": 0.0, "gamma_MHz": 10.0},
            {"g_MHz": 50.0, "kappa_L_MHz": 30.0, "kappa_R_MHz": 30.0, "kappa_B_MHz": 5.0, "gamma_MHz": 3.0},
            {"g_MHz": 0.0, "kappa_L_MHz": 10.0, "kappa_R_MHz": 2.0, "kappa_B_MHz": 0.0, "gamma_MHz": 10.0},
            {"g_MHz": 5.0, "kappa_L_MHz": 10.0, "kappa_R_MHz": 0.0, "kappa_B_MHz": 0.0, "gamma_MHz": 10.0},
        ],
        "scatter_detunings_MHz": [[0.0, 0.0], [3.0, -2.0]],
        "sigma_over_kappa": 0.05,
        "band_sigmas": 2.0,
        "n_freq": 41,
        "tolerance_coeff": 1.0e-2,
    },
    "optimize": {
        "role": "emitter",
        "modality": "tb",
        "transition": "",
        "loss_bad_ppm": 10.0,
        "R_min_um": 400.0,
        "h_ion_um": 70.0,
        "F_min": 0.999,
        "bandwidth_pad": False,
        "length_policy": "auto",
    },
    "transitions": {},
}

COMMANDS = tuple(SCHEMAS)

_SCATTER_KEYS = {"g_MHz", "kappa_L_MHz", "kappa_R_MHz", "kappa_B_MHz", "gamma_MHz"}
_AXIS_KEYS = {"min", "max", "count", "spacing", "values"}


# ---------------------------------------------------------------------------
# configuration


def _type_ok(value, default) -> bool:
    if isinstance(default, bool):
        return isinstance(value, bool)
    if isinstance(default, float):
        return isinstance(value, (int, float)) and not isinstance(value, bool)
    if isinstance(default, int):
        return isinstance(value, int) and not isinstance(value, bool)
    if isinstance(default, str):
        return isinstance(value, str) or (default == "scenario" and isinstance(value, bool))
    if isinstance(default, list):
        return isinstance(value, list)
    return True


def _check_axis(path: str, value) -> dict:
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return {"values": [float(value)]}
    if isinstance(value, list):
        return {"values": [float(v) for v in value]}
    if not isinstance(value, dict):
        raise ConfigurationError(f"{path}: expected an axis table, a list or a number")
    unknown = set(value) - _AXIS_KEYS
    if unknown:
        raise ConfigurationError(f"{path}: unknown axis keys {sorted(unknown)}")
    return value


def _merge(command: str, base: dict, updates: dict, origin: str) -> dict:
    schema = SCHEMAS[command]
    for key, value in updates.items():
        path = f"{command}.{key}"
        head, _, rest = key.partition(".")
        if head not in schema:
            raise ConfigurationError(f"{origin}: unknown key {path!r}; allowed: {sorted(schema)}")
        default = schema[head]
        if rest:
            if not isinstance(default, dict):
                raise ConfigurationError(f"{origin}: {head!r} has no sub-keys")
            axis = dict(_check_axis(path, base[head]))
            if rest not in _AXIS_KEYS:
                raise ConfigurationError(f"{origin}: unknown axis key {path!r}")
            if rest == "values":
                axis = {"values": value}
            else:
                axis.pop("values", None)
                axis = {**schema[head], **axis, rest: value}
            base[head] = axis
        elif isinstance(default, dict):
            base[head] = _check_axis(path, value)
        elif not _type_ok(value, default):
            raise ConfigurationError(f"{origin}: {path} expects {type(default).__name__}, got {value!r}")
        else:
            base[head] = float(value) if isinstance(default, float) else value
    return base


def resolve_config(command: str, document: dict | None = None, overrides: Sequence[str] = ()) -> dict:
    """Defaults ← config-file table for ``command`` ← ``KEY=VALUE`` overrides.

    Raises:
        ConfigurationError: on unknown commands, tables or keys, or type mismatches.
    """
    if command not in SCHEMAS:
        raise ConfigurationError(f"unknown command {command!r}")
    config = copy.deepcopy(SCHEMAS[command])
    document = document or {}
    unknown_tables = set(document) - set(SCHEMAS)
    if unknown_tables:
        raise ConfigurationError(f"config: unknown tables {sorted(unknown_tables)}; allowed: {list(SCHEMAS)}")
    table = document.get(command, {})
    if not isinstance(table, dict):
        raise ConfigurationError(f"config: [{command}] must be a table")
    _merge(command, config, table, "config")
    _merge(command, config, dict(parse_override(o) for o in overrides), "--set")
    return config


def parse_override(text: str) -> tuple[str, Any]:
    """Parse ``KEY=VALUE``; the value is read as a TOML literal, falling back to a string.

    >>> parse_override("F_min=0.99")
    ('F_min', 0.99)
    >>> parse_override("modality=pol")
    ('modality', 'pol')
    """
    key, sep, raw = text.partition("=")
    key = key.strip()
    if not sep or not key:
        raise ConfigurationError(f"--set expects KEY=VALUE, got {text!r}")
    try:
        value = _toml.loads(f"v = {raw.strip()}")["v"]
    except Exception:
        value = raw.strip()
    return key, value


def config_hash(command: str, config: dict) -> str:
    """SHA-256 of the canonical JSON form of a resolved configuration."""
    blob = json.dumps({"command": command, "config": config}, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()


@dataclass(frozen=True)
class Axis:
    """A sweep axis: either a ``min``/``max``/``count``/``spacing`` range or explicit values."""

    name: str
    values: tuple[float, ...]

    @classmethod
    def from_config(cls, name: str, spec: dict) -> "Axis":
        if "values" in spec:
            vals = tuple(float(v) for v in spec["values"])
            if not vals:
                raise ConfigurationError(f"axis {name}: empty value list")
            return cls(name, vals)
        try:
            lo, hi, n = float(spec["min"]), float(spec["max"]), int(spec["count"])
        except KeyError as exc:
            raise ConfigurationError(f"axis {name}: missing {exc.args[0]!r}") from None
        spacing = spec.get("spacing", "log")
        if n < 2:
            raise ConfigurationError(f"axis {name}: count must be ≥ 2 (use 'values' for a single point)")
        if spacing == "log":
            if lo <= 0 or hi <= 0:
                raise ConfigurationError(f"axis {name}: log spacing needs positive bounds")
            vals = np.geomspace(lo, hi, n)
        elif spacing == "linear":
            vals = np.linspace(lo, hi, n)
        else:
            raise ConfigurationError(f"axis {name}: spacing must be 'log' or 'linear'")
        return cls(name, tuple(float(v) for v in vals))


@dataclass
class Table:
    """Tabular sweep output with per-column units and free-form notes."""

    columns: list[str]
    rows: list[list]
    notes: list[str] = field(default_factory=list)


def _map(fn: Callable, items: list, jobs: int) -> list:
    if jobs <= 1 or len(items) < 2:
        return [fn(item) for item in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * jobs))))


def _budget(cfg: dict) -> LinkBudget:
    return LinkBudget(cfg["p_ex"], cfg["p_half"], cfg["p_det"], cfg["xi"])


# ---------------------------------------------------------------------------
# collect


def run_collect(cfg: dict, jobs: int = 1) -> Table:
    """P1 versus resonant length at fixed finesse for each mirror radius."""
    lam = cfg["wavelength_nm"] * 1e-9
    gamma = 0.5 * mhz(cfg["linewidth_MHz"])
    dipole = cfg["dipole_ea0"] * E_A0
    h = cfg["h_ion_um"] * 1e-6
    n_points = cfg["n_points"] or None
    rows = []
    for r_mm in cfg["R_mm"]:
        curve = fixed_finesse_collection(r_mm * 1e-3, h, lam, dipole, gamma, cfg["finesse"],
                                         cfg["left_fraction"], n_points)
        lengths, p1, coop = list(curve.lengths), list(curve.p1), list(curve.cooperativity)
        if not np.any(np.isclose(curve.lengths, curve.best_length, rtol=0, atol=1e-12)):
            idx = int(np.searchsorted(curve.lengths, curve.best_length))
            lengths.insert(idx, curve.best_length)
            p1.insert(idx, curve.best_p1)
            coop.insert(idx, math.nan)
        for l, p, c in zip(lengths, p1, coop):
            rows.append([r_mm * 1e3, l * 1e6, p, c, abs(l - curve.best_length) < 1e-12,
                         curve.ell_o * 1e6, curve.best_length * 1e6, curve.best_p1])
    return Table(["R_um", "length_um", "P1", "C", "is_best", "ell_o_um", "best_length_um", "best_P1"], rows)


# ---------------------------------------------------------------------------
# receiver curves


def receiver_curve_row(c: float) -> list:
    """Receiver figures at cooperativity C with all cavity loss through the input side.

    DIT uses a symmetric cavity (κ_L = κ_R = κ/2), CPF a single-sided one (κ_L = κ).
    """
    kappa, gamma = 1.0, 1.0
    g = math.sqrt(c * kappa * gamma)
    dit = CavityRates(g, 0.5 * kappa, 0.5 * kappa, 0.0, gamma)
    t_u = scatter_coeffs(dit.replace(g=0.0)).t
    t_c = scatter_coeffs(dit).t
    p_t = abs(t_u) ** 2 + abs(t_c) ** 2
    cpf = CavityRates(g, kappa, 0.0, 0.0, gamma)
    r_u = scatter_coeffs(cpf.replace(g=0.0)).r
    r_c = scatter_coeffs(cpf).r
    p_r = 0.25 * (2.0 + abs(r_u) ** 2 + abs(r_c) ** 2)
    return [c, p_t, abs(t_c) ** 2 / p_t, p_r, 1.0 - cpf_fidelity_from_reflections(r_u, r_c)]


def run_receiver_curves(cfg: dict, jobs: int = 1) -> Table:
    cs = sorted(set(Axis.from_config("C", cfg["C"]).values) | {float(c) for c in cfg["include_C"]})
    if any(c < 0 for c in cs):
        raise ConfigurationError("receiver-curves: cooperativities must be non-negative")
    return Table(["C", "P_t", "infidelity_DIT", "P_r", "infidelity_CPF"], [receiver_curve_row(c) for c in cs])


# ---------------------------------------------------------------------------
# advantage maps


def _advantage_point(args) -> list:
    r_um, lb_ppm, modality, protocol, f_min, h_um, budget = args
    process = MirrorProcess.from_ppm(lb_ppm, r_um * 1e-6)
    transition = transition_for_modality(modality)
    h = h_um * 1e-6
    emitter = emitter_construction(process, transition, h)
    ref = evaluate_link(process, modality, Protocol.TYPE_II, h_ion=h, budget=budget, emitter=emitter)
    alt = evaluate_link(process, modality, protocol, h_ion=h, f_min=f_min, budget=budget, emitter=emitter)
    adv = math.nan
    if alt.feasible and ref.feasible:
        adv = advantage(alt.success_prob, ref.success_prob)
    recv = alt.receiver
    fig = recv.figures if recv is not None else {}
    construction_fidelity = fig.get("fidelity", math.nan)
    return [r_um, lb_ppm, protocol.value, modality, f_min, alt.feasible, alt.meets_target, alt.p1,
            fig.get("C", math.nan), fig.get("C_o", math.nan), alt.fidelity, 1.0 - construction_fidelity,
            alt.success_prob, ref.success_prob, adv, alt.reason]


def run_advantage(cfg: dict, jobs: int = 1) -> Table:
    """Success-probability advantage of DIT or CPF over type-II on an (R, ℒ_B) grid."""
    protocol = canonical_protocol(cfg["protocol"])
    if protocol is Protocol.TYPE_II:
        raise ConfigurationError("advantage: protocol must be DIT or CPF")
    modality = canonical_modality(cfg["modality"])
    f_min = cfg["F_min"]
    if protocol is Protocol.CPF and f_min <= 0:
        f_min = None
    budget = _budget(cfg)
    r_axis = Axis.from_config("R_um", cfg["R_um"])
    lb_axis = Axis.from_config("loss_bad_ppm", cfg["loss_bad_ppm"])
    points = [(r, lb, modality, protocol, f_min, cfg["h_ion_um"], budget)
              for r in r_axis.values for lb in lb_axis.values]
    rows = _map(_advantage_point, points, jobs)
    cols = ["R_um", "loss_bad_ppm", "protocol", "modality", "F_min", "feasible", "meets_target", "P1",
            "receiver_C", "receiver_C_o", "fidelity", "receiver_infidelity", "success_prob",
            "success_prob_type2", "advantage", "reason"]
    return Table(cols, rows)


# ---------------------------------------------------------------------------
# rates


def _rates_point(args) -> list:
    scen, modality, protocol, f_min, r_um, lb_ppm, h_um, convention, pad, budget = args
    timing = scenario(scen)
    process = MirrorProcess.from_ppm(lb_ppm, r_um * 1e-6)
    p = evaluate_link(process, modality, protocol, h_ion=h_um * 1e-6, f_min=f_min, timing=timing,
                      budget=budget, bin_convention=convention, bandwidth_pad=pad)
    return [scen, modality, protocol.value, math.nan if f_min is None else f_min, r_um, lb_ppm, p.feasible,
            p.meets_target, p.p1, p.fidelity, p.success_prob, p.bin_width * 1e9, p.tau * 1e9, p.rate, p.reason]


def run_rates(cfg: dict, jobs: int = 1) -> Table:
    """Success rate versus ℒ_B per (modality, protocol, F_min)."""
    scenario(cfg["scenario"])
    if cfg["bin_convention"] not in BIN_CONVENTIONS:
        raise ConfigurationError(f"rates: bin_convention must be one of {BIN_CONVENTIONS}")
    pad = cfg["bandwidth_pad"]
    if isinstance(pad, str):
        if pad != "scenario":
            raise ConfigurationError("rates: bandwidth_pad must be true, false or 'scenario'")
        pad = None
    budget = _budget(cfg)
    lb_axis = Axis.from_config("loss_bad_ppm", cfg["loss_bad_ppm"])
    points = []
    for modality in (canonical_modality(m) for m in cfg["modalities"]):
        for protocol in (canonical_protocol(p) for p in cfg["protocols"]):
            targets = [None] if protocol is Protocol.TYPE_II else [float(f) for f in cfg["F_min"]]
            for f_min in targets:
                for lb in lb_axis.values:
                    points.append((cfg["scenario"], modality, protocol, f_min, cfg["R_um"], lb, cfg["h_ion_um"],
                                   cfg["bin_convention"], pad, budget))
    rows = _map(_rates_point, points, jobs)
    cols = ["scenario", "modality", "protocol", "F_min", "R_um", "loss_bad_ppm", "feasible", "meets_target",
            "P1", "fidelity", "success_prob", "bin_width_ns", "tau_ns", "rate_Hz", "reason"]
    return Table(cols, rows)


# ---------------------------------------------------------------------------
# oracle


def oracle_emission_grid(cfg: dict) -> list[CavityRates]:
    """Deterministic (seeded) random grid of (g, κ, γ) with κ_L = κ."""
    n = cfg["n_points"]
    if n < 0:
        raise ConfigurationError("oracle: n_points must be non-negative")
    lo, hi = cfg["rate_min_MHz"], cfg["rate_max_MHz"]
    if not 0 < lo <= hi:
        raise ConfigurationError("oracle: need 0 < rate_min_MHz ≤ rate_max_MHz")
    rng = np.random.default_rng(cfg["seed"])
    if cfg["sampling"] == "uniform":
        draws = rng.uniform(lo, hi, size=(n, 3))
    elif cfg["sampling"] == "log-uniform":
        draws = np.exp(rng.uniform(math.log(lo), math.log(hi), size=(n, 3)))
    else:
        raise ConfigurationError("oracle: sampling must be 'uniform' or 'log-uniform'")
    return [CavityRates(mhz(g), mhz(k), 0.0, 0.0, mhz(gm)) for g, k, gm in draws]


def _oracle_emission_point(args) -> dict:
    from .oracle import emission_p_of_s

    rates, s_over_k, tol = args
    analytic = collection_p1(rates).p1
    numeric = emission_p_of_s(rates, s_over_k / rates.K)
    dev = abs(numeric - analytic)
    return {"g_MHz": to_mhz(rates.g), "kappa_MHz": to_mhz(rates.kappa), "gamma_MHz": to_mhz(rates.gamma),
            "P1_analytic": analytic, "P1_oracle": numeric, "deviation": dev, "pass": dev <= tol}


def _oracle_scatter_point(args) -> dict:
    from .oracle import PulseSpec, fourier_check, scatter_pulse

    case, (da, dc), frac, band, n_freq, tol = args
    rates = CavityRates(mhz(case["g_MHz"]), mhz(case["kappa_L_MHz"]), mhz(case["kappa_R_MHz"]),
                        mhz(case["kappa_B_MHz"]), mhz(case["gamma_MHz"]))
    det = Detunings(mhz(da), mhz(dc))
    pulse = PulseSpec(frac * rates.kappa)
    res = scatter_pulse(rates, pulse, detunings=det)
    fc = fourier_check(rates, pulse, detunings=det, n_freq=n_freq, band=band, result=res)
    return {**case, "delta_a_MHz": da, "delta_c_MHz": dc, "sigma_MHz": to_mhz(pulse.sigma_omega),
            "max_dev_r": fc.max_dev_r, "max_dev_t": fc.max_dev_t, "energy_balance": res.energy_balance,
            "reflected_energy": res.reflected_energy, "transmitted_energy": res.transmitted_energy,
            "overlap": res.overlap, "pass": fc.max_deviation <= tol}


def run_oracle(cfg: dict, jobs: int = 1) -> dict:
    """Analytic-versus-integration report; ``report["pass"]`` is the overall verdict."""
    from .oracle import BACKEND

    for i, case in enumerate(cfg["scatter"]):
        if not isinstance(case, dict) or set(case) != _SCATTER_KEYS:
            raise ConfigurationError(f"oracle.scatter[{i}]: expected exactly the keys {sorted(_SCATTER_KEYS)}")
    for i, pair in enumerate(cfg["scatter_detunings_MHz"]):
        if not (isinstance(pair, list) and len(pair) == 2):
            raise ConfigurationError(f"oracle.scatter_detunings_MHz[{i}]: expected [delta_a, delta_c]")
    emission = _map(_oracle_emission_point,
                    [(r, cfg["s_over_K"], cfg["tolerance_P1"]) for r in oracle_emission_grid(cfg)], jobs)
    scatter = _map(_oracle_scatter_point,
                   [(c, tuple(d), cfg["sigma_over_kappa"], cfg["band_sigmas"], cfg["n_freq"], cfg["tolerance_coeff"])
                    for c in cfg["scatter"] for d in cfg["scatter_detunings_MHz"]], jobs)
    return {
        "backend": BACKEND,
        "emission": emission,
        "scatter": scatter,
        "max_dev_P1": max((e["deviation"] for e in emission), default=0.0),
        "max_dev_coeff": max((max(s["max_dev_r"], s["max_dev_t"]) for s in scatter), default=0.0),
        "n_fail": sum(not e["pass"] for e in emission) + sum(not s["pass"] for s in scatter),
        "pass": all(e["pass"] for e in emission) and all(s["pass"] for s in scatter),
    }


# ---------------------------------------------------------------------------
# optimize / transitions


def run_optimize(cfg: dict, jobs: int = 1):
    """Role-optimal construction for one mirror process."""
    transition = get_transition(cfg["transition"]) if cfg["transition"] else \
        transition_for_modality(canonical_modality(cfg["modality"]))
    process = MirrorProcess.from_ppm(cfg["loss_bad_ppm"], cfg["R_min_um"] * 1e-6)
    h = cfg["h_ion_um"] * 1e-6
    try:
        role = Role(cfg["role"])
    except ValueError:
        raise ConfigurationError(f"optimize: role must be one of {[r.value for r in Role]}") from None
    policy = cfg["length_policy"]
    if role is Role.EMITTER:
        return emitter_construction(process, transition, h, length_policy=policy)
    if role is Role.DIT_RECEIVER:
        return dit_construction(process, transition, h, cfg["F_min"], length_policy=policy)
    f_min = cfg["F_min"] if cfg["F_min"] > 0 else None
    return cpf_construction(process, transition, h, f_min=f_min, bandwidth_pad=cfg["bandwidth_pad"],
                            length_policy=policy)


def _tidy(x: float) -> float:
    """Strip unit-conversion round-off from a tabulated input value."""
    return float(f"{x:.12g}")


def run_transitions(cfg: dict | None = None, jobs: int = 1) -> Table:
    """The bundled transition registry with derived dipoles."""
    rows = []
    for label, tr in transition_registry().items():
        rows.append([label, tr.isotope, _tidy(tr.wavelength * 1e9), _tidy(tr.gamma_fwhm / TWO_PI * 1e-6),
                     tr.branching_ratio, tr.n_branches, tr.mu_eff / E_A0, tr.mu_single / E_A0,
                     _tidy(tr.hf_splitting / TWO_PI * 1e-9) if tr.hf_splitting else math.nan])
    return Table(["label", "isotope", "wavelength_nm", "linewidth_MHz", "branching_ratio", "n_branches",
                  "mu_eff_ea0", "mu_branch_ea0", "hf_splitting_GHz"], rows)


RUNNERS = {
    "collect": run_collect,
    "receiver-curves": run_receiver_curves,
    "advantage": run_advantage,
    "rates": run_rates,
    "oracle": run_oracle,
    "optimize": run_optimize,
    "transitions": run_transitions,
}

#: Units of the CSV columns, emitted in the metadata header.
COLUMN_UNITS = {
    "R_um": "um", "length_um": "um", "ell_o_um": "um", "best_length_um": "um", "loss_bad_ppm": "ppm",
    "bin_width_ns": "ns", "tau_ns": "ns", "rate_Hz": "1/s", "wavelength_nm": "nm",
    "linewidth_MHz": "MHz (Gamma/2pi, FWHM)", "mu_eff_ea0": "e*a0", "mu_branch_ea0": "e*a0",
    "hf_splitting_GHz": "GHz (Delta/2pi)",
}
