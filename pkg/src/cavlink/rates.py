"""Attempt cycle times, bin widths and success rates for entanglement links.

The cycle time of one attempt depends on whether the system is multiplexed
(MUX: ions are shuttled in pre-initialized, taking initialization and
propagation offline) and whether photons are time-bin encoded (TB: two bins
separated by a π pulse, plus a preparatory π/2 pulse when not multiplexed):

    ======  ====  =====================================
    MUX     TB    τ
    ======  ====  =====================================
    no      no    t_E + t_P + t_tx + t_rx + s
    no      yes   t_E + t_P + t_tx + t_rx + 1.5·t_π + 2s
    yes     no    t_S + s
    yes     yes   t_S + t_π + 2s
    ======  ====  =====================================

Type-II links meet in the middle (t_tx = t_rx = half-path time); single-photon
links (DIT, CPF) traverse the full separation (t_tx = t_rx = 2× half-path).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from functools import lru_cache
from importlib import resources

from . import _toml
from .cqed import CavityRates
from .errors import ConfigurationError, DomainError
from .protocols import ProtocolOutcome

__all__ = [
    "TimingParams",
    "BinWidths",
    "UndefinedAdvantageError",
    "bin_widths",
    "cycle_components",
    "cycle_time",
    "success_rate",
    "advantage",
    "load_scenarios",
    "scenario",
    "BIN_CONVENTIONS",
]

NS = 1e-9
BIN_CONVENTIONS = ("K", "Gamma")


class UndefinedAdvantageError(DomainError):
    """The reference probability is zero, so a relative advantage is undefined."""


@dataclass(frozen=True)
class TimingParams:
    """Timing parameters of an attempt cycle (times in s).

    Attributes:
        t_pi: π-pulse duration.
        t_pump: Optical pumping time.
        t_half_prop: One-way propagation time over half the node separation.
        t_elec: Electronic latency.
        t_shuttle: Ion shuttling time (multiplexed systems).
        n_lifetimes: Collection lifetimes N per bin.
        band_safety: Spectral safety factor S for receiver bandwidths.
        multiplexed: Whether initialization and propagation are offline.
        bandwidth_pad: Whether CPF receivers trade surplus fidelity for bandwidth.
        name: Preset name, if any.
    """

    t_pi: float
    t_pump: float
    t_half_prop: float
    t_elec: float
    t_shuttle: float = 0.0
    n_lifetimes: float = 3.0
    band_safety: float = 10.0
    multiplexed: bool = False
    bandwidth_pad: bool = False
    name: str = "custom"

    def __post_init__(self):
        for f in ("t_pi", "t_pump", "t_half_prop", "t_elec", "t_shuttle"):
            if getattr(self, f) < 0:
                raise DomainError(f"{f} must be non-negative")
        if self.n_lifetimes < 1 or self.band_safety < 1:
            raise DomainError("N and S must be ≥ 1")

    def with_overrides(self, **changes) -> "TimingParams":
        return replace(self, **changes)


@dataclass(frozen=True)
class BinWidths:
    """Photon bin widths (s) for two-photon and single-photon protocols."""

    s_o: float
    s_dit: float | None = None
    s_cpf: float | None = None


def bin_widths(emitter: CavityRates, receiver: CavityRates | None, timing: TimingParams,
               convention: str = "K") -> BinWidths:
    """Bin widths for an emitter and (optionally) a receiver cavity.

    s_o = N/K_emitter (``convention="K"``) or N/Γ with Γ = 2γ
    (``convention="Gamma"``); a receiver widens the bin to Sπ/g_r (DIT) or
    Sπ/κ_r (CPF) when its bandwidth is the tighter constraint.

    Raises:
        DomainError: for a zero emitter decay rate, or a zero receiver rate
            when a receiver is given.
    """
    if convention == "K":
        rate = emitter.K
    elif convention == "Gamma":
        rate = 2.0 * emitter.gamma
    else:
        raise DomainError(f"unknown bin-width convention {convention!r}; choose from {BIN_CONVENTIONS}")
    if rate <= 0:
        raise DomainError("emitter decay rate must be positive")
    s_o = timing.n_lifetimes / rate
    if receiver is None:
        return BinWidths(s_o)
    s_dit = s_cpf = None
    if receiver.g > 0:
        s_dit = max(s_o, timing.band_safety * math.pi / receiver.g)
    if receiver.kappa > 0:
        s_cpf = max(s_o, timing.band_safety * math.pi / receiver.kappa)
    if s_dit is None and s_cpf is None:
        raise DomainError("receiver has neither coupling nor linewidth")
    return BinWidths(s_o, s_dit, s_cpf)


def cycle_components(timing: TimingParams, time_bin: bool, bin_width: float,
                     single_photon: bool = False) -> dict[str, float]:
    """Named additive terms of the attempt cycle time (see module table)."""
    if bin_width <= 0:
        raise DomainError("bin width must be positive")
    n_bins = 2 if time_bin else 1
    if timing.multiplexed:
        terms = {"t_S": timing.t_shuttle}
        if time_bin:
            terms["t_pi"] = timing.t_pi
    else:
        prop = (2.0 if single_photon else 1.0) * timing.t_half_prop
        terms = {"t_E": timing.t_elec, "t_P": timing.t_pump, "t_tx": prop, "t_rx": prop}
        if time_bin:
            terms["t_pi"] = 1.5 * timing.t_pi
    terms["s"] = n_bins * bin_width
    return terms


def cycle_time(timing: TimingParams, time_bin: bool, bin_width: float, single_photon: bool = False) -> float:
    """Attempt cycle time τ in s."""
    return math.fsum(cycle_components(timing, time_bin, bin_width, single_photon).values())


def success_rate(outcome: ProtocolOutcome | float, tau: float) -> float:
    """Heralded success rate 𝓟/τ in Hz."""
    if tau <= 0:
        raise DomainError("cycle time must be positive")
    p = outcome.success_prob if isinstance(outcome, ProtocolOutcome) else float(outcome)
    return p / tau


def advantage(p_alt: float, p_ref: float) -> float:
    """Relative advantage (p_alt − p_ref)/p_ref.

    Raises:
        UndefinedAdvantageError: if ``p_ref`` is zero.
    """
    if p_ref == 0:
        raise UndefinedAdvantageError("reference probability is zero")
    return (p_alt - p_ref) / p_ref


_SCENARIO_KEYS = {
    "description", "t_pi_ns", "t_pump_ns", "t_half_prop_ns", "t_elec_ns", "t_shuttle_ns",
    "n_lifetimes", "band_safety", "multiplexed", "bandwidth_pad",
}


def _scenario_from_table(name: str, table: dict) -> TimingParams:
    unknown = set(table) - _SCENARIO_KEYS
    if unknown:
        raise ConfigurationError(f"scenario {name!r}: unknown keys {sorted(unknown)}")
    return TimingParams(
        t_pi=table["t_pi_ns"] * NS,
        t_pump=table["t_pump_ns"] * NS,
        t_half_prop=table["t_half_prop_ns"] * NS,
        t_elec=table["t_elec_ns"] * NS,
        t_shuttle=table.get("t_shuttle_ns", 0.0) * NS,
        n_lifetimes=table.get("n_lifetimes", 3.0),
        band_safety=table.get("band_safety", 10.0),
        multiplexed=bool(table.get("multiplexed", False)),
        bandwidth_pad=bool(table.get("bandwidth_pad", False)),
        name=name,
    )


def load_scenarios(path=None) -> dict[str, TimingParams]:
    """Parse scenario presets from a TOML file (the bundled presets by default)."""
    if path is None:
        text = resources.files("cavlink").joinpath("data/scenarios.toml").read_text()
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    data = _toml.loads(text)
    return {name: _scenario_from_table(name, table) for name, table in data.items()}


@lru_cache(maxsize=1)
def _bundled() -> dict[str, TimingParams]:
    return load_scenarios()


def scenario(name: str) -> TimingParams:
    """Return a bundled timing preset (``"E1"``, ``"E2"`` or ``"reference-1km"``)."""
    try:
        return _bundled()[name]
    except KeyError:
        raise KeyError(f"unknown scenario {name!r}; known: {sorted(_bundled())}") from None
