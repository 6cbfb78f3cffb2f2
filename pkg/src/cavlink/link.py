"""End-to-end evaluation of one link configuration.

A link point is a mirror process, a photon modality and a protocol.  Both
nodes use cavities built by the role-optimal constructions on the same
process; the emitter's collection efficiency and the receiver's scattering
coefficients feed the protocol model, and the timing preset turns the
per-attempt probability into a rate.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .constructions import Construction, cpf_construction, dit_construction, emitter_construction
from .errors import DomainError
from .geometry import MirrorProcess
from .protocols import LinkBudget, Protocol, ProtocolOutcome, cpf_outcome, dit_outcome, type2_outcome
from .rates import TimingParams, advantage, bin_widths, cycle_time, success_rate
from .scattering import cpf_reflection, dit_transmission
from .transitions import transition_for_modality

__all__ = ["MODALITIES", "canonical_modality", "LinkPoint", "evaluate_link", "protocol_advantage"]

MODALITIES = {
    "pol": "polarization", "polarization": "polarization",
    "freq": "frequency", "frequency": "frequency",
    "tb": "time-bin", "time-bin": "time-bin",
}


def canonical_modality(name: str) -> str:
    try:
        return MODALITIES[name]
    except KeyError:
        raise DomainError(f"unknown modality {name!r}; choose from {sorted(MODALITIES)}") from None


def canonical_protocol(name) -> Protocol:
    if isinstance(name, Protocol):
        return name
    for p in Protocol:
        if name.lower() in (p.value.lower(), p.name.lower(), p.value.lower().replace("-", "")):
            return p
    raise DomainError(f"unknown protocol {name!r}; choose from {[p.value for p in Protocol]}")


@dataclass(frozen=True)
class LinkPoint:
    """Evaluated link.  Probabilities and rates are NaN where infeasible."""

    modality: str
    protocol: Protocol
    process: MirrorProcess
    f_min: float | None
    feasible: bool
    meets_target: bool
    reason: str
    p1: float
    fidelity: float
    success_prob: float
    detection_norm: float
    bin_width: float
    tau: float
    rate: float
    emitter: Construction
    receiver: Construction | None
    outcome: ProtocolOutcome | None


def _nan_point(modality, protocol, process, f_min, reason, emitter, receiver=None, p1=math.nan):
    nan = math.nan
    return LinkPoint(modality, protocol, process, f_min, False, False, reason, p1, nan, nan, nan,
                     nan, nan, nan, emitter, receiver, None)


def evaluate_link(process: MirrorProcess, modality: str, protocol, *, h_ion: float = 70e-6,
                  f_min: float | None = None, timing: TimingParams | None = None,
                  budget: LinkBudget = LinkBudget(), bin_convention: str = "K",
                  bandwidth_pad: bool | None = None, emitter: Construction | None = None) -> LinkPoint:
    """Evaluate one (process, modality, protocol) point.

    Args:
        process: Mirror process shared by all cavities.
        modality: ``"pol"``, ``"freq"`` or ``"tb"`` (or their long names).
        protocol: ``"type-II"``, ``"DIT"`` or ``"CPF"``.
        h_ion: Ion height above the flat mirror in m.
        f_min: Fidelity floor; required for DIT, optional for CPF.
        timing: Timing preset; rates are NaN when omitted.
        budget: External link efficiencies.
        bin_convention: ``"K"`` or ``"Gamma"`` for the minimum bin width.
        bandwidth_pad: Pad over-performing CPF receivers down to ``f_min``;
            defaults to the timing preset's setting.
        emitter: Pre-computed emitter construction to reuse.
    """
    modality = canonical_modality(modality)
    protocol = canonical_protocol(protocol)
    transition = transition_for_modality(modality)
    if emitter is None:
        emitter = emitter_construction(process, transition, h_ion)
    if not emitter.feasible:
        return _nan_point(modality, protocol, process, f_min, f"emitter: {emitter.reason}", emitter)
    p1 = emitter.figures["P1"]
    receiver = None
    if protocol is Protocol.TYPE_II:
        outcome = type2_outcome(p1, budget, overlap=1.0)
        meets = f_min is None or outcome.fidelity >= f_min
    elif protocol is Protocol.DIT:
        if f_min is None:
            raise DomainError("DIT links need a fidelity floor f_min")
        receiver = dit_construction(process, transition, h_ion, f_min)
        if not receiver.feasible:
            return _nan_point(modality, protocol, process, f_min, f"receiver: {receiver.reason}",
                              emitter, receiver, p1)
        outcome = dit_outcome(dit_transmission(receiver.rates, False), dit_transmission(receiver.rates, True),
                              p1, budget)
        meets = outcome.fidelity >= f_min - 1e-9
    else:
        pad = timing.bandwidth_pad if (bandwidth_pad is None and timing is not None) else bool(bandwidth_pad)
        receiver = cpf_construction(process, transition, h_ion, f_min=f_min, bandwidth_pad=pad)
        if not receiver.feasible:
            return _nan_point(modality, protocol, process, f_min, f"receiver: {receiver.reason}",
                              emitter, receiver, p1)
        outcome = cpf_outcome(cpf_reflection(receiver.rates, False), cpf_reflection(receiver.rates, True),
                              p1, budget)
        meets = f_min is None or outcome.fidelity >= f_min - 1e-6

    bin_width = tau = rate = math.nan
    if timing is not None:
        widths = bin_widths(emitter.rates, receiver.rates if receiver else None, timing, bin_convention)
        bin_width = {Protocol.TYPE_II: widths.s_o, Protocol.DIT: widths.s_dit,
                     Protocol.CPF: widths.s_cpf}[protocol]
        tau = cycle_time(timing, modality == "time-bin", bin_width,
                         single_photon=protocol is not Protocol.TYPE_II)
        rate = success_rate(outcome, tau)
    return LinkPoint(modality, protocol, process, f_min, True, bool(meets), "", p1, outcome.fidelity,
                     outcome.success_prob, outcome.detection_norm, bin_width, tau, rate,
                     emitter, receiver, outcome)


def protocol_advantage(process: MirrorProcess, modality: str, protocol, f_min: float | None = None,
                       h_ion: float = 70e-6, budget: LinkBudget = LinkBudget()) -> tuple[float, LinkPoint, LinkPoint]:
    """Success-probability advantage of ``protocol`` over type-II on one process.

    Returns ``(advantage, point, type_ii_point)``; the advantage is NaN when
    the protocol point is infeasible.
    """
    modality = canonical_modality(modality)
    emitter = emitter_construction(process, transition_for_modality(modality), h_ion)
    ref = evaluate_link(process, modality, Protocol.TYPE_II, h_ion=h_ion, budget=budget, emitter=emitter)
    alt = evaluate_link(process, modality, protocol, h_ion=h_ion, f_min=f_min, budget=budget, emitter=emitter)
    if not (alt.feasible and ref.feasible):
        return math.nan, alt, ref
    return advantage(alt.success_prob, ref.success_prob), alt, ref
