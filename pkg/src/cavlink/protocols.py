"""Heralded remote-entanglement protocols: fidelities and success probabilities.

Three protocols are modeled for a pair of nodes:

* **type-II** — both nodes emit; a two-photon coincidence behind a beamsplitter
  heralds an odd-parity Bell state.
* **DIT** (dipole-induced transparency) — one node emits, the photon is
  transmitted through the receiver's balanced cavity only if the receiver atom
  is uncoupled, carving the odd-parity subspace.
* **CPF** (controlled phase flip) — one node emits, the photon reflects off the
  receiver's single-port cavity picking up a π phase iff the receiver atom is
  uncoupled; detection in the rotated photon basis heralds a Bell state.

Every outcome carries the normalized heralded-state amplitudes and the
unnormalized detection norm separately.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .constants import C
from .errors import DomainError, NoHeraldError

__all__ = [
    "Protocol",
    "LinkBudget",
    "ProtocolOutcome",
    "type2_outcome",
    "dit_outcome",
    "cpf_outcome",
    "path_dephasing_fidelity",
    "dit_fidelity_from_cooperativity",
    "cpf_fidelity_from_reflections",
]


class Protocol(str, enum.Enum):
    TYPE_II = "type-II"
    DIT = "DIT"
    CPF = "CPF"


def _unit(name, x):
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"{name}={x} outside [0, 1]")


@dataclass(frozen=True)
class LinkBudget:
    """Per-attempt efficiencies outside the cavities.

    Attributes:
        p_ex: Excitation success probability.
        p_half: Transmission over half the node separation (P_{L/2}).
        p_det: Detector efficiency.
        xi: Spatial mode matching of the incident photon to the receiver cavity.
    """

    p_ex: float = 1.0
    p_half: float = 1.0
    p_det: float = 1.0
    xi: float = 1.0

    def __post_init__(self):
        for name in ("p_ex", "p_half", "p_det", "xi"):
            _unit(name, getattr(self, name))

    @property
    def p_full(self) -> float:
        """Transmission over the full separation, P_L = P_{L/2}²."""
        return self.p_half**2


@dataclass(frozen=True)
class ProtocolOutcome:
    """Result of one protocol evaluation.

    Attributes:
        protocol: Which protocol produced the outcome.
        fidelity: Fidelity of the heralded state to the target Bell state.
        success_prob: Per-attempt herald probability.
        herald_amplitudes: Normalized amplitudes of the heralded state, keyed by
            basis label.
        detection_norm: Squared norm of the unnormalized heralded state (the
            receiver efficiency P_t or P_r, or the emitter arm probability).
        notes: Free-form diagnostics.
    """

    protocol: Protocol
    fidelity: float
    success_prob: float
    herald_amplitudes: dict = field(default_factory=dict)
    detection_norm: float = 1.0
    notes: tuple = ()


def _normalize(amps: dict) -> tuple[dict, float]:
    vec = np.array(list(amps.values()), dtype=complex)
    norm2 = float(np.vdot(vec, vec).real)
    if norm2 == 0:
        raise NoHeraldError("all herald amplitudes vanish")
    scale = 1.0 / math.sqrt(norm2)
    return {k: complex(v * scale) for k, v in amps.items()}, norm2


def type2_outcome(p1: float, budget: LinkBudget, overlap: float = 1.0) -> ProtocolOutcome:
    """Two-photon (type-II) heralding between two identical emitters.

    Each arm delivers a photon with probability P = p_ex·P1·p_half·p_det; the
    herald probability is ½P² and the fidelity ½(1 + ⟨φ₁,φ₂⟩²).
    """
    _unit("P1", p1)
    _unit("overlap", overlap)
    p = budget.p_ex * p1 * budget.p_half * budget.p_det
    return ProtocolOutcome(
        protocol=Protocol.TYPE_II,
        fidelity=0.5 * (1.0 + overlap**2),
        success_prob=0.5 * p * p,
        herald_amplitudes={"Psi": 1.0 + 0j},
        detection_norm=p,
    )


def dit_outcome(t_u: complex, t_c: complex, p1: float, budget: LinkBudget) -> ProtocolOutcome:
    """Transmission-carving (DIT) herald from receiver transmissions t_u, t_c.

    The heralded state is ∝ t_u|Ψ⟩ + t_c|Φ⟩.  The receiver efficiency
    P_t = |t_u|² + |t_c|² is normalized to the odd-parity population and can
    slightly exceed 1; the ½ parity factor is applied to the success probability.

    Raises:
        NoHeraldError: if both coefficients vanish.
    """
    _unit("P1", p1)
    if abs(t_u) > 1 + 1e-12 or abs(t_c) > 1 + 1e-12:
        raise DomainError("transmission magnitudes must not exceed 1")
    amps, p_t = _normalize({"Psi": complex(t_u), "Phi": complex(t_c)})
    p = budget.p_ex * p1 * budget.p_full * budget.p_det
    return ProtocolOutcome(
        protocol=Protocol.DIT,
        fidelity=abs(t_u) ** 2 / p_t,
        success_prob=0.5 * p * budget.xi * p_t,
        herald_amplitudes=amps,
        detection_norm=p_t,
    )


def cpf_fidelity_from_reflections(r_u: complex, r_c: complex) -> float:
    """Fidelity |1 − ½(r_u − r_c)|² / (2 + |r_u|² + |r_c|²) of the CPF herald."""
    return abs(1.0 - 0.5 * (r_u - r_c)) ** 2 / (2.0 + abs(r_u) ** 2 + abs(r_c) ** 2)


def cpf_outcome(r_u: complex, r_c: complex, p1: float, budget: LinkBudget) -> ProtocolOutcome:
    """Reflection phase-flip (CPF) herald from receiver reflections r_u, r_c.

    Amplitudes over {|uu⟩, |cu⟩, |cc⟩} are ∝ {1, (r_c + r_u)/2, (r_c − r_u)/2};
    the receiver efficiency is P_r = ¼(2 + |r_u|² + |r_c|²) and the protocol
    efficiency is unity.
    """
    _unit("P1", p1)
    if abs(r_u) > 1 + 1e-12 or abs(r_c) > 1 + 1e-12:
        raise DomainError("reflection magnitudes must not exceed 1")
    amps, _ = _normalize({"uu": 1.0 + 0j, "cu": 0.5 * (r_c + r_u), "cc": 0.5 * (r_c - r_u)})
    p_r = 0.25 * (2.0 + abs(r_u) ** 2 + abs(r_c) ** 2)
    p = budget.p_ex * p1 * budget.p_full * budget.p_det
    return ProtocolOutcome(
        protocol=Protocol.CPF,
        fidelity=cpf_fidelity_from_reflections(r_u, r_c),
        success_prob=p * p_r,
        herald_amplitudes=amps,
        detection_norm=p_r,
    )


def dit_fidelity_from_cooperativity(cooperativity: float) -> float:
    """Closed-form DIT fidelity (1 + C)² / ((1 + C)² + 1)."""
    a = (1.0 + cooperativity) ** 2
    return a / (a + 1.0)


def path_dephasing_fidelity(delta_split: float, sigma_z: float) -> float:
    """Bell fidelity after Gaussian path-length jitter σ_Z for a frequency qubit.

    The relative phase between the two frequency components has standard
    deviation σ_φ = Δ·σ_Z/c, giving 𝓕 = ½(1 + exp(−σ_φ²/2)).  This Gaussian
    random-phase model is a modeling choice, not a derived result.
    """
    if sigma_z < 0:
        raise DomainError("σ_Z must be non-negative")
    sigma_phi = delta_split * sigma_z / C
    return 0.5 * (1.0 + math.exp(-0.5 * sigma_phi**2))
