"""cavlink — design-space engine for cavity-mediated remote-entanglement links.

The package computes cavity-QED collection and scattering figures for trapped
ions in plano-concave micro-cavities, builds role-optimal cavities for photon
emitters and scattering receivers, evaluates type-II, transmission-carving
(DIT) and phase-flip (CPF) heralding protocols, and turns them into link
rates.  An independent time-domain integrator (:mod:`cavlink.oracle`) checks
the analytic results.

All rates are angular (rad/s) and all lengths are in metres unless a name
carries an explicit unit suffix.
"""
__version__ = "0.1.0"

from .constants import C, EPS0, E_A0, HBAR, PPM, TWO_PI, mhz, to_mhz
from .constructions import (
    Construction,
    Role,
    cpf_construction,
    dit_construction,
    emitter_construction,
    fixed_finesse_collection,
)
from .cqed import CavityRates, collection_p1, composite_g, coupling_g0, emission_wavepacket
from .errors import (
    CavlinkError,
    ConfigurationError,
    DomainError,
    GeometryError,
    LosslessCavityError,
    NoHeraldError,
    SingularityError,
)
from .geometry import CavityGeometry, MirrorProcess
from .link import LinkPoint, evaluate_link, protocol_advantage
from .protocols import LinkBudget, Protocol, ProtocolOutcome, cpf_outcome, dit_outcome, type2_outcome
from .rates import TimingParams, cycle_time, scenario, success_rate
from .scattering import Detunings, reflection_coeff, transmission_coeff
from .transitions import AtomicTransition, get_transition, transition_for_modality, transition_registry

__all__ = [
    "__version__",
    "C", "EPS0", "E_A0", "HBAR", "PPM", "TWO_PI", "mhz", "to_mhz",
    "Construction", "Role", "cpf_construction", "dit_construction", "emitter_construction",
    "fixed_finesse_collection",
    "CavityRates", "collection_p1", "composite_g", "coupling_g0", "emission_wavepacket",
    "CavlinkError", "ConfigurationError", "DomainError", "GeometryError", "LosslessCavityError",
    "NoHeraldError", "SingularityError",
    "CavityGeometry", "MirrorProcess",
    "LinkPoint", "evaluate_link", "protocol_advantage",
    "LinkBudget", "Protocol", "ProtocolOutcome", "cpf_outcome", "dit_outcome", "type2_outcome",
    "TimingParams", "cycle_time", "scenario", "success_rate",
    "Detunings", "reflection_coeff", "transmission_coeff",
    "AtomicTransition", "get_transition", "transition_for_modality", "transition_registry",
]
