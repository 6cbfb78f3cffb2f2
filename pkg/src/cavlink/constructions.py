"""Role-optimal cavity constructions for a given mirror process.

A mirror process fixes the bad loss ℒ_B and the smallest radius R.  For each
node role the remaining freedom — cavity length and mirror transmissions — is
chosen to optimize that role's figure of merit:

* **emitter**: maximize the collection efficiency P1.  For fixed ℓ the optimal
  output coupling is κ*_L = √(g² + κ_B(γ + g²/γ + κ_B)) with κ_R = 0; the
  length is then chosen by a line search over resonant lengths descending
  from ℓ_o (where z_R = h) that stops at the first local maximum.
* **DIT receiver**: maximize the transmission efficiency at a fidelity floor
  𝓕_min, which fixes the cooperativity at C_min = √(𝓕_min/(1−𝓕_min)) − 1.
* **CPF receiver**: maximize fidelity and reflection efficiency together,
  attained at C(2 + C) = C_o = g²/(κ_Bγ).

Frequency-qubit transitions (those with a hyperfine splitting) additionally
require a cavity whose free spectral range matches the splitting; the
``"auto"`` length policy enforces this double resonance.
"""
from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from .constants import C, EPS0, HBAR, PPM
from .cqed import CavityRates, collection_p1, coupling_g0, composite_g
from .errors import DomainError, GeometryError
from .geometry import (
    CavityGeometry,
    MirrorProcess,
    bad_loss_rate,
    double_resonance_length,
    effective_mode_volume,
    finesse_from_loss,
    free_spectral_range,
    kappa_from_finesse,
    length_for_zr_equals_h,
    losses_for_kappas,
    mode_volume_along,
    resonant_lengths,
)
from .protocols import cpf_fidelity_from_reflections
from .scattering import cpf_reflection, dit_transmission
from .transitions import AtomicTransition

__all__ = [
    "Role",
    "Construction",
    "optimal_output_coupling",
    "c_min_for_fidelity",
    "cpf_optimal_cooperativity",
    "ion_coupling",
    "emitter_construction",
    "dit_construction",
    "cpf_construction",
    "scr_threshold",
    "fixed_finesse_collection",
    "FixedFinesseCurve",
]

LENGTH_POLICIES = ("auto", "hemispherical", "double-resonance")
_COARSE_POINTS = 400


class Role(str, enum.Enum):
    EMITTER = "emitter"
    DIT_RECEIVER = "dit-receiver"
    CPF_RECEIVER = "cpf-receiver"


_FIGURE_UNITS = {
    "P1": "1", "eta_c": "1", "eta_ex": "1", "P_t": "1", "P_r": "1", "fidelity": "1",
    "C": "1", "C_o": "1", "C_min": "1", "F_min": "1",
    "ell_o": "m", "search_min_length": "m", "finesse": "1",
    "T_L_ppm": "ppm", "T_R_ppm": "ppm", "L_B_ppm": "ppm",
    "fsr": "Hz", "K": "rad/s", "r_u": "1", "r_c": "1", "t_u": "1", "t_c": "1",
    "meets_target": "bool", "bandwidth_padded": "bool",
}


@dataclass(frozen=True)
class Construction:
    """An optimized cavity for one node role.

    Attributes:
        role: Node role the cavity was optimized for.
        rates: Coupling and decay rates (``None`` if no geometry exists).
        geometry: Cavity geometry (``None`` if no stable resonant length exists).
        figures: Role figures of merit (see ``to_dict`` for units).
        feasible: Whether the construction satisfies its constraints.
        reason: Explanation when ``feasible`` is false.
    """

    role: Role
    rates: CavityRates | None
    geometry: CavityGeometry | None
    figures: dict = field(default_factory=dict)
    feasible: bool = True
    reason: str = ""

    def to_dict(self) -> dict:
        """JSON-ready representation with an explicit unit for every field."""
        def q(v, unit):
            return {"value": v, "unit": unit}

        out = {"role": self.role.value, "feasible": self.feasible, "reason": self.reason}
        if self.rates is not None:
            r = self.rates
            out["rates"] = {k: q(getattr(r, k), "rad/s")
                            for k in ("g", "kappa_L", "kappa_R", "kappa_B", "gamma", "omega")}
        if self.geometry is not None:
            geo = self.geometry
            out["geometry"] = {
                "mirror_radius": q(geo.mirror_radius, "m"),
                "length": q(geo.length, "m"),
                "ion_height": q(geo.ion_height, "m"),
                "wavelength": q(geo.wavelength, "m"),
            }
        out["figures"] = {k: q(_jsonable(v), _FIGURE_UNITS.get(k, "1")) for k, v in self.figures.items()}
        return out

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


def _jsonable(v):
    if isinstance(v, complex):
        return [v.real, v.imag]
    if isinstance(v, float) and not math.isfinite(v):
        return str(v)
    return v


# ---------------------------------------------------------------------------
# closed-form optima


def optimal_output_coupling(g, kappa_B, gamma):
    """Collection-maximizing output coupling κ*_L = √(g² + κ_B(γ + g²/γ + κ_B))."""
    return np.sqrt(g**2 + kappa_B * (gamma + g**2 / gamma + kappa_B))


def c_min_for_fidelity(f_min: float) -> float:
    """Cooperativity at which the DIT fidelity equals ``f_min``."""
    if not 0.5 < f_min < 1.0:
        raise DomainError(f"F_min={f_min} must lie in (0.5, 1)")
    return math.sqrt(f_min / (1.0 - f_min)) - 1.0


def cpf_optimal_cooperativity(c_o: float) -> float:
    """Root C = √(1 + C_o) − 1 of C(2 + C) = C_o."""
    return math.sqrt(1.0 + c_o) - 1.0


def scr_threshold(length: float, gamma: float) -> float:
    """Finesse at which κ equals γ, the threshold of strong coupling."""
    if not (length > 0 and gamma > 0):
        raise DomainError("length and γ must be positive")
    return math.pi * free_spectral_range(length) / gamma


# ---------------------------------------------------------------------------
# geometry helpers


def _dipole(transition: AtomicTransition, composite: bool) -> float:
    dips = transition.branch_dipoles()
    return composite_g(dips) if composite else dips[0]


def ion_coupling(transition: AtomicTransition, geom: CavityGeometry, composite: bool = True) -> float:
    """Coupling g at the ion (antinode) for the transition's cavity-coupled branches.

    With ``composite=True`` the branch couplings are combined as √Σgᵢ²
    (emission into any branch); otherwise only the first branch is used
    (a receiver couples a single ground state).
    """
    volume = effective_mode_volume(geom)
    gs = [coupling_g0(mu, transition.omega, volume) for mu in transition.branch_dipoles()]
    return composite_g(gs) if composite else gs[0]


def _coupling_along(transition, composite, radius, lengths, h_ion):
    volume = mode_volume_along(radius, lengths, h_ion, transition.wavelength)
    mu = _dipole(transition, composite)
    return mu / HBAR * np.sqrt(HBAR * transition.omega / (2.0 * EPS0 * volume))


def _resolve_policy(policy: str, transition: AtomicTransition) -> str:
    if policy not in LENGTH_POLICIES:
        raise DomainError(f"unknown length policy {policy!r}; choose from {LENGTH_POLICIES}")
    if policy == "auto":
        return "double-resonance" if transition.hf_splitting is not None else "hemispherical"
    if policy == "double-resonance" and transition.hf_splitting is None:
        raise DomainError(f"{transition.label} has no hyperfine splitting for double resonance")
    return policy


def _double_resonance_geometry(process, transition, h_ion):
    ell = double_resonance_length(transition.hf_splitting, transition.wavelength)
    radius = max(ell + h_ion**2 / ell, process.mirror_radius_min, ell + transition.wavelength)
    return CavityGeometry(radius, ell, h_ion, transition.wavelength)


def _branch_candidates(radius, h_ion, wavelength):
    """Resonant lengths on the near-hemispherical branch [max(R/2, h), ℓ_o] with ℓ < R − λ/2."""
    l_o = length_for_zr_equals_h(radius, h_ion)
    top = min(l_o, radius - 0.5 * wavelength * (1 + 1e-9))
    cands = resonant_lengths(wavelength, max(0.5 * radius, h_ion), top)
    cands = cands[(cands > h_ion) & (cands < radius - 0.5 * wavelength)]
    return l_o, cands


def _nearest_candidate(radius, h_ion, wavelength):
    l_o, cands = _branch_candidates(radius, h_ion, wavelength)
    if cands.size == 0:
        raise GeometryError(f"no stable resonant length near ℓ_o for R={radius}, h={h_ion}")
    # candidates lie below ℓ_o; the next resonance above may be closer
    above = cands[-1] + 0.5 * wavelength
    best = cands[-1]
    if abs(above - l_o) < abs(best - l_o) and above < radius - 0.5 * wavelength:
        best = above
    return l_o, float(best)


def _descend_to_local_max(objective, candidates):
    """Index of the first local maximum of ``objective`` walking down from the top.

    ``candidates`` is ascending.  A coarse walk over at most ``_COARSE_POINTS``
    lengths locates the hill; all candidates between the neighbours of the
    coarse maximum are then evaluated exactly.  Ties prefer shorter lengths.
    Returns ``(index, lowest_length_examined)``.
    """
    n = candidates.size
    idx = np.unique(np.linspace(n - 1, 0, min(n, _COARSE_POINTS)).round().astype(int))[::-1]
    values = objective(candidates[idx])
    k = 0
    while k + 1 < idx.size and values[k + 1] >= values[k]:
        k += 1
    lo = idx[min(k + 1, idx.size - 1)]
    hi = idx[max(k - 1, 0)]
    fine = np.arange(lo, hi + 1)
    fine_vals = objective(candidates[fine])
    best = int(fine[int(np.argmax(fine_vals))])
    return best, float(candidates[lo])


def _p1_on_contour(transition, composite, radius, h_ion, loss_bad):
    gamma = transition.gamma

    def objective(lengths):
        g = _coupling_along(transition, composite, radius, lengths, h_ion)
        kb = bad_loss_rate(lengths, loss_bad)
        kl = optimal_output_coupling(g, kb, gamma)
        kappa = kl + kb
        return g**2 / (g**2 + kappa * gamma) * kl / (kappa + gamma)

    return objective


def _finish_rates(g, kappa_L, kappa_R, kappa_B, gamma, omega):
    return CavityRates(g=g, kappa_L=kappa_L, kappa_R=kappa_R, kappa_B=kappa_B, gamma=gamma, omega=omega)


def _loss_figures(geom, rates):
    t_l, t_r, l_b = losses_for_kappas(geom.length, rates.kappa_L, rates.kappa_R, rates.kappa_B)
    total = t_l + t_r + l_b
    return {
        "T_L_ppm": t_l / PPM,
        "T_R_ppm": t_r / PPM,
        "L_B_ppm": l_b / PPM,
        "finesse": finesse_from_loss(total) if total > 0 else math.inf,
        "fsr": free_spectral_range(geom.length),
    }


def _infeasible(role, reason, geom=None, rates=None, **figures):
    return Construction(role=role, rates=rates, geometry=geom, figures=figures, feasible=False, reason=reason)


def _receiver_geometry(process, transition, h_ion, policy):
    policy = _resolve_policy(policy, transition)
    if policy == "double-resonance":
        geom = _double_resonance_geometry(process, transition, h_ion)
        return geom, length_for_zr_equals_h(geom.mirror_radius, h_ion)
    radius = process.mirror_radius_min
    l_o, ell = _nearest_candidate(radius, h_ion, transition.wavelength)
    return CavityGeometry(radius, ell, h_ion, transition.wavelength), l_o


# ---------------------------------------------------------------------------
# role constructions


def emitter_construction(process: MirrorProcess, transition: AtomicTransition, h_ion: float,
                         length_policy: str = "auto") -> Construction:
    """Collection-optimal emitter cavity for ``transition`` on ``process``.

    The output coupler follows κ*_L(ℓ) (κ_R = 0) and the length is the first
    local maximum of P1 found descending through resonant lengths from ℓ_o.
    """
    role = Role.EMITTER
    policy = _resolve_policy(length_policy, transition)
    gamma = transition.gamma
    try:
        if policy == "double-resonance":
            geom = _double_resonance_geometry(process, transition, h_ion)
            l_o = length_for_zr_equals_h(geom.mirror_radius, h_ion)
            search_min = geom.length
        else:
            radius = process.mirror_radius_min
            l_o, cands = _branch_candidates(radius, h_ion, transition.wavelength)
            if cands.size == 0:
                raise GeometryError(f"no stable resonant length below ℓ_o for R={radius}")
            objective = _p1_on_contour(transition, True, radius, h_ion, process.loss_bad)
            best, search_min = _descend_to_local_max(objective, cands)
            geom = CavityGeometry(radius, float(cands[best]), h_ion, transition.wavelength)
    except GeometryError as exc:
        return _infeasible(role, str(exc))

    g = ion_coupling(transition, geom, composite=True)
    kb = bad_loss_rate(geom.length, process.loss_bad)
    kl = float(optimal_output_coupling(g, kb, gamma))
    rates = _finish_rates(g, kl, 0.0, kb, gamma, transition.omega)
    eff = collection_p1(rates)
    figures = {
        "P1": eff.p1, "eta_c": eff.eta_c, "eta_ex": eff.eta_ex,
        "C": rates.cooperativity, "C_o": rates.cooperativity_bad,
        "ell_o": l_o, "search_min_length": search_min, "K": rates.K,
    }
    figures.update(_loss_figures(geom, rates))
    return Construction(role=role, rates=rates, geometry=geom, figures=figures)


def dit_construction(process: MirrorProcess, transition: AtomicTransition, h_ion: float,
                     f_min: float, length_policy: str = "auto") -> Construction:
    """Balanced transmission (DIT) receiver meeting the fidelity floor ``f_min``.

    Sets κ_L = κ_R = ½(g²/(C_min γ) − κ_B) at the resonant length nearest ℓ_o,
    which saturates the floor and maximizes the transmission efficiency
    P_t = (1 − C_min/C_o)²[1 + 1/(1 + C_min)²].
    """
    role = Role.DIT_RECEIVER
    c_min = c_min_for_fidelity(f_min)
    try:
        geom, l_o = _receiver_geometry(process, transition, h_ion, length_policy)
    except GeometryError as exc:
        return _infeasible(role, str(exc), C_min=c_min, F_min=f_min)
    gamma = transition.gamma
    g = ion_coupling(transition, geom)
    kb = bad_loss_rate(geom.length, process.loss_bad)
    c_o = g**2 / (kb * gamma) if kb > 0 else math.inf
    if c_o <= c_min:
        rates = _finish_rates(g, 0.0, 0.0, kb, gamma, transition.omega)
        return _infeasible(role, "bad-loss-limited fidelity: C_o ≤ C_min", geom, rates,
                           C_o=c_o, C_min=c_min, F_min=f_min, ell_o=l_o, P_t=0.0, fidelity=float("nan"))
    k_half = 0.5 * (g**2 / (c_min * gamma) - kb)
    rates = _finish_rates(g, k_half, k_half, kb, gamma, transition.omega)
    t_u = dit_transmission(rates, coupled=False)
    t_c = dit_transmission(rates, coupled=True)
    p_t = abs(t_u) ** 2 + abs(t_c) ** 2
    figures = {
        "P_t": p_t, "fidelity": abs(t_u) ** 2 / p_t, "C": rates.cooperativity, "C_o": c_o,
        "C_min": c_min, "F_min": f_min, "t_u": t_u.real, "t_c": t_c.real, "ell_o": l_o,
    }
    figures.update(_loss_figures(geom, rates))
    return Construction(role=role, rates=rates, geometry=geom, figures=figures)


def _cpf_rates_for_pad(geom, g, kb, gamma, omega, k_pad):
    """CPF optimum treating κ_B + κ_pad as the uncollectable loss; κ_pad sits on κ_R."""
    loss = kb + k_pad
    c = cpf_optimal_cooperativity(g**2 / (loss * gamma))
    kappa = g**2 / (c * gamma)
    return _finish_rates(g, kappa - loss, k_pad, kb, gamma, omega)


def _cpf_fidelity(rates):
    return cpf_fidelity_from_reflections(cpf_reflection(rates, False), cpf_reflection(rates, True))


def cpf_construction(process: MirrorProcess, transition: AtomicTransition, h_ion: float,
                     f_min: float | None = None, bandwidth_pad: bool = False,
                     length_policy: str = "auto", tol: float = 1e-6) -> Construction:
    """Single-port phase-flip (CPF) receiver.

    At the resonant length nearest ℓ_o the cooperativity is set to the root of
    C(2 + C) = C_o with κ_R = 0, giving fidelity (1 + C_o)/(2 + C_o).  With
    ``bandwidth_pad`` and a fidelity above ``f_min``, extra far-mirror
    transmission κ_R is added (Brent root-find on the fidelity) until the
    fidelity drops to ``f_min``, widening the receiver bandwidth.
    """
    role = Role.CPF_RECEIVER
    try:
        geom, l_o = _receiver_geometry(process, transition, h_ion, length_policy)
    except GeometryError as exc:
        return _infeasible(role, str(exc))
    gamma = transition.gamma
    g = ion_coupling(transition, geom)
    kb = bad_loss_rate(geom.length, process.loss_bad)
    if kb == 0:
        rates = _finish_rates(g, 0.0, 0.0, 0.0, gamma, transition.omega)
        return _infeasible(role, "lossless process: the optimum degenerates to κ → 0", geom, rates,
                           C_o=math.inf, ell_o=l_o)
    rates = _cpf_rates_for_pad(geom, g, kb, gamma, transition.omega, 0.0)
    if rates.kappa_L <= 0:
        return _infeasible(role, "no positive output coupling solves the optimum", geom, rates)
    fidelity = _cpf_fidelity(rates)
    padded = False
    if bandwidth_pad and f_min is not None and fidelity > f_min:
        def excess(k_pad):
            return _cpf_fidelity(_cpf_rates_for_pad(geom, g, kb, gamma, transition.omega, k_pad)) - f_min

        hi = kb
        while excess(hi) > 0:
            hi *= 2.0
        k_pad = brentq(excess, 0.0, hi, xtol=1e-15 * hi, rtol=1e-12)
        rates = _cpf_rates_for_pad(geom, g, kb, gamma, transition.omega, k_pad)
        fidelity, padded = _cpf_fidelity(rates), True
    r_u = cpf_reflection(rates, False)
    r_c = cpf_reflection(rates, True)
    figures = {
        "P_r": 0.25 * (2.0 + abs(r_u) ** 2 + abs(r_c) ** 2), "fidelity": fidelity,
        "C": rates.cooperativity, "C_o": rates.cooperativity_bad, "r_u": r_u.real, "r_c": r_c.real,
        "ell_o": l_o, "bandwidth_padded": padded,
    }
    if f_min is not None:
        figures["F_min"] = f_min
        figures["meets_target"] = bool(fidelity >= f_min - tol)
    figures.update(_loss_figures(geom, rates))
    return Construction(role=role, rates=rates, geometry=geom, figures=figures)


# ---------------------------------------------------------------------------
# fixed-finesse collection curves


@dataclass(frozen=True)
class FixedFinesseCurve:
    """P1 versus resonant length at fixed finesse for one mirror radius."""

    mirror_radius: float
    lengths: np.ndarray
    p1: np.ndarray
    cooperativity: np.ndarray
    best_length: float
    best_p1: float
    ell_o: float


def fixed_finesse_collection(mirror_radius: float, ion_height: float, wavelength: float,
                             dipole: float, gamma: float, finesse: float,
                             left_fraction: float = 0.5, n_points: int | None = None) -> FixedFinesseCurve:
    """Collection efficiency along the near-hemispherical branch at fixed finesse.

    The total loss is shared between the two mirrors (fraction ``left_fraction``
    on the collected side) with no bad loss.  The best length is the first
    local maximum descending from ℓ_o, as for :func:`emitter_construction`.

    Args:
        mirror_radius: Concave-mirror radius R in m.
        ion_height: Ion height h in m.
        wavelength: Wavelength in m.
        dipole: Projected dipole μ in C·m.
        gamma: Atomic half-linewidth γ in rad/s.
        finesse: Cavity finesse.
        left_fraction: Share of the loss on the collected mirror.
        n_points: If given, the returned curve is subsampled to this many lengths.
    """
    if not 0.0 <= left_fraction <= 1.0:
        raise DomainError("left_fraction must lie in [0, 1]")
    l_o, cands = _branch_candidates(mirror_radius, ion_height, wavelength)
    if cands.size == 0:
        raise GeometryError(f"no stable resonant length below ℓ_o for R={mirror_radius}")
    omega = 2.0 * math.pi * C / wavelength

    def evaluate(lengths):
        volume = mode_volume_along(mirror_radius, lengths, ion_height, wavelength)
        g = dipole / HBAR * np.sqrt(HBAR * omega / (2.0 * EPS0 * volume))
        kappa = kappa_from_finesse(lengths, finesse)
        p1 = g**2 / (g**2 + kappa * gamma) * left_fraction * kappa / (kappa + gamma)
        return p1, g**2 / (kappa * gamma)

    best, _ = _descend_to_local_max(lambda ls: evaluate(ls)[0], cands)
    if n_points is not None and n_points < cands.size:
        pick = np.unique(np.linspace(0, cands.size - 1, n_points).round().astype(int))
        shown = cands[pick]
    else:
        shown = cands
    p1, coop = evaluate(shown)
    best_len = float(cands[best])
    return FixedFinesseCurve(mirror_radius, shown, p1, coop, best_len, float(evaluate(np.array([best_len]))[0][0]), l_o)
