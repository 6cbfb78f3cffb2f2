"""Cavity-QED rates: coupling, cooperativity, collection efficiency, wavepackets.

Conventions: every rate is an amplitude (field) decay rate or coupling in
rad/s.  ``gamma`` is half the natural linewidth (γ = Γ/2) and the total cavity
rate is κ = κ_L + κ_R + κ_B, where κ_L is the collected port, κ_R the opposite
mirror and κ_B the uncollectable bad loss.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np
from scipy.integrate import trapezoid

from .constants import EPS0, HBAR
from .errors import DomainError

__all__ = [
    "CavityRates",
    "CollectionEfficiency",
    "coupling_g0",
    "composite_g",
    "collection_p1",
    "leaky_regime_margin",
    "emission_wavepacket",
    "wavepacket_overlap",
    "slowest_decay",
]


@dataclass(frozen=True)
class CavityRates:
    """Coupling and decay rates of an atom–cavity system (all rad/s)."""

    g: float
    kappa_L: float
    kappa_R: float
    kappa_B: float
    gamma: float
    omega: float = 0.0

    def __post_init__(self):
        for name in ("g", "kappa_L", "kappa_R", "kappa_B", "gamma", "omega"):
            v = getattr(self, name)
            if not (v >= 0 and math.isfinite(v)):
                raise DomainError(f"{name}={v} must be finite and non-negative")

    @property
    def kappa(self) -> float:
        """Total cavity field decay rate κ."""
        return self.kappa_L + self.kappa_R + self.kappa_B

    @property
    def cooperativity(self) -> float:
        """C = g²/(κγ); infinite when κγ = 0 and g > 0."""
        den = self.kappa * self.gamma
        if den == 0:
            return math.inf if self.g > 0 else 0.0
        return self.g**2 / den

    @property
    def cooperativity_bad(self) -> float:
        """C_o = g²/(κ_B γ), the ceiling reached as the mirror ports close."""
        den = self.kappa_B * self.gamma
        if den == 0:
            return math.inf if self.g > 0 else 0.0
        return self.g**2 / den

    @property
    def K(self) -> float:
        """Average decay constant K = (κ + γ)/2 of the vacuum-Rabi oscillation."""
        return 0.5 * (self.kappa + self.gamma)

    @property
    def g_prime(self) -> complex:
        """Modified Rabi frequency g′ = √(g² − (κ−γ)²/4); imaginary when overdamped."""
        return cmath.sqrt(self.g**2 - 0.25 * (self.kappa - self.gamma) ** 2)

    @property
    def max_rate(self) -> float:
        return max(self.g, self.kappa, self.gamma)

    def replace(self, **changes) -> "CavityRates":
        fields = dict(g=self.g, kappa_L=self.kappa_L, kappa_R=self.kappa_R,
                      kappa_B=self.kappa_B, gamma=self.gamma, omega=self.omega)
        fields.update(changes)
        return CavityRates(**fields)


class CollectionEfficiency(NamedTuple):
    """Single-photon collection efficiency and its two factors."""

    p1: float
    eta_c: float
    eta_ex: float
    cooperativity: float


def coupling_g0(mu: float, omega: float, volume: float) -> float:
    """Coherent coupling g = (μ/ħ)·√(ħω / 2ε₀V) for dipole μ and mode volume V.

    Args:
        mu: Projected transition dipole in C·m.
        omega: Optical angular frequency in rad/s.
        volume: (Effective) mode volume in m³.
    """
    if mu < 0 or not omega > 0 or not volume > 0:
        raise DomainError("coupling_g0 requires μ ≥ 0 and positive ω, V")
    return mu / HBAR * math.sqrt(HBAR * omega / (2.0 * EPS0 * volume))


def composite_g(couplings: Sequence[float]) -> float:
    """Root-sum-square coupling g̃ = √Σgᵢ² for several cavity-coupled branches.

    >>> composite_g([3.0, 4.0])
    5.0
    """
    if len(couplings) == 0:
        raise DomainError("composite_g needs at least one coupling")
    if any(g < 0 for g in couplings):
        raise DomainError("couplings must be non-negative")
    return math.sqrt(sum(g * g for g in couplings))


def collection_p1(rates: CavityRates) -> CollectionEfficiency:
    """Probability that an excited atom emits into the collected cavity port.

    P1 = η_c·η_ex with η_c = g²/(g² + κγ) and η_ex = κ_L/(κ + γ).
    """
    kg = rates.kappa + rates.gamma
    if kg <= 0:
        raise DomainError("collection efficiency undefined for κ + γ = 0")
    den = rates.g**2 + rates.kappa * rates.gamma
    eta_c = rates.g**2 / den if den > 0 else 0.0
    eta_ex = rates.kappa_L / kg
    return CollectionEfficiency(eta_c * eta_ex, eta_c, eta_ex, rates.cooperativity)


def leaky_regime_margin(rates: CavityRates) -> tuple[float, float]:
    """Return (κ_L/γ, g²/(κγ)); both ≫ 1 marks the leaky-cavity regime.

    A vanishing γ is degenerate and yields infinite margins.
    """
    if rates.gamma == 0:
        return math.inf, math.inf
    if rates.gamma < 0:
        raise DomainError("γ must be positive")
    return rates.kappa_L / rates.gamma, rates.cooperativity


def emission_wavepacket(rates: CavityRates, t) -> np.ndarray:
    """Photon amplitude density φ(t) = √(2κ_L)·(g/g′)·e^{−Kt}·sin(g′t) in √Hz.

    The atom is prepared in its excited state at t = 0 with an empty cavity.
    The overdamped case (imaginary g′) is handled by analytic continuation,
    and the critically damped case g′ → 0 by its limit g·t·e^{−Kt}.
    """
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise DomainError("wavepacket defined for t ≥ 0")
    K = rates.K
    disc = rates.g**2 - 0.25 * (rates.kappa - rates.gamma) ** 2
    beta = math.sqrt(abs(disc))
    x = beta * t
    if beta == 0 or np.all(x < 1e-4):
        # critically damped limit sin(g't)/g' -> t
        env = t * np.exp(-K * t)
    elif disc > 0:
        env = np.exp(-K * t) * np.sin(x) / beta
    else:
        # overdamped: e^{-Kt} sinh(βt)/β written without overflow
        env = (np.exp((beta - K) * t) - np.exp(-(beta + K) * t)) / (2.0 * beta)
    return math.sqrt(2.0 * rates.kappa_L) * rates.g * env.astype(complex)


def slowest_decay(rates: CavityRates) -> float:
    """Slowest amplitude decay constant of the emission (K, or K − |g′| if overdamped)."""
    disc = rates.g**2 - 0.25 * (rates.kappa - rates.gamma) ** 2
    return rates.K if disc >= 0 else rates.K - math.sqrt(-disc)


def _default_horizon(*rates: CavityRates) -> float:
    return 40.0 / min(slowest_decay(r) for r in rates)


def wavepacket_overlap(phi1, phi2, horizon: float | None = None, n_points: int = 200_001) -> float:
    """Normalized overlap |∫φ₁*φ₂dt| / √(∫|φ₁|²∫|φ₂|²) on [0, horizon].

    ``phi1`` and ``phi2`` are either :class:`CavityRates` (whose emission
    wavepackets are used) or callables mapping a time array to amplitudes.

    Raises:
        DomainError: if either wavepacket has zero norm.
    """
    rates = [p for p in (phi1, phi2) if isinstance(p, CavityRates)]
    if horizon is None:
        if not rates:
            raise DomainError("horizon required for callable wavepackets")
        horizon = _default_horizon(*rates)
    t = np.linspace(0.0, horizon, n_points)

    def sample(p):
        return emission_wavepacket(p, t) if isinstance(p, CavityRates) else np.asarray(p(t), dtype=complex)

    a, b = sample(phi1), sample(phi2)
    n1 = trapezoid(np.abs(a) ** 2, t)
    n2 = trapezoid(np.abs(b) ** 2, t)
    if n1 <= 0 or n2 <= 0:
        raise DomainError("zero-norm wavepacket")
    return float(min(1.0, abs(trapezoid(np.conj(a) * b, t)) / math.sqrt(n1 * n2)))
