"""Input–output reflection and transmission of a driven atom–cavity system.

For a field at detunings Δ_c = ω − ω_c and Δ_a = ω − ω_a incident on the
collected (left) port,

    r = 1 − 2κ_L(iΔ_a + γ)/D,    t = 2√(κ_Lκ_R)(iΔ_a + γ)/D,
    D = (iΔ_c + κ)(iΔ_a + γ) + g².

The resonant ("perfect resonance") limits reduce to functions of the
cooperativity only and drive the transparency (DIT) and phase-flip (CPF)
receiver models.  Functions accept scalar or array detunings.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .cqed import CavityRates
from .errors import DomainError, SingularityError

__all__ = [
    "Detunings",
    "ScatterCoeffs",
    "reflection_coeff",
    "transmission_coeff",
    "scatter_coeffs",
    "dit_transmission",
    "cpf_reflection",
    "apply_mode_mismatch",
    "mixed_reflectance",
    "UnbalancedCavityWarning",
]


class UnbalancedCavityWarning(UserWarning):
    """The transparency formula was evaluated on a cavity with κ_L ≠ κ_R."""


@dataclass(frozen=True)
class Detunings:
    """Probe detunings from the atom (Δ_a) and cavity (Δ_c) in rad/s."""

    delta_a: float = 0.0
    delta_c: float = 0.0


class ScatterCoeffs(NamedTuple):
    r: complex
    t: complex


def _denominator(rates: CavityRates, det: Detunings):
    da = np.asarray(det.delta_a, dtype=float)
    dc = np.asarray(det.delta_c, dtype=float)
    atom = 1j * da + rates.gamma
    den = (1j * dc + rates.kappa) * atom + rates.g**2
    if np.any(np.abs(den) == 0):
        raise SingularityError("response evaluated at a pole (vanishing denominator)")
    return atom, den


def _scalar(x):
    return complex(x) if np.ndim(x) == 0 else x


def reflection_coeff(rates: CavityRates, det: Detunings = Detunings()):
    """Amplitude reflection coefficient r(ω) at the collected port."""
    atom, den = _denominator(rates, det)
    return _scalar(1.0 - 2.0 * rates.kappa_L * atom / den)


def transmission_coeff(rates: CavityRates, det: Detunings = Detunings()):
    """Amplitude transmission coefficient t(ω) from the collected to the far port."""
    atom, den = _denominator(rates, det)
    return _scalar(2.0 * math.sqrt(rates.kappa_L * rates.kappa_R) * atom / den)


def scatter_coeffs(rates: CavityRates, det: Detunings = Detunings()) -> ScatterCoeffs:
    """Both coefficients at once."""
    return ScatterCoeffs(reflection_coeff(rates, det), transmission_coeff(rates, det))


def _resonant_cooperativity(rates: CavityRates, coupled: bool) -> float:
    if rates.kappa <= 0:
        raise DomainError("resonant coefficients need κ > 0")
    if not coupled:
        return 0.0
    if rates.gamma == 0:
        raise DomainError("resonant coefficients need γ > 0 for a coupled atom")
    return rates.cooperativity


def dit_transmission(rates: CavityRates, coupled: bool) -> complex:
    """Resonant transmission t°ᵢ = (2κ_L/κ)/(1 + Cᵢ) of a balanced cavity.

    ``coupled=False`` uses Cᵢ = 0.  A :class:`UnbalancedCavityWarning` is
    issued (and the value still returned) if κ_L and κ_R differ.
    """
    if not math.isclose(rates.kappa_L, rates.kappa_R, rel_tol=1e-9, abs_tol=0.0):
        warnings.warn("dit_transmission assumes κ_L = κ_R", UnbalancedCavityWarning, stacklevel=2)
    c = _resonant_cooperativity(rates, coupled)
    return complex(2.0 * rates.kappa_L / rates.kappa / (1.0 + c))


def cpf_reflection(rates: CavityRates, coupled: bool) -> complex:
    """Resonant reflection r°ᵢ = 1 − (2κ_L/κ)/(1 + Cᵢ)."""
    c = _resonant_cooperativity(rates, coupled)
    return complex(1.0 - 2.0 * rates.kappa_L / rates.kappa / (1.0 + c))


def apply_mode_mismatch(coeffs: ScatterCoeffs, xi: float) -> tuple[float, float]:
    """Intensity reflection/transmission when only a fraction ξ is mode matched.

    The unmatched fraction (1 − ξ) is reflected promptly from the input mirror.
    Returns ``(|r̃|², |t̃|²)``.
    """
    if not 0.0 <= xi <= 1.0:
        raise DomainError(f"mode matching ξ={xi} outside [0, 1]")
    r2 = abs(coeffs.r) ** 2
    t2 = abs(coeffs.t) ** 2
    return (1.0 - xi) + xi * r2, xi * t2


def mixed_reflectance(r_u: complex, w1: float, w2: float, tol: float = 1e-9) -> complex:
    """Coherent mixture w₁·r_u + w₂·r_p of cavity and prompt (r_p = 1) reflection.

    Raises:
        DomainError: if w₁² + w₂² differs from 1 by more than ``tol``.
    """
    if abs(w1 * w1 + w2 * w2 - 1.0) > tol:
        raise DomainError(f"weights must satisfy w1² + w2² = 1 (got {w1 * w1 + w2 * w2})")
    return complex(w1 * r_u + w2)
