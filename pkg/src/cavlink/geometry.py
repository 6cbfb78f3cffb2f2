"""Plano-concave cavity geometry, mode volume and loss-to-rate conversions.

The cavity is a flat mirror and a concave mirror of radius ``R`` separated by
``ℓ``; the ion sits a height ``h`` above the flat mirror on the cavity axis.
The Gaussian mode waist lies on the flat mirror, so

    z_R = √(Rℓ − ℓ²),   w₀ = √(λ z_R / π),   w_ion = w₀ √(1 + (h/z_R)²).

The cooperativity at the ion is maximized where z_R = h, which defines the
"optimal" length ℓ_o on the near-hemispherical branch ℓ ≥ R/2.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constants import C, PPM
from .errors import DomainError, GeometryError, LosslessCavityError

__all__ = [
    "CavityGeometry",
    "MirrorProcess",
    "ModeProfile",
    "CavityLossRates",
    "rayleigh_and_waists",
    "length_for_zr_equals_h",
    "effective_mode_volume",
    "mode_volume_along",
    "resonant_lengths",
    "nearest_resonant_length",
    "scattering_loss",
    "finesse_from_loss",
    "loss_from_finesse",
    "free_spectral_range",
    "kappa_from_finesse",
    "kappa_from_losses",
    "bad_loss_rate",
    "losses_for_kappas",
    "double_resonance_length",
    "is_double_resonant",
]


@dataclass(frozen=True)
class CavityGeometry:
    """A plano-concave cavity with an ion on axis.

    Attributes:
        mirror_radius: Radius of curvature R of the concave mirror in m.
        length: Mirror separation ℓ in m.
        ion_height: Ion height h above the flat mirror in m.
        wavelength: Cavity wavelength λ in m.
    """

    mirror_radius: float
    length: float
    ion_height: float
    wavelength: float

    def __post_init__(self):
        if not (self.mirror_radius > 0 and self.length > 0 and self.wavelength > 0):
            raise DomainError("radius, length and wavelength must be positive")
        if self.ion_height < 0 or self.ion_height >= self.length:
            raise DomainError(f"ion height {self.ion_height} must lie in [0, ℓ={self.length})")
        if self.length >= self.mirror_radius:
            raise GeometryError(f"unstable cavity: ℓ={self.length} ≥ R={self.mirror_radius}")


@dataclass(frozen=True)
class MirrorProcess:
    """Mirror fabrication capability: residual bad loss and minimum radius.

    Attributes:
        loss_bad: Round-trip fractional loss into non-collected channels, ℒ_B.
        mirror_radius_min: Smallest fabricable radius of curvature in m.
    """

    loss_bad: float
    mirror_radius_min: float

    def __post_init__(self):
        if not 0.0 <= self.loss_bad < 1.0:
            raise DomainError(f"bad loss {self.loss_bad} outside [0, 1)")
        if not self.mirror_radius_min > 0:
            raise DomainError("minimum mirror radius must be positive")

    @classmethod
    def from_ppm(cls, loss_bad_ppm: float, mirror_radius_min: float) -> "MirrorProcess":
        return cls(loss_bad_ppm * PPM, mirror_radius_min)


@dataclass(frozen=True)
class ModeProfile:
    """Rayleigh range and waists of the fundamental mode (all in m)."""

    rayleigh_range: float
    waist: float
    waist_at_ion: float


@dataclass(frozen=True)
class CavityLossRates:
    """Field decay rates (rad/s) split by loss channel."""

    kappa: float
    kappa_L: float
    kappa_R: float
    kappa_B: float
    finesse: float
    fsr: float


def rayleigh_and_waists(geom: CavityGeometry) -> ModeProfile:
    """Rayleigh range, waist and ion-plane waist of the cavity mode.

    >>> m = rayleigh_and_waists(CavityGeometry(400e-6, 200e-6, 70e-6, 493e-9))
    >>> round(m.rayleigh_range * 1e6, 1)
    200.0
    """
    R, l = geom.mirror_radius, geom.length
    zr = math.sqrt(R * l - l * l)
    w0 = math.sqrt(geom.wavelength * zr / math.pi)
    w_ion = w0 * math.sqrt(1.0 + (geom.ion_height / zr) ** 2)
    return ModeProfile(zr, w0, w_ion)


def mode_volume_along(mirror_radius: float, lengths, ion_height: float, wavelength: float) -> np.ndarray:
    """Vectorized effective mode volume π w_ion² ℓ / 4 for an array of lengths.

    Inputs are not validated; callers supply stable lengths h ≤ ℓ < R.
    """
    l = np.asarray(lengths, dtype=float)
    zr = np.sqrt(mirror_radius * l - l * l)
    w_ion_sq = wavelength * zr / math.pi * (1.0 + (ion_height / zr) ** 2)
    return math.pi * w_ion_sq * l / 4.0


def length_for_zr_equals_h(mirror_radius: float, ion_height: float) -> float:
    """Length ℓ_o ≥ R/2 at which the Rayleigh range equals the ion height.

    Solves Rℓ − ℓ² = h² on the near-hemispherical branch.

    Raises:
        GeometryError: if R < 2h (no real root).
    """
    disc = mirror_radius**2 - 4.0 * ion_height**2
    if disc < 0:
        raise GeometryError(f"no length with z_R = h for R={mirror_radius}, h={ion_height} (need R ≥ 2h)")
    return 0.5 * (mirror_radius + math.sqrt(disc))


def effective_mode_volume(geom: CavityGeometry) -> float:
    """Effective mode volume Ṽ = π w_ion² ℓ / 4 at the ion position (m³)."""
    w_ion = rayleigh_and_waists(geom).waist_at_ion
    return math.pi * w_ion**2 * geom.length / 4.0


def resonant_lengths(wavelength: float, l_min: float, l_max: float) -> np.ndarray:
    """All lengths m·λ/2 (integer m ≥ 1) inside the closed interval [l_min, l_max]."""
    if l_max < l_min:
        return np.empty(0)
    half = 0.5 * wavelength
    m_lo = max(1, math.ceil(l_min / half - 1e-9))
    m_hi = math.floor(l_max / half + 1e-9)
    if m_hi < m_lo:
        return np.empty(0)
    return np.arange(m_lo, m_hi + 1, dtype=np.float64) * half


def nearest_resonant_length(wavelength: float, length: float) -> float:
    """Resonant length m·λ/2 closest to ``length`` (m ≥ 1)."""
    half = 0.5 * wavelength
    return max(1, round(length / half)) * half


def scattering_loss(roughness_rms: float, wavelength: float) -> float:
    """Surface-scattering loss (4πσ/λ)² for RMS roughness σ."""
    return (4.0 * math.pi * roughness_rms / wavelength) ** 2


def free_spectral_range(length: float) -> float:
    """Free spectral range ν_F = c/2ℓ in Hz (not angular)."""
    return C / (2.0 * length)


def finesse_from_loss(loss: float) -> float:
    """Finesse 𝓕 = −π / ln√(1 − ℒ) for total round-trip loss ℒ.

    Raises:
        LosslessCavityError: if ℒ = 0.
    """
    if loss <= 0:
        raise LosslessCavityError("finesse is unbounded for a lossless cavity")
    if loss >= 1:
        raise DomainError(f"loss {loss} must be < 1")
    return -2.0 * math.pi / math.log1p(-loss)


def loss_from_finesse(finesse: float) -> float:
    """Inverse of :func:`finesse_from_loss`."""
    if not finesse > 0:
        raise DomainError("finesse must be positive")
    return -math.expm1(-2.0 * math.pi / finesse)


def kappa_from_finesse(length, finesse):
    """Total field decay rate κ = π ν_F / 𝓕 (rad/s); ``length`` may be an array."""
    kappa = math.pi * C / (2.0 * np.asarray(length, dtype=float)) / finesse
    return float(kappa) if kappa.ndim == 0 else kappa


def bad_loss_rate(length, loss_bad: float):
    """Decay rate κ_B of a cavity whose only loss is ℒ_B (zero when ℒ_B = 0)."""
    if loss_bad == 0:
        return 0.0 * kappa_from_finesse(length, 1.0)
    return kappa_from_finesse(length, finesse_from_loss(loss_bad))


def kappa_from_losses(length: float, trans_L: float, trans_R: float, loss_B: float) -> CavityLossRates:
    """Convert mirror transmissions and bad loss to field decay rates.

    The total rate follows from the finesse of the summed loss and is split
    between channels in proportion to their fractional losses.

    Raises:
        LosslessCavityError: if all losses are zero.
        DomainError: if any loss is negative.
    """
    if min(trans_L, trans_R, loss_B) < 0:
        raise DomainError("losses must be non-negative")
    total = trans_L + trans_R + loss_B
    finesse = finesse_from_loss(total)
    kappa = kappa_from_finesse(length, finesse)
    return CavityLossRates(
        kappa=kappa,
        kappa_L=kappa * trans_L / total,
        kappa_R=kappa * trans_R / total,
        kappa_B=kappa * loss_B / total,
        finesse=finesse,
        fsr=free_spectral_range(length),
    )


def losses_for_kappas(length: float, kappa_L: float, kappa_R: float, kappa_B: float) -> tuple[float, float, float]:
    """Fractional losses (𝒯_L, 𝒯_R, ℒ_B) that reproduce the given rates.

    Inverse of :func:`kappa_from_losses`.
    """
    kappa = kappa_L + kappa_R + kappa_B
    if kappa <= 0:
        raise LosslessCavityError("at least one decay rate must be positive")
    total = loss_from_finesse(math.pi * free_spectral_range(length) / kappa)
    return total * kappa_L / kappa, total * kappa_R / kappa, total * kappa_B / kappa


def double_resonance_length(hf_splitting: float, wavelength: float) -> float:
    """Resonant length whose free spectral range is closest to Δ_HF/2π.

    Args:
        hf_splitting: Ground-state splitting Δ_HF in rad/s.
        wavelength: Cavity wavelength in m.
    """
    target = C / (2.0 * hf_splitting / (2.0 * math.pi))
    return nearest_resonant_length(wavelength, target)


def is_double_resonant(length: float, hf_splitting: float, kappa: float) -> bool:
    """True if |ν_F − Δ_HF/2π| is below the cavity half-linewidth κ/2π."""
    return abs(free_spectral_range(length) - hf_splitting / (2 * math.pi)) < kappa / (2 * math.pi)
