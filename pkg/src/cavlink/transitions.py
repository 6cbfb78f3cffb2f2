"""Atomic transition data and dipole moments derived from linewidths.

The dipole matrix element of a branch follows from the measured full linewidth
Γ, the branching ratio into the ground-state manifold and the relative dipole
overlap W of the branch:

    μ² = 3π ε₀ ħ Γ c³ / ω³ · R_br · W²

A registry of barium-ion qubit configurations ships with the package as a CSV
file with an explicit units header; :func:`load_registry` parses it into
:class:`AtomicTransition` records.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Mapping, Sequence

from .constants import C, E_A0, EPS0, HBAR, TWO_PI
from .errors import DomainError

__all__ = [
    "AtomicTransition",
    "dipole_from_linewidth",
    "load_registry",
    "transition_registry",
    "get_transition",
    "MODALITY_TRANSITIONS",
    "transition_for_modality",
]


def dipole_from_linewidth(wavelength: float, gamma_fwhm: float, branching_ratio: float,
                          dipole_overlap: float = 1.0) -> float:
    """Return the transition dipole moment μ in C·m.

    Args:
        wavelength: Transition wavelength in m.
        gamma_fwhm: Full natural linewidth Γ in rad/s.
        branching_ratio: Fraction of decays into the relevant ground manifold.
        dipole_overlap: Relative dipole overlap W of the branch, in [0, 1].

    Raises:
        DomainError: if any argument is outside its physical range.

    >>> round(dipole_from_linewidth(455e-9, 2 * math.pi * 25.3e6, 0.74) / E_A0, 2)
    2.34
    """
    if not wavelength > 0 or not gamma_fwhm > 0:
        raise DomainError("wavelength and linewidth must be positive")
    if not 0.0 < branching_ratio <= 1.0:
        raise DomainError(f"branching ratio {branching_ratio} outside (0, 1]")
    if not 0.0 <= dipole_overlap <= 1.0:
        raise DomainError(f"dipole overlap {dipole_overlap} outside [0, 1]")
    omega = TWO_PI * C / wavelength
    mu_sq = 3.0 * math.pi * EPS0 * HBAR * gamma_fwhm * C**3 / omega**3
    return math.sqrt(mu_sq * branching_ratio) * dipole_overlap


@dataclass(frozen=True)
class AtomicTransition:
    """One emitter/receiver qubit configuration.

    Attributes:
        label: Registry key, e.g. ``"Time-Bin"``.
        isotope: Ion species, e.g. ``"133Ba+"``.
        excited: Label of the excited state.
        ground_states: Labels of the cavity-coupled ground states (one per branch).
        cavity_axis: Cavity orientation relative to the quantization axis.
        wavelength: Wavelength in m.
        gamma_fwhm: Full natural linewidth Γ in rad/s.
        branching_ratio: Branching ratio into the ground manifold.
        dipole_overlap: Relative dipole overlap W for each branch.
        alignment: Projection of each branch dipole onto the cavity polarization.
        tabulated_branch: Reference μ·ε per branch in e·a₀ (for cross-checks).
        tabulated_mu_eff: Reference effective dipole in e·a₀.
        hf_splitting: Hyperfine splitting Δ_HF in rad/s, if the modality uses it.
    """

    label: str
    isotope: str
    excited: str
    ground_states: tuple[str, ...]
    cavity_axis: str
    wavelength: float
    gamma_fwhm: float
    branching_ratio: float
    dipole_overlap: tuple[float, ...]
    alignment: tuple[float, ...]
    tabulated_branch: tuple[float, ...] = ()
    tabulated_mu_eff: float | None = None
    hf_splitting: float | None = None

    def __post_init__(self):
        n = len(self.ground_states)
        if n == 0 or len(self.dipole_overlap) != n or len(self.alignment) != n:
            raise DomainError(f"{self.label}: per-branch fields must have one entry per ground state")
        for a in self.alignment:
            if not 0.0 <= a <= 1.0:
                raise DomainError(f"{self.label}: alignment {a} outside [0, 1]")

    @property
    def omega(self) -> float:
        """Optical angular frequency in rad/s."""
        return TWO_PI * C / self.wavelength

    @property
    def gamma(self) -> float:
        """Atomic amplitude decay rate γ = Γ/2 in rad/s."""
        return 0.5 * self.gamma_fwhm

    @property
    def n_branches(self) -> int:
        return len(self.ground_states)

    def branch_dipoles(self) -> tuple[float, ...]:
        """Projected dipole μᵢ·εᵢ of each branch in C·m."""
        return tuple(
            dipole_from_linewidth(self.wavelength, self.gamma_fwhm, self.branching_ratio, w) * a
            for w, a in zip(self.dipole_overlap, self.alignment)
        )

    @property
    def mu_eff(self) -> float:
        """Effective dipole √Σ(μᵢ·εᵢ)² in C·m."""
        return math.sqrt(sum(m * m for m in self.branch_dipoles()))

    @property
    def mu_single(self) -> float:
        """Dipole of a single cavity-coupled branch (the first one) in C·m."""
        return self.branch_dipoles()[0]


def _floats(field: str) -> tuple[float, ...]:
    return tuple(float(x) for x in field.split(";") if x.strip())


def _parse_rows(rows: Sequence[Mapping[str, str]]) -> dict[str, AtomicTransition]:
    registry: dict[str, AtomicTransition] = {}
    for row in rows:
        hf = (row.get("hf_splitting_GHz") or "").strip()
        mu_ref = (row.get("tabulated_mu_eff_ea0") or "").strip()
        tr = AtomicTransition(
            label=row["label"],
            isotope=row["isotope"],
            excited=row["excited"],
            ground_states=tuple(row["ground_states"].split(";")),
            cavity_axis=row["cavity_axis"],
            wavelength=float(row["wavelength_nm"]) * 1e-9,
            gamma_fwhm=TWO_PI * float(row["linewidth_MHz"]) * 1e6,
            branching_ratio=float(row["branching_ratio"]),
            dipole_overlap=_floats(row["dipole_overlap"]),
            alignment=_floats(row["alignment"]),
            tabulated_branch=_floats(row.get("tabulated_branch_ea0") or ""),
            tabulated_mu_eff=float(mu_ref) if mu_ref else None,
            hf_splitting=TWO_PI * float(hf) * 1e9 if hf else None,
        )
        registry[tr.label] = tr
    return registry


def load_registry(path=None) -> dict[str, AtomicTransition]:
    """Parse a transitions CSV (comment lines start with ``#``)."""
    if path is None:
        text = resources.files("cavlink").joinpath("data/transitions.csv").read_text()
    else:
        with open(path, newline="") as fh:
            text = fh.read()
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    return _parse_rows(list(csv.DictReader(lines)))


@lru_cache(maxsize=1)
def _default_registry() -> dict[str, AtomicTransition]:
    return load_registry()


def transition_registry() -> dict[str, AtomicTransition]:
    """Return a copy of the built-in transition registry."""
    return dict(_default_registry())


def get_transition(label: str) -> AtomicTransition:
    """Look up a built-in transition by label.

    Raises:
        KeyError: with the list of known labels if ``label`` is unknown.
    """
    reg = _default_registry()
    try:
        return reg[label]
    except KeyError:
        raise KeyError(f"unknown transition {label!r}; known: {sorted(reg)}") from None


#: Qubit modality → registry label used for link-level studies.
MODALITY_TRANSITIONS = {
    "polarization": "Polarization",
    "frequency": "Frequency",
    "time-bin": "Time-Bin",
}


def transition_for_modality(modality: str) -> AtomicTransition:
    """Return the transition used for a qubit modality."""
    try:
        return get_transition(MODALITY_TRANSITIONS[modality])
    except KeyError:
        raise KeyError(f"unknown modality {modality!r}; known: {sorted(MODALITY_TRANSITIONS)}") from None
