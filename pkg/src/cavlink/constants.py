"""Physical constants (CODATA 2018) and angular-frequency helpers.

All internal quantities are SI; rates are angular frequencies in rad/s.  The
helpers :func:`mhz` and :func:`to_mhz` convert to and from the customary
"MHz/2π" representation used in tables and on the command line.
"""
from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class PhysicalConstants:
    """A frozen set of physical constants in SI units."""

    c: float
    hbar: float
    epsilon_0: float
    elementary_charge: float
    bohr_radius: float

    @property
    def e_a0(self) -> float:
        """Atomic unit of electric dipole moment, e·a₀ in C·m."""
        return self.elementary_charge * self.bohr_radius


CODATA_2018 = PhysicalConstants(
    c=299_792_458.0,
    hbar=1.054571817e-34,
    epsilon_0=8.8541878128e-12,
    elementary_charge=1.602176634e-19,
    bohr_radius=5.29177210903e-11,
)

C = CODATA_2018.c
HBAR = CODATA_2018.hbar
EPS0 = CODATA_2018.epsilon_0
E_A0 = CODATA_2018.e_a0

TWO_PI = 2.0 * math.pi
PPM = 1e-6


def mhz(value):
    """Convert a frequency in MHz to an angular frequency in rad/s.

    >>> round(mhz(1.0) / (2 * math.pi))
    1000000
    """
    return TWO_PI * 1e6 * value


def to_mhz(omega):
    """Convert an angular frequency in rad/s to MHz (i.e. ω/2π in MHz)."""
    return omega / (TWO_PI * 1e6)
