"""Unit conventions and conversions.

Internally every energy and frequency is an angular frequency in rad/ps and
every time is in ps, with hbar = 1 so energies and angular frequencies are
interchangeable. Public constructors accept wavenumbers (cm^-1) and kelvin;
the conversion happens exactly once, at construction, so no downstream
formula ever mixes unit systems.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError


@dataclass(frozen=True)
class UnitSystem:
    """Physical constants for conversions (CODATA 2018 values).

    hbar_internal is pinned to 1: the physical hbar only ever enters as an
    explicit scan parameter of the quantum routines.
    """

    hbar_internal: float = 1.0
    c_cm_per_ps: float = 0.0299792458
    kB_wavenumber_per_K: float = 0.6950348004

    def __post_init__(self):
        if self.hbar_internal != 1.0:
            raise DomainError("internal unit system fixes hbar = 1")
        if self.c_cm_per_ps <= 0.0 or self.kB_wavenumber_per_K <= 0.0:
            raise DomainError("physical constants must be positive")


UNITS = UnitSystem()


def wavenumber_to_angular(nu_cm, units: UnitSystem = UNITS):
    """cm^-1 -> rad/ps. Linear and sign-preserving; accepts arrays."""
    return 2.0 * math.pi * units.c_cm_per_ps * nu_cm


def angular_to_wavenumber(omega, units: UnitSystem = UNITS):
    """rad/ps -> cm^-1; exact inverse of wavenumber_to_angular."""
    return omega / (2.0 * math.pi * units.c_cm_per_ps)


def thermal_energy(temperature_K: float, units: UnitSystem = UNITS) -> float:
    """k_B*T in cm^-1. This is 1/beta everywhere downstream.

    Raises DomainError for non-positive temperature (beta undefined).
    """
    if not temperature_K > 0.0:
        raise DomainError(f"temperature must be positive, got {temperature_K}")
    return units.kB_wavenumber_per_K * temperature_K


def thermal_energy_angular(temperature_K: float, units: UnitSystem = UNITS) -> float:
    """k_B*T converted to rad/ps, the internal energy unit."""
    return wavenumber_to_angular(thermal_energy(temperature_K, units), units)
