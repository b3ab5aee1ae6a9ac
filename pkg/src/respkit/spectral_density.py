"""Bath spectral-density models.

Two families are supported, both parametrized in wavenumbers at the public
boundary and stored internally in rad/ps:

* Drude-Lorentz:        L(W) = 2*lambda0*W*gamma / (pi*(W^2 + gamma^2))
* power law w/ cutoff:  L(W) = (A_n/n!) * W^n / W_c^(n-1) * exp(-W/W_c)

The reorganization energy E_r = integral L(W)/W dW calibrates coupling
amplitudes across models; the quantum spectral density is hbar * L(W).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import quadrature
from .errors import DomainError
from .units import angular_to_wavenumber, wavenumber_to_angular


class Kind(enum.Enum):
    DRUDE_LORENTZ = "drude_lorentz"
    POWER_EXP_CUTOFF = "power_exp_cutoff"


@dataclass(frozen=True)
class SpectralDensity:
    """Immutable bath model. All frequency fields are in rad/ps.

    Use the drude_lorentz / power_exp_cutoff constructors, which take cm^-1.
    Zero coupling (lambda0 = 0 or coupling = 0) is legal and meaningful: it
    is the free-oscillator limit used in divergence demonstrations.
    """

    kind: Kind
    lambda0: float = 0.0     # Drude-Lorentz amplitude
    gamma: float = 0.0       # Drude-Lorentz relaxation rate
    n: float = 0.0           # power-law exponent
    coupling: float = 0.0    # power-law amplitude A_n (dimensionless)
    omega_c: float = 0.0     # power-law cutoff

    def __post_init__(self):
        if self.kind is Kind.DRUDE_LORENTZ:
            if self.lambda0 < 0.0:
                raise DomainError("lambda0 must be >= 0")
            if not self.gamma > 0.0:
                raise DomainError("gamma must be positive")
        else:
            if self.coupling < 0.0:
                raise DomainError("coupling amplitude must be >= 0")
            if not self.omega_c > 0.0:
                raise DomainError("omega_c must be positive")
            if self.n < 1.0:
                raise DomainError("power-law exponent n must be >= 1")

    @staticmethod
    def drude_lorentz(lambda0_cm: float, gamma_cm: float) -> "SpectralDensity":
        return SpectralDensity(Kind.DRUDE_LORENTZ,
                               lambda0=wavenumber_to_angular(lambda0_cm),
                               gamma=wavenumber_to_angular(gamma_cm))

    @staticmethod
    def power_exp_cutoff(n: float, coupling: float,
                         omega_c_cm: float) -> "SpectralDensity":
        """coupling is the dimensionless amplitude A_n (inverse-hbar units)."""
        return SpectralDensity(Kind.POWER_EXP_CUTOFF, n=float(n),
                               coupling=coupling,
                               omega_c=wavenumber_to_angular(omega_c_cm))

    @property
    def is_zero_coupling(self) -> bool:
        if self.kind is Kind.DRUDE_LORENTZ:
            return self.lambda0 == 0.0
        return self.coupling == 0.0

    @property
    def has_closed_form_kernel(self) -> bool:
        """Closed-form decay kernels exist for DL and integer n in {1,2,3}."""
        if self.kind is Kind.DRUDE_LORENTZ:
            return True
        return float(self.n).is_integer() and int(self.n) in (1, 2, 3)

    def label(self) -> str:
        if self.kind is Kind.DRUDE_LORENTZ:
            return "drude_lorentz"
        n = self.n
        return f"power_n{int(n)}" if float(n).is_integer() else f"power_n{n:g}"


def sd_eval(model: SpectralDensity, omega):
    """Evaluate L(W) at omega >= 0 (rad/ps). Vectorized; zero at W = 0."""
    w = np.asarray(omega, dtype=float)
    if np.any(w < 0.0):
        raise DomainError("spectral density is defined for omega >= 0")
    if model.kind is Kind.DRUDE_LORENTZ:
        out = 2.0 * model.lambda0 * w * model.gamma / (np.pi * (w * w + model.gamma ** 2))
    else:
        n, wc = model.n, model.omega_c
        out = (model.coupling / math.gamma(n + 1.0)) * w ** n / wc ** (n - 1.0) \
            * np.exp(-w / wc)
    return out if out.ndim else float(out)


def reorganization_energy(model: SpectralDensity) -> float:
    """E_r = integral_0^inf L(W)/W dW, in rad/ps (hbar = 1).

    Closed forms: Drude-Lorentz -> lambda0; power law -> A_n * W_c / n
    (Gamma(n)/Gamma(n+1) = 1/n holds for any real n >= 1).
    """
    if model.kind is Kind.DRUDE_LORENTZ:
        return model.lambda0
    return model.coupling * model.omega_c / model.n


def reorganization_energy_quadrature(model: SpectralDensity,
                                     rel_tol: float = 1e-12) -> float:
    """Adaptive-quadrature evaluation of E_r; oracle for the closed forms."""
    if model.is_zero_coupling:
        return 0.0
    if model.kind is Kind.DRUDE_LORENTZ:
        hi = 1e6 * model.gamma  # integrand ~ 1/W^2 tail; truncation ~ 1e-6 rel
    else:
        hi = 60.0 * model.omega_c

    def f(w):
        return sd_eval(model, w) / w

    res = quadrature.integrate(f, 0.0, hi, rel_tol=rel_tol, initial_panels=64)
    if model.kind is Kind.DRUDE_LORENTZ:
        # analytic tail of 2*lambda0*gamma/(pi*W^2) beyond the cutoff
        res = quadrature.QuadResult(
            res.value + 2.0 * model.lambda0 * model.gamma / (np.pi * hi),
            res.error, res.panels)
    return float(res.value)


def calibrate_coupling(e_r_cm: float, kind: Kind, *, gamma_cm: float = None,
                       n: float = None, omega_c_cm: float = None) -> SpectralDensity:
    """Build a model whose reorganization energy equals e_r_cm.

    Inverts the closed forms: lambda0 = E_r for Drude-Lorentz and
    A_n = n * E_r / W_c for the power family (exact for any real n >= 1,
    so no root-finding fallback is needed).
    """
    if not e_r_cm > 0.0:
        raise DomainError("reorganization energy must be positive")
    if kind is Kind.DRUDE_LORENTZ:
        if gamma_cm is None:
            raise DomainError("Drude-Lorentz calibration needs gamma_cm")
        return SpectralDensity.drude_lorentz(e_r_cm, gamma_cm)
    if n is None or omega_c_cm is None:
        raise DomainError("power-law calibration needs n and omega_c_cm")
    e_r = wavenumber_to_angular(e_r_cm)
    omega_c = wavenumber_to_angular(omega_c_cm)
    return SpectralDensity.power_exp_cutoff(n, float(n) * e_r / omega_c, omega_c_cm)


def quantum_sd(model: SpectralDensity, omega, hbar_scan: float):
    """Quantum spectral density hbar * L(W); hbar_scan enables hbar -> 0 scans."""
    if not hbar_scan > 0.0:
        raise DomainError("hbar_scan must be positive")
    return hbar_scan * sd_eval(model, omega)


def reorganization_energy_cm(model: SpectralDensity) -> float:
    return angular_to_wavenumber(reorganization_energy(model))
