"""Time-domain response functions of the weakly anharmonic oscillator.

Classical linear response:

    R1(tau) = mu^2 [ sin(w0 tau)/w0 + 4 D kT tau cos(w0 tau)/w0^2 ] e^{-h(tau)}

Classical third order (one pathway, complex conjugate optional):

    R3 = (mu^4 D t3 / w0^2) * phase * e^{-G},
    phase = e^{-i w0 (t1+t3)} (nonrephasing) or e^{-i w0 (t3-t1)} (rephasing)

The quantum expressions carry the anharmonic transition frequencies through
first-order prefactors (1 - 2i hbar D T) and the complex lineshape
exponents; hbar enters as an explicit scan parameter. All frequencies are
rad/ps internally; construct Oscillator from cm^-1 and kelvin.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .errors import DomainError, NumericalError
from .lineshape import (Ladder, Pathway, exponent_nonrephasing,
                        exponent_rephasing, g_quantum, h_kernel,
                        quantum_exponent_third_order)
from .spectral_density import SpectralDensity
from .units import (angular_to_wavenumber, thermal_energy_angular,
                    wavenumber_to_angular)

__all__ = [
    "Oscillator", "Pathway", "BathLimit", "classical_linear",
    "classical_third_order", "third_order_grid", "dl_limit_response",
    "quantum_linear", "quantum_third_order", "peak_shift_estimate",
    "zero_crossing_time",
]


class BathLimit(enum.Enum):
    FAST_BATH = "fast_bath"    # homogeneous broadening, gamma -> inf
    SLOW_BATH = "slow_bath"    # inhomogeneous broadening, gamma -> 0


@dataclass(frozen=True)
class Oscillator:
    """System parameters, stored in rad/ps. Build with from_wavenumbers()."""

    omega0: float        # fundamental frequency
    delta: float         # anharmonicity
    mu: float            # transition-dipole amplitude
    kT: float            # thermal energy (rad/ps, hbar = 1)

    def __post_init__(self):
        if not self.omega0 > 0.0:
            raise DomainError("omega0 must be positive")
        if self.mu < 0.0:
            raise DomainError("mu must be >= 0")
        if not self.kT > 0.0:
            raise DomainError("temperature must be positive")
        # first-order treatment of the anharmonicity loses credibility here
        if abs(self.delta) * self.kT / self.omega0 ** 2 > 0.1:
            warnings.warn("anharmonic correction |delta|*kT/omega0^2 exceeds 0.1; "
                          "first-order expansion is questionable", stacklevel=2)

    @staticmethod
    def from_wavenumbers(omega0_cm: float, delta_cm: float,
                         temperature_K: float, mu: float = 1.0) -> "Oscillator":
        return Oscillator(omega0=wavenumber_to_angular(omega0_cm),
                          delta=wavenumber_to_angular(delta_cm),
                          mu=mu, kT=thermal_energy_angular(temperature_K))

    @property
    def beta(self) -> float:
        return 1.0 / self.kT


def _linear_bracket(osc: Oscillator, tau):
    w0 = osc.omega0
    return (np.sin(w0 * tau) / w0
            + 4.0 * osc.delta * osc.kT * tau * np.cos(w0 * tau) / w0 ** 2)


def classical_linear(osc: Oscillator, model: SpectralDensity, tau):
    """Classical linear response; real, vectorized over tau."""
    if np.any(np.asarray(tau) < 0.0):
        raise DomainError("tau must be >= 0")
    h = h_kernel(model, tau, osc.beta)
    return osc.mu ** 2 * _linear_bracket(osc, tau) * np.exp(-h)


def _phase_times(pathway: Pathway, t1, t3):
    return t1 + t3 if pathway is Pathway.NONREPHASING else t3 - t1


def classical_third_order(osc: Oscillator, model: SpectralDensity,
                          pathway: Pathway, t1, t2, t3,
                          include_cc: bool = False):
    """One third-order pathway at (t1, t2, t3); complex.

    include_cc adds the complex conjugate (for real time-domain exports);
    signals destined for one-sided Fourier transforms leave it off.
    """
    for t in (t1, t2, t3):
        if np.any(np.asarray(t) < 0.0):
            raise DomainError("times must be >= 0")
    if pathway is Pathway.NONREPHASING:
        g_exp = exponent_nonrephasing(model, t1, t2, t3, osc.beta)
    else:
        g_exp = exponent_rephasing(model, t1, t2, t3, osc.beta)
    amp = osc.mu ** 4 * osc.delta * t3 / osc.omega0 ** 2
    phase = np.exp(-1j * osc.omega0 * _phase_times(pathway, t1, t3))
    value = amp * phase * np.exp(-g_exp)
    return value + np.conj(value) if include_cc else value


def third_order_grid(osc: Oscillator, model: SpectralDensity, pathway: Pathway,
                     t1_axis: np.ndarray, t2: float, t3_axis: np.ndarray,
                     frame: float = None) -> np.ndarray:
    """Pathway signal on a (t1, t3) grid at fixed t2, in a rotating frame.

    Phases are evaluated at omega0 - frame (frame defaults to omega0, which
    leaves only the decay kernels and the anharmonic beat on the grid). The
    six kernel evaluations reduce to O(n) one-dimensional h calls when both
    axes share a step; the t1+t2+t3 combination is then indexed out of a
    single array.
    """
    if t2 < 0.0:
        raise DomainError("t2 must be >= 0")
    t1 = np.asarray(t1_axis, dtype=float)
    t3 = np.asarray(t3_axis, dtype=float)
    beta = osc.beta
    w_res = osc.omega0 - (osc.omega0 if frame is None else frame)

    h1 = h_kernel(model, t1, beta)
    h3 = h_kernel(model, t3, beta)
    h12 = h_kernel(model, t1 + t2, beta)
    h23 = h_kernel(model, t2 + t3, beta)
    h2 = h_kernel(model, t2, beta)

    dt1 = t1[1] - t1[0] if t1.size > 1 else 0.0
    dt3 = t3[1] - t3[0] if t3.size > 1 else 0.0
    uniform = (t1.size > 1 and t3.size > 1
               and np.allclose(np.diff(t1), dt1) and np.allclose(np.diff(t3), dt3)
               and abs(dt1 - dt3) < 1e-12 * max(dt1, dt3)
               and abs(t1[0]) < 1e-12 and abs(t3[0]) < 1e-12)
    if uniform:
        hsum_line = h_kernel(model, t2 + dt1 * np.arange(t1.size + t3.size - 1), beta)
        idx = np.arange(t1.size)[:, None] + np.arange(t3.size)[None, :]
        hsum = hsum_line[idx]
    else:
        hsum = h_kernel(model, t1[:, None] + t2 + t3[None, :], beta)

    if pathway is Pathway.NONREPHASING:
        g_exp = (h1[:, None] + h2 + h3[None, :] - h12[:, None] - h23[None, :] + hsum)
        phase = np.exp(-1j * w_res * t1)[:, None] * np.exp(-1j * w_res * t3)[None, :]
    else:
        g_exp = (h1[:, None] - h2 + h3[None, :] + h12[:, None] + h23[None, :] - hsum)
        phase = np.exp(1j * w_res * t1)[:, None] * np.exp(-1j * w_res * t3)[None, :]

    amp = osc.mu ** 4 * osc.delta / osc.omega0 ** 2
    return amp * t3[None, :] * phase * np.exp(-g_exp)


def dl_limit_response(osc: Oscillator, pathway: Pathway, limit: BathLimit,
                      lambda0_cm: float, gamma_cm: float, t1, t2, t3):
    """Closed-form fast/slow Drude-Lorentz limits; oracle for the full form.

    Fast bath: exp[-(2 lambda0/(beta gamma)) (t1 + t3)], t2-independent.
    Slow bath: Gaussian in (t1 + t3) (nonrephasing) or (t3 - t1) (rephasing).
    """
    for t in (t1, t2, t3):
        if np.any(np.asarray(t) < 0.0):
            raise DomainError("times must be >= 0")
    lam = wavenumber_to_angular(lambda0_cm)
    gam = wavenumber_to_angular(gamma_cm)
    if limit is BathLimit.FAST_BATH:
        decay = np.exp(-(2.0 * lam * osc.kT / gam) * (np.asarray(t1) + t3))
    elif pathway is Pathway.NONREPHASING:
        decay = np.exp(-lam * osc.kT * (np.asarray(t1) + t3) ** 2)
    else:
        decay = np.exp(-lam * osc.kT * (np.asarray(t3) - t1) ** 2)
    amp = osc.mu ** 4 * osc.delta * t3 / osc.omega0 ** 2
    phase = np.exp(-1j * osc.omega0 * _phase_times(pathway, t1, t3))
    return amp * phase * decay


def quantum_linear(osc: Oscillator, model: SpectralDensity, tau,
                   hbar_scan: float):
    """Quantum linear response (mu^2/w0)[sin + 2 hbar D tau cos] e^{-g}.

    The bracket coincides with w0 times the classical one exactly at
    hbar_scan = 2 kT / w0.
    """
    taus = np.atleast_1d(np.asarray(tau, dtype=float))
    if np.any(taus < 0.0):
        raise DomainError("tau must be >= 0")
    w0 = osc.omega0
    bracket = (np.sin(w0 * taus)
               + 2.0 * hbar_scan * osc.delta * taus * np.cos(w0 * taus))
    g = np.array([g_quantum(model, float(t), osc.beta, hbar_scan) for t in taus])
    out = (osc.mu ** 2 / w0) * bracket * np.exp(-g)
    return out if np.ndim(tau) else complex(out[0])


def quantum_third_order(osc: Oscillator, model: SpectralDensity,
                        pathway: Pathway, t1: float, t2: float, t3: float,
                        hbar_scan: float) -> complex:
    """Quantum third-order pathway: GB/SE term minus ESA term.

    -i mu^4/(2 hbar w0^2) * phase * [ (1 - 2i hbar D T_a) e^{-G_gbse}
                                      - (1 - 2i hbar D T_b) e^{-G_esa} ]
    with T_a = t3 +/- t1 and T_b = (t1 + 2 t3) / (2 t3 - t1) for the
    nonrephasing / rephasing pathways.
    """
    for t in (t1, t2, t3):
        if t < 0.0:
            raise DomainError("times must be >= 0")
    if not hbar_scan > 0.0:
        raise DomainError("hbar_scan must be positive")
    beta = osc.beta
    if pathway is Pathway.NONREPHASING:
        t_gbse, t_esa = t3 + t1, t1 + 2.0 * t3
    else:
        t_gbse, t_esa = t3 - t1, 2.0 * t3 - t1
    g_gbse = quantum_exponent_third_order(model, pathway, Ladder.GB_SE,
                                          t1, t2, t3, beta, hbar_scan)
    g_esa = quantum_exponent_third_order(model, pathway, Ladder.ESA,
                                         t1, t2, t3, beta, hbar_scan)
    hd = hbar_scan * osc.delta
    term = ((1.0 - 2.0j * hd * t_gbse) * np.exp(-g_gbse)
            - (1.0 - 2.0j * hd * t_esa) * np.exp(-g_esa))
    phase = np.exp(-1j * osc.omega0 * _phase_times(pathway, t1, t3))
    return complex(-1j * osc.mu ** 4 / (2.0 * hbar_scan * osc.omega0 ** 2)
                   * phase * term)


def peak_shift_estimate(osc: Oscillator) -> float:
    """First-order absorption peak shift 4 D kT / w0, reported in cm^-1."""
    return angular_to_wavenumber(4.0 * osc.delta * osc.kT / osc.omega0)


def zero_crossing_time(osc: Oscillator, model: SpectralDensity = None) -> float:
    """Smallest tau > 0 where the linear-response prefactor bracket vanishes.

    The decay factor e^{-h} is positive, so the crossing is independent of
    the bath model (accepted for interface symmetry). Found by bracketed
    root refinement on (0, 2 pi / w0].
    """
    w0 = osc.omega0
    if osc.delta == 0.0:
        return math.pi / w0

    def f(tau):
        return (np.sin(w0 * tau)
                + (4.0 * osc.delta * osc.kT / w0) * tau * np.cos(w0 * tau))

    grid = np.linspace(1e-9 / w0, 2.0 * math.pi / w0, 4096)
    vals = f(grid)
    sign_change = np.nonzero(np.sign(vals[:-1]) * np.sign(vals[1:]) < 0)[0]
    if sign_change.size == 0:
        raise NumericalError("no sign change of the response bracket in (0, 2pi/w0]")
    i = sign_change[0]
    return float(brentq(f, grid[i], grid[i + 1], xtol=1e-15, rtol=1e-14))
