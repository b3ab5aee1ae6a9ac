"""Frequency-domain observables: 1D absorption, 2D surfaces, scalar metrics.

One-sided transforms with trapezoidal end weights and zero padding:

    I(w)            = Im sum_j w_j e^{+i w tau_j} R1(tau_j) dt
    S(w1, t2, w3)   = sum_{j,k} w_j w_k K1(w1 tau_j) e^{+i w3 tau_k}
                      R(tau_j, t2, tau_k) dt1 dt3

where the w1 kernel K1 is e^{+i w1 tau1} for the nonrephasing pathway and
e^{-i w1 tau1} for the rephasing one, so that both surfaces peak in the
(+w1, +w3) quadrant near (w0, w0) and superpose in the correlation map

    S_corr = Im[ S_NR + S_R ].

Signals may be sampled in a rotating frame; the frame shift is reapplied to
the reported absolute frequency axes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .lineshape import Pathway
from .units import angular_to_wavenumber, wavenumber_to_angular

__all__ = [
    "TimeGrid", "Signal2D", "Spectrum1D", "Spectrum2D", "SpectrumKind",
    "absorption_spectrum", "spectrum_2d", "correlation_spectrum",
    "center_line_slope", "peak_metrics", "PeakMetrics",
]


@dataclass(frozen=True)
class TimeGrid:
    """Uniform time axis starting at zero: dt (ps), n samples, rotating-frame
    shift in cm^-1 (0 means lab frame)."""

    dt: float
    n: int
    frame_cm: float = 0.0

    def __post_init__(self):
        if not self.dt > 0.0:
            raise DomainError("dt must be positive")
        if self.n < 16:
            raise DomainError("need at least 16 samples")
        if self.n & (self.n - 1):
            raise DomainError("n must be a power of two for the FFT paths")

    def times(self) -> np.ndarray:
        return self.dt * np.arange(self.n)

    @property
    def frame(self) -> float:
        return wavenumber_to_angular(self.frame_cm)

    @property
    def nyquist(self) -> float:
        """Largest resolvable |angular frequency| offset from the frame."""
        return math.pi / self.dt


@dataclass(frozen=True)
class Signal2D:
    """Complex pathway signal on a tau1 x tau3 grid at fixed t2."""

    values: np.ndarray
    t2: float
    grid1: TimeGrid
    grid3: TimeGrid
    pathway: Pathway

    def __post_init__(self):
        if self.values.shape != (self.grid1.n, self.grid3.n):
            raise DomainError("signal shape does not match its grids")
        if self.t2 < 0.0:
            raise DomainError("t2 must be >= 0")


@dataclass(frozen=True)
class Spectrum1D:
    omega_cm: np.ndarray
    intensity: np.ndarray
    meta: dict = field(default_factory=dict)


class SpectrumKind:
    NR = "nonrephasing"
    R = "rephasing"
    CORRELATION = "correlation"


@dataclass(frozen=True)
class Spectrum2D:
    """Surface over (w1, w3); complex for NR/R, real for the correlation map."""

    omega1_cm: np.ndarray
    omega3_cm: np.ndarray
    values: np.ndarray
    t2: float
    kind: str
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if np.any(np.diff(self.omega1_cm) <= 0) or np.any(np.diff(self.omega3_cm) <= 0):
            raise DomainError("frequency axes must be strictly increasing")
        if not np.all(np.isfinite(self.values)):
            raise DomainError("spectrum values must be finite")


def _trapezoid_weights(n: int) -> np.ndarray:
    w = np.ones(n)
    w[0] = w[-1] = 0.5
    return w


def _axis_and_transform(z: np.ndarray, dt: float, pad: int, conj_kernel: bool):
    """Shifted frequency axis (rad/ps) and one-sided transform along axis 0.

    The kernel is e^{+i w tau} (conj_kernel False) or e^{-i w tau}; either
    way the returned axis is the signed frequency at which a component
    e^{-i v tau} (False) / e^{+i v tau} (True) resonates at w = +v.
    """
    n = z.shape[0]
    nfft = pad * n
    zp = np.zeros((nfft,) + z.shape[1:], dtype=complex)
    zp[:n] = z
    if conj_kernel:
        spec = np.fft.fft(zp, axis=0)
    else:
        spec = nfft * np.fft.ifft(zp, axis=0)
    axis = 2.0 * math.pi * np.fft.fftfreq(nfft, dt)
    order = np.argsort(axis)
    return axis[order], np.take(spec, order, axis=0) * dt


def absorption_spectrum(response: np.ndarray, grid: TimeGrid,
                        window_cm: tuple = None, pad: int = 4) -> Spectrum1D:
    """I(w) = Im of the one-sided transform of a sampled linear response.

    window_cm selects the reported absolute frequency range and must lie
    within the Nyquist band of the grid.
    """
    response = np.asarray(response)
    if response.shape != (grid.n,):
        raise DomainError("response length does not match grid")
    if pad < 4:
        raise DomainError("zero-padding factor must be >= 4")
    frame = grid.frame
    if window_cm is None:
        lo, hi = frame, frame + grid.nyquist * 0.95
    else:
        lo, hi = (wavenumber_to_angular(w) for w in window_cm)
        if hi <= lo:
            raise DomainError("empty frequency window")
        band = max(abs(lo - frame), abs(hi - frame))
        if band >= grid.nyquist:
            raise DomainError("window outside the Nyquist range of the grid")

    z = response * _trapezoid_weights(grid.n)
    axis, spec = _axis_and_transform(z, grid.dt, pad, conj_kernel=False)
    omega = axis + frame
    mask = (omega >= lo) & (omega <= hi)
    return Spectrum1D(angular_to_wavenumber(omega[mask]), spec[mask].imag,
                      meta={"dt_ps": grid.dt, "n": grid.n, "pad": pad,
                            "frame_cm": grid.frame_cm})


def apodize_cos2(values: np.ndarray, fraction: float = 0.1) -> np.ndarray:
    """Cosine-squared half window over the final fraction of each time axis."""
    out = np.array(values, dtype=complex)
    for axis in range(out.ndim):
        n = out.shape[axis]
        m = max(int(round(fraction * n)), 1)
        w = np.ones(n)
        x = np.arange(m) / m
        w[n - m:] = np.cos(0.5 * math.pi * x) ** 2
        shape = [1] * out.ndim
        shape[axis] = n
        out *= w.reshape(shape)
    return out


def spectrum_2d(signal: Signal2D, pad: int = 4, apodize: bool = False) -> Spectrum2D:
    """Double one-sided transform of a pathway signal; complex surface.

    The w1 kernel sign follows the pathway (conjugated for rephasing) so
    that both pathways land in the (+w1, +w3) quadrant.
    """
    if pad < 4:
        raise DomainError("zero-padding factor must be >= 4")
    g1, g3 = signal.grid1, signal.grid3
    z = signal.values * np.outer(_trapezoid_weights(g1.n), _trapezoid_weights(g3.n))
    if apodize:
        z = apodize_cos2(z)
    conj1 = signal.pathway is Pathway.REPHASING
    ax1, z1 = _axis_and_transform(z, g1.dt, pad, conj_kernel=conj1)
    ax3, z13 = _axis_and_transform(z1.T, g3.dt, pad, conj_kernel=False)
    values = z13.T  # indexed (w1, w3)
    omega1 = angular_to_wavenumber(ax1 + g1.frame)
    omega3 = angular_to_wavenumber(ax3 + g3.frame)
    meta = {"t2_ps": signal.t2, "pad": pad, "apodized": apodize,
            "frame1_cm": g1.frame_cm, "frame3_cm": g3.frame_cm,
            "dt1_ps": g1.dt, "dt3_ps": g3.dt}
    kind = SpectrumKind.NR if signal.pathway is Pathway.NONREPHASING else SpectrumKind.R
    return Spectrum2D(omega1, omega3, values, signal.t2, kind, meta)


def correlation_spectrum(nr: Spectrum2D, r: Spectrum2D) -> Spectrum2D:
    """Im[S_NR + S_R] on identical axes and population time."""
    if (nr.omega1_cm.shape != r.omega1_cm.shape
            or not np.allclose(nr.omega1_cm, r.omega1_cm)
            or not np.allclose(nr.omega3_cm, r.omega3_cm)):
        raise DomainError("correlation inputs must share frequency axes")
    if abs(nr.t2 - r.t2) > 1e-12:
        raise DomainError("correlation inputs must share t2")
    values = np.imag(nr.values + r.values)
    meta = dict(nr.meta)
    return Spectrum2D(nr.omega1_cm, nr.omega3_cm, values, nr.t2,
                      SpectrumKind.CORRELATION, meta)


def window_slice(spec: Spectrum2D, window) -> tuple:
    (w1lo, w1hi), (w3lo, w3hi) = window
    m1 = (spec.omega1_cm >= w1lo) & (spec.omega1_cm <= w1hi)
    m3 = (spec.omega3_cm >= w3lo) & (spec.omega3_cm <= w3hi)
    return m1, m3


def _parabolic_offset(ym, y0, yp) -> float:
    denom = ym - 2.0 * y0 + yp
    if denom == 0.0:
        return 0.0
    return 0.5 * (ym - yp) / denom


def center_line_slope(spec: Spectrum2D, window) -> float:
    """Least-squares slope d(w3*)/d(w1) of the ridge of extremal amplitude.

    window = ((w1_lo, w1_hi), (w3_lo, w3_hi)) in cm^-1 and should contain a
    single lobe (the bleach lobe for correlation maps). The extremal w3 per
    w1 column is refined parabolically; columns whose extremum touches the
    window edge are discarded. Invariant under amplitude rescaling.
    """
    m1, m3 = window_slice(spec, window)
    if m1.sum() < 3 or m3.sum() < 3:
        raise DomainError("window too small for a center-line fit")
    sub = np.real(spec.values)[np.ix_(m1, m3)]
    w1 = spec.omega1_cm[m1]
    w3 = spec.omega3_cm[m3]
    sign = 1.0 if sub.max() >= -sub.min() else -1.0
    ridge_w1, ridge_w3 = [], []
    dw3 = w3[1] - w3[0]
    for i in range(w1.size):
        col = sign * sub[i]
        j = int(np.argmax(col))
        if j == 0 or j == w3.size - 1:
            continue
        ridge_w1.append(w1[i])
        ridge_w3.append(w3[j] + _parabolic_offset(col[j - 1], col[j], col[j + 1]) * dw3)
    if len(ridge_w1) < 3:
        raise DomainError("fewer than 3 usable columns in the window")
    slope = np.polyfit(ridge_w1, ridge_w3, 1)[0]
    return float(slope)


@dataclass(frozen=True)
class PeakMetrics:
    position_cm: float
    fwhm_cm: float
    height: float


def peak_metrics(spec: Spectrum1D) -> PeakMetrics:
    """Peak position via parabolic interpolation, FWHM via half-max crossings."""
    y = np.asarray(spec.intensity, dtype=float)
    x = np.asarray(spec.omega_cm, dtype=float)
    i = int(np.argmax(y))
    if i == 0 or i == y.size - 1 or y[i] <= 0.0:
        raise DomainError("no interior peak in the spectrum window")
    off = _parabolic_offset(y[i - 1], y[i], y[i + 1])
    dx = x[1] - x[0]
    pos = x[i] + off * dx
    height = y[i] - 0.25 * (y[i - 1] - y[i + 1]) * off
    half = 0.5 * height

    left = np.nonzero(y[:i] < half)[0]
    right = np.nonzero(y[i:] < half)[0]
    if left.size == 0 or right.size == 0:
        raise DomainError("half-maximum crossings not contained in the window")
    l = left[-1]
    xl = x[l] + (half - y[l]) / (y[l + 1] - y[l]) * dx
    r = i + right[0]
    xr = x[r - 1] + (half - y[r - 1]) / (y[r] - y[r - 1]) * dx
    return PeakMetrics(float(pos), float(xr - xl), float(height))
