"""Decay exponents multiplying every response function.

The classical single-time kernel is

    h(tau) = integral_0^inf dW 2*L(W)*(1 - cos(W*tau)) / (W^3 * beta)

and every third-order exponent is a six-term combination of h evaluated at
{t1, t2, t3, t1+t2, t2+t3, t1+t2+t3}. The complex quantum lineshape g(tau)
replaces 2*L/(W*beta) by hbar*L*coth(beta*hbar*W/2) in the real part and
adds the reorganization-shift imaginary part. Closed forms exist for the
Drude-Lorentz kernel and the power-law kernels with n in {1, 2, 3}; the
adaptive quadrature path is the oracle for all of them.

Note on the Ohmic (n = 1) closed form: evaluating the defining integral for
L(W) = A1*W*exp(-W/W_c) gives

    h(tau) = (2*A1/beta) * [tau*atan(W_c*tau) - ln(1 + W_c^2 tau^2)/(2*W_c)]

with the leading coefficient 2*A1/beta. The quadrature oracle pins this
normalization; see tests.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import quadrature
from .errors import DomainError, NumericalError
from .spectral_density import Kind, SpectralDensity, reorganization_energy, sd_eval

# Acceptance thresholds for quadrature-backed kernel values.
KERNEL_ABS_TOL = 1e-12
KERNEL_REL_TOL = 1e-8

# Sign patterns applied to h at (t1, t2, t3, t1+t2, t2+t3, t1+t2+t3).
_SIGNS_NR = (1.0, 1.0, 1.0, -1.0, -1.0, 1.0)
_SIGNS_R = (1.0, -1.0, 1.0, 1.0, 1.0, -1.0)


class Pathway(enum.Enum):
    NONREPHASING = "nonrephasing"
    REPHASING = "rephasing"


class Ladder(enum.Enum):
    """Diagram class of a quantum third-order term."""
    GB_SE = "gb_se"   # ground-state bleach + stimulated emission
    ESA = "esa"       # excited-state absorption


class KernelMethod(enum.Enum):
    CLOSED_FORM = "closed_form"
    QUADRATURE = "quadrature"


class Stability(enum.Enum):
    STABLE = "stable"
    DIVERGES_LINEARLY = "diverges_linearly"


@dataclass(frozen=True)
class KernelEval:
    value: float
    method: KernelMethod
    est_error: float


@dataclass(frozen=True)
class StabilityVerdict:
    classification: Stability
    h_infinity: float  # finite exactly when classification is DIVERGES_LINEARLY


# Coefficients of the sine brackets in the quantum third-order exponents,
# applied to s(W*t) = sin(W*t) - W*t at the six time arguments. The linear
# W-terms of the printed brackets are reproduced exactly because the
# coefficients of t in s sum to minus the printed linear combination.
_SINE_SIGNS = {
    (Pathway.NONREPHASING, Ladder.GB_SE): (-1.0, -1.0, -1.0, 1.0, 1.0, -1.0),
    (Pathway.NONREPHASING, Ladder.ESA): (-1.0, 1.0, -3.0, -1.0, -1.0, 1.0),
    (Pathway.REPHASING, Ladder.GB_SE): (-1.0, -1.0, -1.0, 1.0, -1.0, 1.0),
    (Pathway.REPHASING, Ladder.ESA): (-1.0, -1.0, -3.0, 1.0, -1.0, 1.0),
}


# ----------------------------------------------------------------------
# numerically stable scalar kernels

def one_minus_cos(x):
    """1 - cos(x) as 2*sin^2(x/2); exact relative accuracy near 0."""
    s = np.sin(0.5 * np.asarray(x))
    return 2.0 * s * s


def sin_minus_x(x):
    """sin(x) - x with a series branch below |x| = 0.02."""
    scalar = np.ndim(x) == 0
    x = np.atleast_1d(np.asarray(x, dtype=float))
    out = np.sin(x) - x
    small = np.abs(x) < 0.02
    if small.any():
        xs = x[small]
        x2 = xs * xs
        out[small] = -(xs * x2 / 6.0) * (1.0 - x2 / 20.0 + x2 * x2 / 840.0)
    return float(out[0]) if scalar else out


def coth(x):
    """Hyperbolic cotangent with the 1/x + x/3 series below 1e-4."""
    scalar = np.ndim(x) == 0
    x = np.atleast_1d(np.asarray(x, dtype=float))
    out = np.empty_like(x)
    small = np.abs(x) < 1e-4
    out[small] = 1.0 / x[small] + x[small] / 3.0
    out[~small] = 1.0 / np.tanh(x[~small])
    return float(out[0]) if scalar else out


def _phi_decay(x):
    """(x - 1 + exp(-x)) / x^2, the Drude-Lorentz kernel profile.

    phi(0) = 1/2 recovers the slow-bath Gaussian; phi -> 1/x gives the
    fast-bath linear growth.
    """
    scalar = np.ndim(x) == 0
    x = np.atleast_1d(np.asarray(x, dtype=float))
    out = np.empty_like(x)
    small = np.abs(x) < 1e-2
    xs = x[small]
    out[small] = 0.5 - xs / 6.0 + xs ** 2 / 24.0 - xs ** 3 / 120.0 + xs ** 4 / 720.0
    xl = x[~small]
    out[~small] = (xl - 1.0 + np.exp(-xl)) / (xl * xl)
    return float(out[0]) if scalar else out


def _check_times(*times):
    for t in times:
        if np.any(np.asarray(t) < 0.0):
            raise DomainError("time arguments must be >= 0")


# ----------------------------------------------------------------------
# closed-form kernels

def h_closed_form(model: SpectralDensity, tau, beta: float):
    """Closed-form h(tau); raises DomainError when none exists."""
    _check_times(tau)
    t = np.asarray(tau, dtype=float)
    if model.kind is Kind.DRUDE_LORENTZ:
        out = (2.0 * model.lambda0 / beta) * t * t * _phi_decay(model.gamma * t)
    elif model.has_closed_form_kernel:
        n, wc, a = int(model.n), model.omega_c, model.coupling
        x = wc * t
        if n == 1:
            out = (2.0 * a / beta) * (t * np.arctan(x) - np.log1p(x * x) / (2.0 * wc))
        elif n == 2:
            out = (a / (2.0 * beta * wc)) * np.log1p(x * x)
        else:
            out = (a / (3.0 * beta * wc)) * x * x / (1.0 + x * x)
    else:
        raise DomainError(f"no closed-form kernel for {model}")
    return out if out.ndim else float(out)


def h_kernel(model: SpectralDensity, tau, beta: float):
    """h(tau) >= 0 by the best available route (closed form, else quadrature)."""
    if model.has_closed_form_kernel:
        return h_closed_form(model, tau, beta)
    _check_times(tau)
    t = np.asarray(tau, dtype=float)
    if t.ndim == 0:
        return h_kernel_quadrature(model, float(t), beta).value
    flat = np.array([h_kernel_quadrature(model, float(ti), beta).value
                     for ti in t.ravel()])
    return flat.reshape(t.shape)


# ----------------------------------------------------------------------
# quadrature kernels and tail handling

def _omega_hi(model: SpectralDensity, osc_time: float) -> float:
    """Truncation frequency; tail contributions beyond it are restored
    analytically (mean parts) or charged to est_error (oscillatory parts).

    The Drude-Lorentz tail decays only algebraically, so the cutoff scales
    like 1/osc_time at short times; the oscillation count X*osc_time, and
    with it the cost, stays bounded.
    """
    if model.kind is Kind.DRUDE_LORENTZ:
        return max(2.0e3 * model.gamma, 2.0e3 / osc_time)
    return 50.0 * model.omega_c


def _osc_tail_factor(x: float, osc_time: float) -> float:
    """Integration-by-parts attenuation of an oscillatory tail beyond x."""
    return min(1.0, 2.0 / (x * osc_time))


def _tail_sd_over_w3(model: SpectralDensity, x: float, beta: float) -> float:
    """Upper bound / estimate of integral_x^inf 2*L/(beta*W^3) dW."""
    if model.kind is Kind.DRUDE_LORENTZ:
        return 4.0 * model.lambda0 * model.gamma / (3.0 * math.pi * beta * x ** 3)
    lam = sd_eval(model, x)
    return 2.0 * lam * model.omega_c / (beta * x ** 3)


def _tail_sd_over_w2(model: SpectralDensity, x: float) -> float:
    """Bound on integral_x^inf L/W^2 dW."""
    if model.kind is Kind.DRUDE_LORENTZ:
        return model.lambda0 * model.gamma / (math.pi * x * x)
    return sd_eval(model, x) * model.omega_c / (x * x)


def _tail_sd_over_w(model: SpectralDensity, x: float) -> float:
    """Exact (DL) or bounding (power) tail of integral_x^inf L/W dW."""
    if model.kind is Kind.DRUDE_LORENTZ:
        return (2.0 * model.lambda0 / math.pi) * (math.pi / 2.0 - math.atan(x / model.gamma))
    return sd_eval(model, x) * 2.0 * model.omega_c / x


def _accept(value, err, abs_tol, rel_tol, what):
    if err > max(abs_tol, rel_tol * abs(value)):
        raise NumericalError(
            f"{what}: estimated error {err:.3e} exceeds tolerance",
            partial=value, est_error=err)


def h_kernel_quadrature(model: SpectralDensity, tau: float, beta: float, *,
                        abs_tol: float = KERNEL_ABS_TOL,
                        rel_tol: float = KERNEL_REL_TOL) -> KernelEval:
    """Adaptive quadrature of the defining h integrand; oracle for closed forms."""
    _check_times(tau)
    if tau == 0.0 or model.is_zero_coupling:
        return KernelEval(0.0, KernelMethod.QUADRATURE, 0.0)
    hi = _omega_hi(model, tau)

    def f(w):
        return 2.0 * sd_eval(model, w) * one_minus_cos(w * tau) / (w ** 3 * beta)

    res = quadrature.integrate_oscillatory(f, 0.0, hi, tau,
                                           rel_tol=min(rel_tol, 1e-10), abs_tol=abs_tol)
    tail = _tail_sd_over_w3(model, hi, beta)
    value = float(res.value.real) + tail          # mean of (1 - cos) is 1
    err = res.error + tail * _osc_tail_factor(hi, tau)
    _accept(value, err, abs_tol, rel_tol, "h kernel quadrature")
    return KernelEval(value, KernelMethod.QUADRATURE, err)


def _six_times(t1, t2, t3):
    return (t1, t2, t3, t1 + t2, t2 + t3, t1 + t2 + t3)


def exponent_nonrephasing(model: SpectralDensity, t1, t2, t3, beta: float):
    """G_NR = h(t1)+h(t2)+h(t3)-h(t1+t2)-h(t2+t3)+h(t1+t2+t3)."""
    _check_times(t1, t2, t3)
    times = _six_times(t1, t2, t3)
    return sum(s * h_kernel(model, t, beta) for s, t in zip(_SIGNS_NR, times))


def exponent_rephasing(model: SpectralDensity, t1, t2, t3, beta: float):
    """G_R = h(t1)-h(t2)+h(t3)+h(t1+t2)+h(t2+t3)-h(t1+t2+t3)."""
    _check_times(t1, t2, t3)
    times = _six_times(t1, t2, t3)
    return sum(s * h_kernel(model, t, beta) for s, t in zip(_SIGNS_R, times))


def exponent_combination_quadrature(model: SpectralDensity, pathway: Pathway,
                                    t1: float, t2: float, t3: float,
                                    beta: float, *,
                                    abs_tol: float = KERNEL_ABS_TOL,
                                    rel_tol: float = KERNEL_REL_TOL) -> KernelEval:
    """Direct quadrature of the six-cosine bracket, without regrouping into h.

    Independent oracle for exponent_nonrephasing / exponent_rephasing: the
    whole bracket is evaluated inside a single integrand.
    """
    _check_times(t1, t2, t3)
    signs = _SIGNS_NR if pathway is Pathway.NONREPHASING else _SIGNS_R
    times = _six_times(t1, t2, t3)
    if model.is_zero_coupling or all(t == 0.0 for t in times):
        return KernelEval(0.0, KernelMethod.QUADRATURE, 0.0)
    t_min = min(t for t in times if t > 0.0)
    hi = _omega_hi(model, t_min)

    def f(w):
        bracket = sum(s * one_minus_cos(w * t) for s, t in zip(signs, times))
        return 2.0 * sd_eval(model, w) * bracket / (w ** 3 * beta)

    res = quadrature.integrate_oscillatory(f, 0.0, hi, max(times),
                                           rel_tol=min(rel_tol, 1e-10), abs_tol=abs_tol)
    tail_unit = _tail_sd_over_w3(model, hi, beta)
    mean = sum(signs)                              # each (1 - cos) averages to 1
    value = float(res.value.real) + mean * tail_unit
    err = res.error + 6.0 * tail_unit * _osc_tail_factor(hi, t_min)
    _accept(value, err, abs_tol, rel_tol, "exponent combination quadrature")
    return KernelEval(value, KernelMethod.QUADRATURE, err)


# ----------------------------------------------------------------------
# closed three-time exponents (independent of h_kernel)

def _dl_decay_term(t, gamma):
    # t - (1 - exp(-gamma t))/gamma, via expm1 for small gamma*t
    return t + np.expm1(-gamma * t) / gamma


def exponent_nonrephasing_direct(model, t1, t2, t3, beta):
    return _exponent_direct(model, Pathway.NONREPHASING, t1, t2, t3, beta)


def exponent_rephasing_direct(model, t1, t2, t3, beta):
    return _exponent_direct(model, Pathway.REPHASING, t1, t2, t3, beta)


def _exponent_direct(model: SpectralDensity, pathway: Pathway,
                     t1, t2, t3, beta: float):
    """Three-time exponents in their printed closed shape (product/power forms).

    For n = 1 the arctan sum and a single log of the (1 + W_c^2 t^2) product
    ratio are combined; for n = 2 only the product ratio appears; for n = 3 a
    rational sum; for Drude-Lorentz the explicit exponential-relaxation sum.
    """
    _check_times(t1, t2, t3)
    nr = pathway is Pathway.NONREPHASING
    signs = _SIGNS_NR if nr else _SIGNS_R
    times = _six_times(t1, t2, t3)
    if model.kind is Kind.DRUDE_LORENTZ:
        g = model.gamma
        total = sum(s * _dl_decay_term(t, g) for s, t in zip(signs, times))
        return (2.0 * model.lambda0 / (beta * g)) * total
    if not model.has_closed_form_kernel:
        raise DomainError("direct three-time exponents need DL or n in {1,2,3}")
    n, wc, a = int(model.n), model.omega_c, model.coupling
    xsq = [(wc * t) ** 2 for t in times]
    log_ratio = sum(s * np.log1p(x) for s, x in zip(signs, xsq))
    if n == 1:
        atan_sum = sum(s * t * np.arctan(wc * t) for s, t in zip(signs, times))
        return (2.0 * a / beta) * atan_sum - (a / (beta * wc)) * log_ratio
    if n == 2:
        return (a / (2.0 * beta * wc)) * log_ratio
    rational = sum(s * x / (1.0 + x) for s, x in zip(signs, xsq))
    return (a / (3.0 * beta * wc)) * rational


# ----------------------------------------------------------------------
# quantum lineshape

def g_quantum(model: SpectralDensity, tau: float, beta: float,
              hbar_scan: float, *, abs_tol: float = 1e-12,
              rel_tol: float = 1e-8) -> complex:
    """Complex quantum lineshape exponent; the decay factor is exp(-g).

    g = integral C''(W)/W^2 [ (1-cos(W tau)) coth(beta hbar W / 2)
                              + i (sin(W tau) - W tau) ] dW,  C'' = hbar*L.
    """
    _check_times(tau)
    if not hbar_scan > 0.0:
        raise DomainError("hbar_scan must be positive")
    if tau == 0.0 or model.is_zero_coupling:
        return 0.0 + 0.0j

    half_bh = 0.5 * beta * hbar_scan

    def f(w):
        c = hbar_scan * sd_eval(model, w) / (w * w)
        return c * (one_minus_cos(w * tau) * coth(half_bh * w)
                    + 1j * sin_minus_x(w * tau))

    # s(x) = sin x - x carries linear coefficient -tau; the truncated
    # W*tau part of the bracket integrates to tau times the tail of
    # integral L/W, restored here exactly.
    hi = _omega_hi(model, tau)
    res = quadrature.integrate_oscillatory(f, 0.0, hi, tau,
                                           rel_tol=min(rel_tol, 1e-9),
                                           abs_tol=abs_tol)
    tail1 = _tail_sd_over_w(model, hi)
    tail2 = _tail_sd_over_w2(model, hi)
    value = complex(res.value) + hbar_scan * (tail2 - 1j * tau * tail1)
    err = res.error + hbar_scan * 4.0 * tail2 * _osc_tail_factor(hi, tau)
    if err > max(abs_tol, rel_tol * abs(value)):
        raise NumericalError("quantum lineshape quadrature did not converge",
                             partial=value, est_error=err)
    return value


def quantum_exponent_third_order(model: SpectralDensity, pathway: Pathway,
                                 ladder: Ladder, t1: float, t2: float, t3: float,
                                 beta: float, hbar_scan: float, *,
                                 abs_tol: float = 1e-12,
                                 rel_tol: float = 1e-8) -> complex:
    """Complex exponent of one pathway/ladder term; decay factor exp(-value).

    Real part: coth-weighted cosine combination (same sign pattern as the
    classical exponent). Imaginary part: minus the pathway-specific
    sine/linear bracket, so that exp(-value) reproduces the printed factor
    exp(-Re + i*bracket). The hbar -> 0 limit of the real part is the
    classical exponent.
    """
    _check_times(t1, t2, t3)
    if not hbar_scan > 0.0:
        raise DomainError("hbar_scan must be positive")
    times = _six_times(t1, t2, t3)
    if model.is_zero_coupling or all(t == 0.0 for t in times):
        return 0.0 + 0.0j
    cos_signs = _SIGNS_NR if pathway is Pathway.NONREPHASING else _SIGNS_R
    sin_signs = _SINE_SIGNS[(pathway, ladder)]
    # W-linear coefficient of the printed bracket equals -sum(sin_signs * t).
    lin = -sum(s * t for s, t in zip(sin_signs, times))
    half_bh = 0.5 * beta * hbar_scan

    def f(w):
        c = hbar_scan * sd_eval(model, w) / (w * w)
        cos_part = sum(s * one_minus_cos(w * t) for s, t in zip(cos_signs, times))
        sin_part = sum(s * sin_minus_x(w * t) for s, t in zip(sin_signs, times))
        return c * (coth(half_bh * w) * cos_part - 1j * sin_part)

    t_min = min(t for t in times if t > 0.0)
    hi = _omega_hi(model, t_min)
    res = quadrature.integrate_oscillatory(f, 0.0, hi, max(times),
                                           rel_tol=min(rel_tol, 1e-9),
                                           abs_tol=abs_tol)
    tail1 = _tail_sd_over_w(model, hi)
    tail2 = _tail_sd_over_w2(model, hi)
    # -i * bracket tail: bracket's W-linear part integrates to lin * E_r tail.
    value = complex(res.value) + hbar_scan * (2.0 * tail2 - 1j * lin * tail1)
    err = res.error + hbar_scan * 14.0 * tail2 * _osc_tail_factor(hi, t_min)
    if err > max(abs_tol, rel_tol * abs(value)):
        raise NumericalError("quantum third-order exponent did not converge",
                             partial=value, est_error=err)
    return value


# ----------------------------------------------------------------------
# long-time stability

def h_infinity(model: SpectralDensity, beta: float) -> float:
    """lim_{tau->inf} h(tau): finite exactly when low frequencies are absent.

    The oscillatory part of the integrand averages away, leaving
    integral 2*L/(beta*W^3) dW, which converges iff L vanishes faster than
    W^2 at the origin: +inf for Drude-Lorentz and power-law n <= 2, and
    2*A_n*Gamma(n-2) / (Gamma(n+1)*beta*W_c) for n > 2 (A_3/(3*beta*W_c)
    at n = 3).
    """
    if model.is_zero_coupling:
        return 0.0
    if model.kind is Kind.DRUDE_LORENTZ:
        return math.inf
    n = model.n
    if n <= 2.0:
        return math.inf
    return (2.0 * model.coupling * math.gamma(n - 2.0)
            / (math.gamma(n + 1.0) * beta * model.omega_c))


def estimate_h_infinity(model: SpectralDensity, beta: float, *,
                        tau0: float = 0.8, k_max: int = 14,
                        rel_tol: float = 1e-6,
                        saturation: float = 50.0) -> float:
    """Numerical limit of h by sampling at tau = 2^k * tau0.

    Returns the converged value, or +inf once h exceeds ``saturation``
    (exp(-h) is then zero to double precision) or keeps growing at the
    horizon. Raises NumericalError when the samples are inconclusive.
    """
    prev = h_kernel(model, tau0, beta)
    for k in range(1, k_max + 1):
        cur = h_kernel(model, tau0 * 2.0 ** k, beta)
        if abs(cur - prev) <= rel_tol * max(abs(cur), 1e-30):
            return float(cur)
        prev = cur
        if cur > saturation:
            return math.inf
    raise NumericalError(
        "h(tau) limit inconclusive; increase the tau horizon (k_max)",
        partial=float(prev))


def classify_stability(model: SpectralDensity, beta: float) -> StabilityVerdict:
    """DivergesLinearly iff h(inf) is finite: exp(-h) then saturates and the
    anharmonic tau3-linear prefactor grows unchecked."""
    h_inf = h_infinity(model, beta)
    cls = Stability.DIVERGES_LINEARLY if math.isfinite(h_inf) else Stability.STABLE
    return StabilityVerdict(cls, h_inf)
