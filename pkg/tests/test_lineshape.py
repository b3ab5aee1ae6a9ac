import math

import numpy as np
import pytest
from scipy.integrate import quad

from respkit.errors import DomainError, NumericalError
from respkit.lineshape import (KernelMethod, Pathway, Stability,
                               classify_stability, estimate_h_infinity,
                               exponent_combination_quadrature,
                               exponent_nonrephasing,
                               exponent_nonrephasing_direct,
                               exponent_rephasing, exponent_rephasing_direct,
                               h_closed_form, h_infinity, h_kernel,
                               h_kernel_quadrature)
from respkit.spectral_density import Kind, SpectralDensity, calibrate_coupling, sd_eval


def test_h_zero_time(all_models, beta):
    for model in all_models.values():
        assert h_kernel(model, 0.0, beta) == 0.0


def test_h_rejects_negative_time(dl_model, beta):
    with pytest.raises(DomainError):
        h_kernel(dl_model, -0.1, beta)


def test_h_zero_coupling(beta):
    model = SpectralDensity.drude_lorentz(0.0, 10.0)
    res = h_kernel_quadrature(model, 3.0, beta)
    assert res.value == 0.0 and res.est_error == 0.0
    assert res.method is KernelMethod.QUADRATURE


def test_drude_lorentz_long_time_rate(dl_model, beta):
    # h(tau)/tau -> 2*lambda0/(beta*gamma) for gamma*tau >> 1
    rate = 2.0 * dl_model.lambda0 / (beta * dl_model.gamma)
    tau = 400.0 / dl_model.gamma
    assert h_kernel(dl_model, tau, beta) / tau == pytest.approx(rate, rel=1e-2)


def test_closed_forms_match_quadrature_randomized(all_models, beta):
    rng = np.random.RandomState(3)
    for model in all_models.values():
        for tau in 10.0 ** rng.uniform(-3, 1, size=12):
            closed = h_closed_form(model, float(tau), beta)
            res = h_kernel_quadrature(model, float(tau), beta)
            assert closed == pytest.approx(res.value, rel=1e-8), \
                (model.label(), tau)
            assert res.est_error <= max(1e-12, 1e-8 * abs(res.value))


def test_quadrature_against_scipy(dl_model, power_models, beta):
    # independent check of the in-house integrator against QUADPACK
    for model in (dl_model, power_models[2]):
        for tau in (0.2, 1.7):
            hi = 3e3 * max(model.gamma, model.omega_c)
            ref, _ = quad(lambda w: 2.0 * sd_eval(model, w)
                          * (1.0 - math.cos(w * tau)) / (w ** 3 * beta),
                          1e-9, hi, limit=4000, epsabs=1e-13, epsrel=1e-11)
            assert h_kernel_quadrature(model, tau, beta).value == pytest.approx(
                ref, rel=1e-6)


def test_h_nondecreasing(all_models, beta):
    taus = np.linspace(0.0, 12.0, 400)
    for model in all_models.values():
        h = h_closed_form(model, taus, beta)
        assert np.all(np.diff(h) >= -1e-13)


def test_generic_n_quadrature_path(beta):
    model = calibrate_coupling(2.0, Kind.POWER_EXP_CUTOFF, n=2.5, omega_c_cm=10.0)
    assert not model.has_closed_form_kernel
    h1 = h_kernel(model, 1.0, beta)
    # bracketed between the neighboring integer-n kernels at equal E_r
    lo = h_closed_form(calibrate_coupling(2.0, Kind.POWER_EXP_CUTOFF, n=3,
                                          omega_c_cm=10.0), 1.0, beta)
    hi = h_closed_form(calibrate_coupling(2.0, Kind.POWER_EXP_CUTOFF, n=2,
                                          omega_c_cm=10.0), 1.0, beta)
    assert lo < h1 < hi


def test_exponent_t2_zero_identities(dl_model, beta):
    t1, t3 = 0.4, 0.9
    g_nr = exponent_nonrephasing(dl_model, t1, 0.0, t3, beta)
    assert g_nr == pytest.approx(h_kernel(dl_model, t1 + t3, beta), rel=1e-12)
    tau = 0.6
    g_r = exponent_rephasing(dl_model, tau, 0.0, tau, beta)
    expected = 4.0 * h_kernel(dl_model, tau, beta) - h_kernel(dl_model, 2 * tau, beta)
    assert g_r == pytest.approx(expected, rel=1e-12)


def test_exponents_zero_times(all_models, beta):
    for model in all_models.values():
        assert exponent_nonrephasing(model, 0.0, 0.0, 0.0, beta) == 0.0
        assert exponent_rephasing(model, 0.0, 0.0, 0.0, beta) == 0.0


def test_regrouping_identity_against_bracket_quadrature(all_models, beta):
    # 100 random draws across models: h-combination equals the direct
    # quadrature of the unregrouped six-cosine bracket
    rng = np.random.RandomState(5)
    draws = 0
    while draws < 100:
        label = rng.choice(sorted(all_models))
        model = all_models[label]
        t1, t2, t3 = 10.0 ** rng.uniform(-1.5, 0.8, size=3)
        for pathway, combo in ((Pathway.NONREPHASING, exponent_nonrephasing),
                               (Pathway.REPHASING, exponent_rephasing)):
            a = combo(model, t1, t2, t3, beta)
            q = exponent_combination_quadrature(model, pathway, t1, t2, t3, beta)
            assert a == pytest.approx(q.value, rel=1e-8, abs=1e-12), \
                (label, pathway, t1, t2, t3)
            draws += 1


def test_three_time_closed_forms(all_models, beta):
    # arctan/log-product, log-power, rational and exponential-relaxation
    # shapes against the h-built exponents
    rng = np.random.RandomState(9)
    for label, model in all_models.items():
        for _ in range(25):
            t1, t2, t3 = 10.0 ** rng.uniform(-2, 1, size=3)
            nr = exponent_nonrephasing(model, t1, t2, t3, beta)
            nr_direct = exponent_nonrephasing_direct(model, t1, t2, t3, beta)
            assert nr == pytest.approx(nr_direct, rel=1e-8, abs=1e-13), label
            r = exponent_rephasing(model, t1, t2, t3, beta)
            r_direct = exponent_rephasing_direct(model, t1, t2, t3, beta)
            assert r == pytest.approx(r_direct, rel=1e-8, abs=1e-13), label


def test_slow_bath_rephasing_diagonal_vanishes(beta):
    # gamma -> 0: the rephasing exponent on t1 = t3 loses all decay
    # (the residual is the O(gamma*t^3) correction, linear in gamma)
    t1 = t3 = 1.3
    prev = math.inf
    for gamma_cm in (1.0, 0.1, 0.01, 0.001):
        model = SpectralDensity.drude_lorentz(2.0, gamma_cm)
        g_r = exponent_rephasing(model, t1, 0.7, t3, beta)
        g_nr = exponent_nonrephasing(model, t1, 0.7, t3, beta)
        assert g_r < g_nr
        assert g_r < prev
        prev = g_r
    assert exponent_rephasing(SpectralDensity.drude_lorentz(2.0, 1e-5),
                              t1, 0.7, t3, beta) < 2e-4


def test_stability_verdicts(all_models, beta):
    expected = {"drude_lorentz": Stability.STABLE,
                "power_n1": Stability.STABLE,
                "power_n2": Stability.STABLE,
                "power_n3": Stability.DIVERGES_LINEARLY}
    for label, model in all_models.items():
        verdict = classify_stability(model, beta)
        assert verdict.classification is expected[label], label
        assert math.isfinite(verdict.h_infinity) == \
            (verdict.classification is Stability.DIVERGES_LINEARLY)


def test_h_infinity_n3_value(power_models, beta):
    m = power_models[3]
    expected = m.coupling / (3.0 * beta * m.omega_c)
    assert h_infinity(m, beta) == pytest.approx(expected, rel=1e-12)
    # closed-form kernel approaches the same limit
    assert h_closed_form(m, 1e6, beta) == pytest.approx(expected, rel=1e-9)


def test_zero_coupling_diverges(beta):
    model = SpectralDensity.drude_lorentz(0.0, 10.0)
    verdict = classify_stability(model, beta)
    assert verdict.classification is Stability.DIVERGES_LINEARLY
    assert verdict.h_infinity == 0.0


def test_amplitude_does_not_rescue_n3(power_models, beta):
    m = power_models[3]
    big = SpectralDensity(Kind.POWER_EXP_CUTOFF, n=3.0,
                          coupling=100.0 * m.coupling, omega_c=m.omega_c)
    assert classify_stability(big, beta).classification is \
        Stability.DIVERGES_LINEARLY


def test_numerical_limit_sampler_matches_closed(power_models, beta):
    m3 = power_models[3]
    est = estimate_h_infinity(m3, beta)
    assert est == pytest.approx(h_infinity(m3, beta), rel=1e-4)
    assert estimate_h_infinity(power_models[1], beta) == math.inf
    zero = SpectralDensity.drude_lorentz(0.0, 10.0)
    assert estimate_h_infinity(zero, beta) == 0.0
