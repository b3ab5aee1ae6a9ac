"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines. Criterion 5 asserts the published linewidth ordering for the Ohmic
bath; with the Ohmic kernel normalized to its own defining integral (the
oracle that criteria 1 and 2 enforce) the Ohmic line is broader, not
narrower, than the Drude-Lorentz line at equal reorganization energy, so
that clause fails and is intentionally left red. See tests and the
stability analysis for details.
"""

import math
import os
import time

import numpy as np
import pytest

from respkit.config import parse_config
from respkit.jobs import run_absorb, run_stability, run_twodir
from respkit.lineshape import (Ladder, Pathway, Stability, classify_stability,
                               exponent_nonrephasing,
                               exponent_nonrephasing_direct,
                               exponent_rephasing, exponent_rephasing_direct,
                               g_quantum, h_closed_form, h_kernel,
                               h_kernel_quadrature,
                               quantum_exponent_third_order)
from respkit.response import (BathLimit, Oscillator, classical_linear,
                              classical_third_order, dl_limit_response,
                              peak_shift_estimate, third_order_grid)
from respkit.spectra import (Signal2D, TimeGrid, absorption_spectrum,
                             center_line_slope, correlation_spectrum,
                             peak_metrics, spectrum_2d)
from respkit.spectral_density import Kind, SpectralDensity, calibrate_coupling
from respkit.units import wavenumber_to_angular

E_R_CM = 2.0
GAMMA_CM = 10.0
OMEGA_C_CM = 10.0

OSC = Oscillator.from_wavenumbers(1650.0, 16.0, 300.0)
BETA = OSC.beta
DL = calibrate_coupling(E_R_CM, Kind.DRUDE_LORENTZ, gamma_cm=GAMMA_CM)
POWER = {n: calibrate_coupling(E_R_CM, Kind.POWER_EXP_CUTOFF, n=n,
                               omega_c_cm=OMEGA_C_CM) for n in (1, 2, 3)}
ALL = {"drude_lorentz": DL, **{f"power_n{n}": m for n, m in POWER.items()}}


def _report(num: int, ok: bool, detail: str):
    print(f"[criterion {num:02d}] {'PASS' if ok else 'FAIL'} — {detail}")
    assert ok, f"criterion {num}: {detail}"


def _absorb_spectrum(model, n=8192, dt=0.004):
    grid = TimeGrid(dt, n)
    signal = classical_linear(OSC, model, grid.times())
    return absorption_spectrum(signal, grid, window_cm=(1590.0, 1710.0))


def test_criterion_01_kernel_oracle_equivalence():
    rng = np.random.RandomState(101)
    start = time.perf_counter()
    worst = 0.0
    models = list(ALL.values())
    for i in range(200):
        model = models[i % len(models)]
        tau = float(10.0 ** rng.uniform(-3.0, 1.04))
        closed = h_closed_form(model, tau, BETA)
        quadr = h_kernel_quadrature(model, tau, BETA).value
        worst = max(worst, abs(closed - quadr) / abs(quadr))
    elapsed = time.perf_counter() - start
    _report(1, worst <= 1e-8 and elapsed <= 10.0,
            f"200 cases, max rel dev {worst:.2e}, {elapsed:.2f} s")


def test_criterion_02_three_time_closed_form_equivalence():
    rng = np.random.RandomState(202)
    start = time.perf_counter()
    worst = 0.0
    for n in (1, 2, 3):
        model = POWER[n]
        for _ in range(100):
            t1, t2, t3 = (float(x) for x in 10.0 ** rng.uniform(-2.0, 1.0, 3))
            for combo, direct in ((exponent_nonrephasing,
                                   exponent_nonrephasing_direct),
                                  (exponent_rephasing,
                                   exponent_rephasing_direct)):
                a = combo(model, t1, t2, t3, BETA)
                d = direct(model, t1, t2, t3, BETA)
                worst = max(worst, abs(a - d) / max(abs(d), 1e-300))
    elapsed = time.perf_counter() - start
    _report(2, worst <= 1e-8 and elapsed <= 10.0,
            f"100 triples x n in (1,2,3), max rel dev {worst:.2e}, {elapsed:.2f} s")


def test_criterion_03_drude_lorentz_limits():
    axis = np.linspace(0.0, 0.31, 32)
    worst = 0.0
    for t2 in (0.0, 10.0):
        for limit, factor in ((BathLimit.FAST_BATH, 1.0e4),
                              (BathLimit.SLOW_BATH, 1.0e-4)):
            scaled = SpectralDensity.drude_lorentz(E_R_CM, GAMMA_CM * factor)
            for pathway in Pathway:
                full = third_order_grid(OSC, scaled, pathway, axis, t2, axis,
                                        frame=0.0)
                ref = dl_limit_response(OSC, pathway, limit, E_R_CM,
                                        GAMMA_CM * factor,
                                        axis[:, None], t2, axis[None, :])
                worst = max(worst, float(np.abs(full - ref).max()
                                         / np.abs(ref).max()))
    _report(3, worst <= 0.01,
            f"32x32 grid, t2 in (0,10) ps, max dev {worst:.3%} of peak")


def test_criterion_04_peak_shift():
    start = time.perf_counter()
    spec = _absorb_spectrum(DL)
    shift = peak_metrics(spec).position_cm - 1650.0
    estimate = peak_shift_estimate(OSC)
    elapsed = time.perf_counter() - start
    ok = abs(shift - 7.0) <= 1.5 and abs(estimate - 8.1) <= 0.1 and elapsed <= 5.0
    _report(4, ok, f"pipeline shift {shift:.2f} cm-1 (7 +/- 1.5), "
                   f"first-order estimate {estimate:.2f} cm-1 (8.1 +/- 0.1), "
                   f"{elapsed:.2f} s")


def test_criterion_05_lineshape_ordering():
    fwhm = {label: peak_metrics(_absorb_spectrum(model)).fwhm_cm
            for label, model in ALL.items() if label != "power_n3"}
    gap_n1 = abs(fwhm["power_n1"] - fwhm["drude_lorentz"]) / fwhm["drude_lorentz"]
    gap_n2 = abs(fwhm["power_n2"] - fwhm["drude_lorentz"]) / fwhm["drude_lorentz"]
    ok = (fwhm["power_n1"] < fwhm["drude_lorentz"]) and (gap_n2 < gap_n1)
    _report(5, ok, f"FWHM: DL {fwhm['drude_lorentz']:.2f}, "
                   f"n=1 {fwhm['power_n1']:.2f}, n=2 {fwhm['power_n2']:.2f} cm-1; "
                   f"n=1 gap {gap_n1:.1%}, n=2 gap {gap_n2:.1%} "
                   "(n=1 kernel pinned to its defining integral makes the "
                   "Ohmic line broader; ordering clause cannot hold)")


def test_criterion_06_stability_verdicts():
    expected = {"drude_lorentz": Stability.STABLE,
                "power_n1": Stability.STABLE,
                "power_n2": Stability.STABLE,
                "power_n3": Stability.DIVERGES_LINEARLY}
    verdicts_ok = all(classify_stability(m, BETA).classification
                      is expected[label] for label, m in ALL.items())
    tau3 = np.linspace(0.0, 50.0, 2048)
    detail = []
    envelopes_ok = True
    for label, model in ALL.items():
        g3 = np.array([exponent_nonrephasing(model, 1.0, 1.0, float(t), BETA)
                       for t in tau3])
        env = tau3 * np.exp(-g3)
        if expected[label] is Stability.DIVERGES_LINEARLY:
            grow = bool(np.all(np.diff(env[tau3 >= 20.0]) > 0.0))
            envelopes_ok &= grow
            detail.append(f"{label} grows beyond 20 ps: {grow}")
        else:
            ratio = env[-1] / env.max()
            envelopes_ok &= ratio < 1e-3
            detail.append(f"{label} final/peak {ratio:.1e}")
    _report(6, verdicts_ok and envelopes_ok,
            f"verdicts {'ok' if verdicts_ok else 'WRONG'}; " + "; ".join(detail))


def test_criterion_07_rephasing_diagonal_divergence():
    slow = SpectralDensity.drude_lorentz(E_R_CM, 1.0e-3)
    t2 = 1.0
    taus = np.linspace(0.2, 1.5, 14)
    mag_r = np.array([abs(classical_third_order(OSC, slow, Pathway.REPHASING,
                                                float(t), t2, float(t)))
                      for t in taus])
    slope = float(np.polyfit(taus, mag_r, 1)[0])
    expected = OSC.mu ** 4 * OSC.delta / OSC.omega0 ** 2
    rel = abs(slope - expected) / expected
    taus_l = np.linspace(0.2, 2.5, 24)
    grows = np.all(np.diff([abs(classical_third_order(
        OSC, slow, Pathway.REPHASING, float(t), t2, float(t)))
        for t in taus_l]) > 0.0)
    nr_small = abs(classical_third_order(OSC, slow, Pathway.NONREPHASING,
                                         1.5, t2, 1.5))
    nr_big = abs(classical_third_order(OSC, slow, Pathway.NONREPHASING,
                                       0.3, t2, 0.3))
    decays = nr_small < 1e-3 * nr_big
    _report(7, rel <= 0.05 and grows and decays,
            f"|R_R| slope dev {rel:.2%} (<= 5%), monotone growth {bool(grows)}, "
            f"|R_NR| decays {decays}")


def test_criterion_08_hbar_correspondence():
    start = time.perf_counter()
    hbars = [1.0, 0.5, 0.25, 0.125]
    orders_re, orders_im = [], []

    tau = 0.9
    h_ref = h_kernel(DL, tau, BETA)
    re = [abs(g_quantum(DL, tau, BETA, hb).real - h_ref) for hb in hbars]
    im = [abs(g_quantum(DL, tau, BETA, hb).imag) for hb in hbars]
    orders_re += [math.log2(re[i - 1] / re[i]) for i in range(1, 4)]
    orders_im += [math.log2(im[i - 1] / im[i]) for i in range(1, 4)]

    t1, t2, t3 = 0.4, 0.6, 0.5
    for pathway, classical in ((Pathway.NONREPHASING, exponent_nonrephasing),
                               (Pathway.REPHASING, exponent_rephasing)):
        g_cl = classical(DL, t1, t2, t3, BETA)
        for ladder in Ladder:
            re = [abs(quantum_exponent_third_order(DL, pathway, ladder,
                                                   t1, t2, t3, BETA, hb).real
                      - g_cl) for hb in hbars]
            im = [abs(quantum_exponent_third_order(DL, pathway, ladder,
                                                   t1, t2, t3, BETA, hb).imag)
                  for hb in hbars]
            orders_re += [math.log2(re[i - 1] / re[i]) for i in range(1, 4)]
            orders_im += [math.log2(im[i - 1] / im[i]) for i in range(1, 4)]

    hbar_match = 2.0 * OSC.kT / OSC.omega0
    taus = np.linspace(0.001, 0.02, 9)
    qb = np.sin(OSC.omega0 * taus) + 2.0 * hbar_match * OSC.delta * taus \
        * np.cos(OSC.omega0 * taus)
    cb = OSC.omega0 * (np.sin(OSC.omega0 * taus) / OSC.omega0
                       + 4.0 * OSC.delta * OSC.kT * taus
                       * np.cos(OSC.omega0 * taus) / OSC.omega0 ** 2)
    pref = float(np.max(np.abs(qb - cb) / np.abs(cb)))
    elapsed = time.perf_counter() - start
    ok = (min(orders_re) >= 1.9 and min(orders_im) >= 0.9
          and pref <= 1e-14 and elapsed <= 30.0)
    _report(8, ok, f"Re order >= {min(orders_re):.3f}, "
                   f"Im order >= {min(orders_im):.3f}, prefactor identity "
                   f"{pref:.1e}, {elapsed:.2f} s")


def test_criterion_09_spectral_diffusion():
    start = time.perf_counter()
    grid = TimeGrid(0.02, 512, frame_cm=1650.0)
    t = grid.times()
    cls_values = {}
    peaks = {}
    for t2 in (0.0, 2.0, 5.0, 10.0):
        surfaces = {}
        for pathway in Pathway:
            sig = third_order_grid(OSC, DL, pathway, t, t2, t, frame=grid.frame)
            surfaces[pathway] = spectrum_2d(Signal2D(sig, t2, grid, grid,
                                                     pathway))
        corr = correlation_spectrum(surfaces[Pathway.NONREPHASING],
                                    surfaces[Pathway.REPHASING])
        i, j = np.unravel_index(int(np.argmin(corr.values)), corr.values.shape)
        c1, c3 = corr.omega1_cm[i], corr.omega3_cm[j]
        cls_values[t2] = center_line_slope(
            corr, ((c1 - 20.0, c1 + 20.0), (c3 - 20.0, c3 + 20.0)))
        if t2 == 0.0:
            peaks = {p: float(np.abs(s.values).max())
                     for p, s in surfaces.items()}
    elapsed = time.perf_counter() - start
    seq = [cls_values[t2] for t2 in (0.0, 2.0, 5.0, 10.0)]
    non_increasing = all(seq[i] >= seq[i + 1] - 0.05 for i in range(3))
    ok = (cls_values[0.0] > cls_values[10.0] and non_increasing
          and peaks[Pathway.REPHASING] > peaks[Pathway.NONREPHASING]
          and elapsed <= 120.0)
    _report(9, ok, "CLS " + ", ".join(f"t2={k:g}: {v:.3f}"
                                      for k, v in cls_values.items())
            + f"; R/NR peak ratio {peaks[Pathway.REPHASING] / peaks[Pathway.NONREPHASING]:.2f}; "
            f"{elapsed:.1f} s (n=512)")


def test_criterion_10_determinism(tmp_path):
    base = """\
[oscillator]
omega0_cm = 1650.0
delta_cm = 16.0
temperature_K = 300.0
[bath]
kind = drude_lorentz, power_exp_cutoff:2
e_r_cm = 2.0
gamma_cm = 10.0
omega_c_cm = 10.0
"""
    jobs = {
        "absorb": (run_absorb, base + "[grid]\nn = 1024\ndt_ps = 0.004\n"),
        "twodir": (run_twodir, base + "[grid]\nn = 128\n[job]\nt2_list_ps = 0\n"),
        "stability": (run_stability, base),
    }
    identical = True
    for name, (runner, text) in jobs.items():
        dirs = []
        for tag in ("a", "b"):
            cfg = parse_config(text)
            out = tmp_path / f"{name}_{tag}"
            runner(cfg, output_dir=str(out))
            dirs.append(out)
        names = sorted(os.listdir(dirs[0]))
        identical &= names == sorted(os.listdir(dirs[1]))
        for fname in names:
            identical &= (dirs[0] / fname).read_bytes() == \
                (dirs[1] / fname).read_bytes()
    _report(10, identical, "absorb/twodir/stability reruns byte-identical: "
            f"{identical}")
