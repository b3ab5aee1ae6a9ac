"""The four computation pipelines and their deterministic file outputs.

Every job assembles its results fully in memory, then writes CSV/SVG files
and a JSON report in one pass: refusal and error paths therefore leave no
partial data behind. Numbers are serialized with a fixed format and no
run metadata (timestamps, hostnames) enters any artifact, so identical
configurations produce byte-identical outputs.
"""

from __future__ import annotations

import hashlib
import json
import math
import os
from dataclasses import dataclass, field

import numpy as np

from . import lineshape, svg
from .config import RunConfig, build_models
from .errors import DivergentBathError, DomainError, NumericalError
from .lineshape import (Ladder, Pathway, Stability, classify_stability,
                        exponent_combination_quadrature, exponent_nonrephasing,
                        exponent_nonrephasing_direct, exponent_rephasing,
                        exponent_rephasing_direct, g_quantum, h_kernel,
                        h_kernel_quadrature, quantum_exponent_third_order)
from .response import (BathLimit, Oscillator, classical_linear,
                       classical_third_order, dl_limit_response,
                       peak_shift_estimate, third_order_grid)
from .spectra import (Signal2D, Spectrum1D, Spectrum2D, SpectrumKind,
                      TimeGrid, absorption_spectrum, center_line_slope,
                      correlation_spectrum, peak_metrics, spectrum_2d)
from .spectral_density import Kind, SpectralDensity
from .units import angular_to_wavenumber

_FLOAT_FMT = "{:.12e}"


@dataclass
class RunReport:
    job: str
    scalars: dict = field(default_factory=dict)
    messages: list = field(default_factory=list)
    files: list = field(default_factory=list)      # {"path":..., "sha256":...}
    config_echo: str = ""

    def to_json(self) -> str:
        payload = {"job": self.job, "scalars": self.scalars,
                   "messages": self.messages, "files": self.files,
                   "config": self.config_echo.splitlines()}
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _oscillator(cfg: RunConfig) -> Oscillator:
    return Oscillator.from_wavenumbers(cfg.omega0_cm, cfg.delta_cm,
                                       cfg.temperature_K, cfg.mu)


def _meta_lines(cfg: RunConfig, extra: dict) -> list:
    lines = [f"# {k} = {v}" for k, v in extra.items()]
    lines.append("# config:")
    lines += [f"#   {ln}" for ln in cfg.echo.splitlines() if ln.strip()]
    return lines


def render_csv_1d(spec: Spectrum1D, meta: list) -> str:
    rows = [*meta, "omega_cm,intensity"]
    rows += [f"{_FLOAT_FMT.format(w)},{_FLOAT_FMT.format(v)}"
             for w, v in zip(spec.omega_cm, spec.intensity)]
    return "\n".join(rows) + "\n"


def render_csv_2d(values: np.ndarray, omega1: np.ndarray, omega3: np.ndarray,
                  meta: list) -> str:
    rows = [*meta, "omega1_cm,omega3_cm,value"]
    for i, w1 in enumerate(omega1):
        w1s = _FLOAT_FMT.format(w1)
        row = values[i]
        rows += [f"{w1s},{_FLOAT_FMT.format(w3)},{_FLOAT_FMT.format(row[j])}"
                 for j, w3 in enumerate(omega3)]
    return "\n".join(rows) + "\n"


def render_csv_columns(header: str, columns: list, meta: list) -> str:
    rows = [*meta, header]
    for values in zip(*columns):
        rows.append(",".join(_FLOAT_FMT.format(v) for v in values))
    return "\n".join(rows) + "\n"


def _write_outputs(report: RunReport, output_dir: str, payloads: dict) -> None:
    os.makedirs(output_dir, exist_ok=True)
    for name in sorted(payloads):
        data = payloads[name].encode()
        path = os.path.join(output_dir, name)
        with open(path, "wb") as fh:
            fh.write(data)
        report.files.append({"path": name,
                             "sha256": hashlib.sha256(data).hexdigest()})
    report_path = os.path.join(output_dir, "report.json")
    with open(report_path, "w") as fh:
        fh.write(report.to_json())


def _refuse_divergent(cfg: RunConfig, models: list, beta: float) -> None:
    if cfg.allow_divergent:
        return
    for label, model in models:
        verdict = classify_stability(model, beta)
        if verdict.classification is Stability.DIVERGES_LINEARLY:
            raise DivergentBathError(
                f"bath '{label}' has a finite long-time decay exponent "
                f"(h_inf = {verdict.h_infinity:.6g}); its response grows "
                "linearly in time and any fixed grid truncates a divergent "
                "signal. Pass --allow-divergent to acknowledge truncation.")


def _normalized(values: np.ndarray):
    scale = float(np.abs(values).max())
    if scale == 0.0:
        return values, 1.0
    return values / scale, scale


# ----------------------------------------------------------------------
# absorb

def run_absorb(cfg: RunConfig, output_dir: str = None) -> RunReport:
    osc = _oscillator(cfg)
    models = build_models(cfg)
    _refuse_divergent(cfg, models, osc.beta)
    grid = TimeGrid(cfg.dt_ps or 0.004, cfg.grid_n or 8192,
                    frame_cm=cfg.frame_cm or 0.0)
    window = (cfg.omega0_cm - cfg.window_halfwidth_cm,
              cfg.omega0_cm + cfg.window_halfwidth_cm)
    report = RunReport("absorb", config_echo=cfg.echo)
    report.scalars["peak_shift_estimate_cm"] = peak_shift_estimate(osc)
    payloads = {}
    times = grid.times()
    for label, model in models:
        signal = classical_linear(osc, model, times)
        spec = absorption_spectrum(signal, grid, window_cm=window, pad=cfg.pad)
        values, scale = _normalized(spec.intensity)
        spec = Spectrum1D(spec.omega_cm, values, spec.meta)
        try:
            pm = peak_metrics(spec)
            report.scalars[f"{label}_peak_cm"] = pm.position_cm
            report.scalars[f"{label}_peak_shift_cm"] = pm.position_cm - cfg.omega0_cm
            report.scalars[f"{label}_fwhm_cm"] = pm.fwhm_cm
        except DomainError as exc:
            report.messages.append(f"{label}: peak metrics unavailable ({exc})")
        meta = _meta_lines(cfg, {
            "job": "absorb", "bath": label, "frame_cm": grid.frame_cm,
            "normalization": _FLOAT_FMT.format(scale), "apodization": "none",
            "dt_ps": grid.dt, "n": grid.n, "pad": cfg.pad})
        payloads[f"absorb_{label}.csv"] = render_csv_1d(spec, meta)
    _write_outputs(report, output_dir or cfg.output_dir, payloads)
    return report


# ----------------------------------------------------------------------
# twodir

def _bleach_window(corr: Spectrum2D, halfwidth: float = 20.0):
    i, j = np.unravel_index(int(np.argmin(corr.values)), corr.values.shape)
    c1, c3 = corr.omega1_cm[i], corr.omega3_cm[j]
    return ((c1 - halfwidth, c1 + halfwidth), (c3 - halfwidth, c3 + halfwidth))


def _t2_tag(t2: float) -> str:
    return ("%g" % t2).replace(".", "p")


def run_twodir(cfg: RunConfig, output_dir: str = None) -> RunReport:
    osc = _oscillator(cfg)
    models = build_models(cfg)
    _refuse_divergent(cfg, models, osc.beta)
    frame = cfg.frame_cm if cfg.frame_cm is not None else cfg.omega0_cm
    grid = TimeGrid(cfg.dt_ps or 0.02, cfg.grid_n or 512, frame_cm=frame)
    window = (cfg.omega0_cm - cfg.window_halfwidth_cm,
              cfg.omega0_cm + cfg.window_halfwidth_cm)
    report = RunReport("twodir", config_echo=cfg.echo)
    payloads = {}
    times = grid.times()
    for label, model in models:
        for t2 in cfg.t2_list_ps:
            surfaces = {}
            for pathway in Pathway:
                sig = third_order_grid(osc, model, pathway, times, t2, times,
                                       frame=grid.frame)
                surfaces[pathway] = spectrum_2d(
                    Signal2D(sig, t2, grid, grid, pathway), pad=cfg.pad)
            corr = correlation_spectrum(surfaces[Pathway.NONREPHASING],
                                        surfaces[Pathway.REPHASING])
            tag = f"{label}_t2{_t2_tag(t2)}"
            m1 = (corr.omega1_cm >= window[0]) & (corr.omega1_cm <= window[1])
            m3 = (corr.omega3_cm >= window[0]) & (corr.omega3_cm <= window[1])
            w1, w3 = corr.omega1_cm[m1], corr.omega3_cm[m3]
            for pathway, name in ((Pathway.REPHASING, "rephasing"),
                                  (Pathway.NONREPHASING, "nonrephasing")):
                spec = surfaces[pathway]
                report.scalars[f"{tag}_{name}_peak_magnitude"] = \
                    float(np.abs(spec.values).max())
                vals = np.imag(spec.values)[np.ix_(m1, m3)]
                vals, scale = _normalized(vals)
                meta = _meta_lines(cfg, {
                    "job": "twodir", "bath": label, "surface": name,
                    "t2_ps": t2, "frame_cm": frame, "component": "imag",
                    "normalization": _FLOAT_FMT.format(scale),
                    "apodization": "none", "dt_ps": grid.dt, "n": grid.n,
                    "pad": cfg.pad})
                payloads[f"twodir_{tag}_{name}.csv"] = \
                    render_csv_2d(vals, w1, w3, meta)
                if cfg.emit_svg:
                    payloads[f"twodir_{tag}_{name}.svg"] = svg.heatmap_svg(
                        vals, w1, w3, f"{name} {label} t2={t2:g} ps",
                        "omega1 / cm-1", "omega3 / cm-1")
            cvals = corr.values[np.ix_(m1, m3)]
            cvals, scale = _normalized(cvals)
            meta = _meta_lines(cfg, {
                "job": "twodir", "bath": label, "surface": "correlation",
                "t2_ps": t2, "frame_cm": frame, "component": "imag_sum",
                "normalization": _FLOAT_FMT.format(scale),
                "apodization": "none", "dt_ps": grid.dt, "n": grid.n,
                "pad": cfg.pad})
            payloads[f"twodir_{tag}_correlation.csv"] = \
                render_csv_2d(cvals, w1, w3, meta)
            if cfg.emit_svg:
                payloads[f"twodir_{tag}_correlation.svg"] = svg.heatmap_svg(
                    cvals, w1, w3, f"correlation {label} t2={t2:g} ps",
                    "omega1 / cm-1", "omega3 / cm-1")
            try:
                cls = center_line_slope(corr, _bleach_window(corr))
                report.scalars[f"{tag}_cls"] = cls
            except DomainError as exc:
                report.messages.append(f"{tag}: CLS unavailable ({exc})")
    _write_outputs(report, output_dir or cfg.output_dir, payloads)
    return report


# ----------------------------------------------------------------------
# validate

def _fit_order(hbars, errors) -> float:
    """Least-squares slope of log(error) against log(hbar)."""
    lh = np.log(np.asarray(hbars))
    le = np.log(np.maximum(np.asarray(errors), 1e-300))
    return float(np.polyfit(lh, le, 1)[0])


def _fail(report: RunReport, suite: str, detail: dict):
    payload = json.dumps({"suite": suite, **detail}, sort_keys=True)
    raise NumericalError(f"validation suite '{suite}' exceeded tolerance: {payload}")


def run_validate(cfg: RunConfig, output_dir: str = None) -> RunReport:
    osc = _oscillator(cfg)
    beta = osc.beta
    models = [(label, m) for label, m in build_models(cfg)]
    rng = np.random.RandomState(cfg.seed)
    report = RunReport("validate", config_echo=cfg.echo)

    closed = [(label, m) for label, m in models if m.has_closed_form_kernel]

    # closed-form kernels against the quadrature oracle
    worst = (0.0, None)
    for label, model in closed:
        for tau in 10.0 ** rng.uniform(-3.0, 1.0, size=25):
            ref = h_kernel_quadrature(model, float(tau), beta).value
            val = lineshape.h_closed_form(model, float(tau), beta)
            rel = abs(val - ref) / max(abs(ref), 1e-300)
            if rel > worst[0]:
                worst = (rel, {"bath": label, "tau_ps": float(tau)})
    report.scalars["kernel_vs_quadrature_max_rel"] = worst[0]
    if worst[0] > 1e-8:
        _fail(report, "kernel_vs_quadrature", {"max_rel": worst[0], **worst[1]})

    # h-combination exponents against their direct closed three-time forms
    worst = (0.0, None)
    for label, model in closed:
        for _ in range(25):
            t1, t2, t3 = 10.0 ** rng.uniform(-2.0, 0.9, size=3)
            for pathway, combo, direct in (
                    (Pathway.NONREPHASING, exponent_nonrephasing,
                     exponent_nonrephasing_direct),
                    (Pathway.REPHASING, exponent_rephasing,
                     exponent_rephasing_direct)):
                a = combo(model, t1, t2, t3, beta)
                d = direct(model, t1, t2, t3, beta)
                rel = abs(a - d) / max(abs(d), 1e-300)
                if rel > worst[0]:
                    worst = (rel, {"bath": label, "pathway": pathway.value,
                                   "times": [t1, t2, t3]})
    report.scalars["exponent_vs_direct_max_rel"] = worst[0]
    if worst[0] > 1e-8:
        _fail(report, "exponent_vs_direct", {"max_rel": worst[0], **worst[1]})

    # regrouping identity against the unregrouped bracket quadrature
    worst = (0.0, None)
    for label, model in models:
        for _ in range(8):
            t1, t2, t3 = 10.0 ** rng.uniform(-1.5, 0.7, size=3)
            for pathway, combo in ((Pathway.NONREPHASING, exponent_nonrephasing),
                                   (Pathway.REPHASING, exponent_rephasing)):
                a = combo(model, t1, t2, t3, beta)
                q = exponent_combination_quadrature(model, pathway,
                                                    t1, t2, t3, beta).value
                rel = abs(a - q) / max(abs(q), 1e-300)
                if rel > worst[0]:
                    worst = (rel, {"bath": label, "pathway": pathway.value,
                                   "times": [t1, t2, t3]})
    report.scalars["regrouping_vs_bracket_max_rel"] = worst[0]
    if worst[0] > 1e-8:
        _fail(report, "regrouping_vs_bracket", {"max_rel": worst[0], **worst[1]})

    # hbar scans: quantum exponents -> classical exponents
    hbars = sorted(cfg.hbar_scan_list, reverse=True)
    label, model = models[0]
    tau = 0.8
    h_ref = h_kernel(model, tau, beta)
    re_err, im_err = [], []
    for hb in hbars:
        g = g_quantum(model, tau, beta, hb)
        re_err.append(abs(g.real - h_ref))
        im_err.append(abs(g.imag))
    order_re = _fit_order(hbars, re_err)
    order_im = _fit_order(hbars, im_err)
    report.scalars["linear_re_order"] = order_re
    report.scalars["linear_im_order"] = order_im

    t1, t2, t3 = 0.4, 0.6, 0.5
    g_cl = exponent_nonrephasing(model, t1, t2, t3, beta)
    re3, im3 = [], []
    for hb in hbars:
        g3 = quantum_exponent_third_order(model, Pathway.NONREPHASING,
                                          Ladder.GB_SE, t1, t2, t3, beta, hb)
        re3.append(abs(g3.real - g_cl))
        im3.append(abs(g3.imag))
    order_re3 = _fit_order(hbars, re3)
    order_im3 = _fit_order(hbars, im3)
    report.scalars["third_order_re_order"] = order_re3
    report.scalars["third_order_im_order"] = order_im3
    if min(order_re, order_re3) < 1.9 or min(order_im, order_im3) < 0.9:
        _fail(report, "hbar_convergence", {
            "linear_re_order": order_re, "linear_im_order": order_im,
            "third_re_order": order_re3, "third_im_order": order_im3})

    # quantum prefactor equals the classical bracket at hbar = 2 kT / w0
    hbar_match = 2.0 * osc.kT / osc.omega0
    taus = np.linspace(0.0, 0.02, 7)
    qb = np.sin(osc.omega0 * taus) + 2.0 * hbar_match * osc.delta * taus \
        * np.cos(osc.omega0 * taus)
    cb = osc.omega0 * (np.sin(osc.omega0 * taus) / osc.omega0
                       + 4.0 * osc.delta * osc.kT * taus
                       * np.cos(osc.omega0 * taus) / osc.omega0 ** 2)
    pref = float(np.max(np.abs(qb - cb) / np.maximum(np.abs(cb), 1e-300)))
    report.scalars["prefactor_identity_max_rel"] = pref
    if pref > 1e-14:
        _fail(report, "prefactor_identity", {"max_rel": pref})

    # Drude-Lorentz fast/slow limits
    dl = [(label, m) for label, m in models if m.kind is Kind.DRUDE_LORENTZ]
    if dl:
        label, model = dl[0]
        gamma_cm = angular_to_wavenumber(model.gamma)
        lam_cm = angular_to_wavenumber(model.lambda0)
        # Span 0.31 ps resolves both limiting decays; the slow-bath form
        # acquires a genuine O(gamma*t2*t1*t3) correction at t2 = 10 ps,
        # which stays below tolerance on this window.
        worst_lim = 0.0
        axis = np.linspace(0.0, 0.31, 32)
        for t2v in (0.0, 10.0):
            for limit, factor in ((BathLimit.FAST_BATH, 1.0e4),
                                  (BathLimit.SLOW_BATH, 1.0e-4)):
                scaled = SpectralDensity.drude_lorentz(lam_cm, gamma_cm * factor)
                for pathway in Pathway:
                    full = third_order_grid(osc, scaled, pathway, axis, t2v,
                                            axis, frame=0.0)
                    ref = dl_limit_response(osc, pathway, limit, lam_cm,
                                            gamma_cm * factor,
                                            axis[:, None], t2v, axis[None, :])
                    dev = np.abs(full - ref).max() / np.abs(ref).max()
                    worst_lim = max(worst_lim, float(dev))
        report.scalars["dl_limit_max_rel"] = worst_lim
        if worst_lim > 0.01:
            _fail(report, "dl_limits", {"max_rel": worst_lim})

    _write_outputs(report, output_dir or cfg.output_dir, {})
    return report


# ----------------------------------------------------------------------
# stability

def run_stability(cfg: RunConfig, output_dir: str = None) -> RunReport:
    osc = _oscillator(cfg)
    models = build_models(cfg)
    report = RunReport("stability", config_echo=cfg.echo)
    payloads = {}
    horizon = cfg.horizon_ps
    tau3 = np.linspace(0.0, horizon, 1024)
    for label, model in models:
        verdict = classify_stability(model, osc.beta)
        report.scalars[f"{label}_classification"] = verdict.classification.value
        report.scalars[f"{label}_h_infinity"] = (
            verdict.h_infinity if math.isfinite(verdict.h_infinity) else "inf")

        # linear-response magnitude envelope
        h = h_kernel(model, tau3, osc.beta)
        amp1 = osc.mu ** 2 * np.hypot(
            1.0 / osc.omega0,
            4.0 * osc.delta * osc.kT * tau3 / osc.omega0 ** 2) * np.exp(-h)
        # third-order nonrephasing envelope at t1 = t2 = 1 ps
        g3 = np.array([exponent_nonrephasing(model, 1.0, 1.0, float(t), osc.beta)
                       for t in tau3])
        amp3 = (osc.mu ** 4 * abs(osc.delta) / osc.omega0 ** 2) * tau3 * np.exp(-g3)

        late = tau3 >= 20.0
        growing = bool(np.all(np.diff(amp3[late]) > 0.0))
        report.scalars[f"{label}_envelope3_growing_beyond_20ps"] = growing
        peak3 = float(amp3.max())
        report.scalars[f"{label}_envelope3_final_over_peak"] = \
            float(amp3[-1] / peak3) if peak3 > 0.0 else 0.0
        peak1 = float(amp1.max())
        report.scalars[f"{label}_envelope1_final_over_peak"] = \
            float(amp1[-1] / peak1) if peak1 > 0.0 else 0.0

        meta = _meta_lines(cfg, {"job": "stability", "bath": label,
                                 "horizon_ps": horizon})
        payloads[f"stability_{label}_envelope.csv"] = render_csv_columns(
            "tau_ps,linear_envelope,third_order_envelope",
            [tau3, amp1, amp3], meta)
    _write_outputs(report, output_dir or cfg.output_dir, payloads)
    return report


RUNNERS = {"absorb": run_absorb, "twodir": run_twodir,
           "validate": run_validate, "stability": run_stability}
