"""Which baths tame the anharmonic divergence?

The third-order response carries a bare tau3-linear prefactor; whether the
bath-induced decay factor exp(-G) can beat it depends on the low-frequency
weight of the spectral density. This demo classifies the four standard
baths, then shows the |R_NR|(tau3) envelopes: the cubic super-Ohmic bath's
exponent saturates and the signal grows without bound.

Run:  python demos/stability_zoo.py   (writes stability.png)
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from respkit import (Kind, Oscillator, calibrate_coupling, classify_stability,
                     estimate_h_infinity, exponent_nonrephasing, h_kernel)

osc = Oscillator.from_wavenumbers(1650.0, 16.0, 300.0)
beta = osc.beta
models = {
    "Drude-Lorentz": calibrate_coupling(2.0, Kind.DRUDE_LORENTZ, gamma_cm=10.0),
    "Ohmic n=1": calibrate_coupling(2.0, Kind.POWER_EXP_CUTOFF, n=1,
                                    omega_c_cm=10.0),
    "super-Ohmic n=2": calibrate_coupling(2.0, Kind.POWER_EXP_CUTOFF, n=2,
                                          omega_c_cm=10.0),
    "super-Ohmic n=3": calibrate_coupling(2.0, Kind.POWER_EXP_CUTOFF, n=3,
                                          omega_c_cm=10.0),
}

print(f"{'bath':18s} {'verdict':20s} {'h(inf)':>10s} {'sampled':>10s}")
for label, model in models.items():
    verdict = classify_stability(model, beta)
    sampled = estimate_h_infinity(model, beta)
    h_str = f"{verdict.h_infinity:.4f}" if np.isfinite(verdict.h_infinity) else "inf"
    s_str = f"{sampled:.4f}" if np.isfinite(sampled) else "inf"
    print(f"{label:18s} {verdict.classification.value:20s} {h_str:>10s} {s_str:>10s}")

fig, (ax_h, ax_env) = plt.subplots(1, 2, figsize=(10, 4))
tau = np.linspace(0.0, 50.0, 1200)
for label, model in models.items():
    ax_h.plot(tau, h_kernel(model, tau, beta), label=label)
    g = np.array([exponent_nonrephasing(model, 1.0, 1.0, float(t3), beta)
                  for t3 in tau])
    env = (osc.mu ** 4 * osc.delta / osc.omega0 ** 2) * tau * np.exp(-g)
    ax_env.semilogy(tau, np.maximum(env, 1e-30), label=label)

ax_h.set_xlabel(r"$\tau$ / ps"), ax_h.set_ylabel(r"decay exponent $h(\tau)$")
ax_h.set_ylim(0, 30), ax_h.legend(fontsize=8)
ax_env.set_xlabel(r"$\tau_3$ / ps")
ax_env.set_ylabel(r"$|R_{NR}(1\,\mathrm{ps}, 1\,\mathrm{ps}, \tau_3)|$")
ax_env.set_ylim(1e-13, 1e-3), ax_env.legend(fontsize=8)
fig.tight_layout()
fig.savefig("stability.png", dpi=150)
print("wrote stability.png")
