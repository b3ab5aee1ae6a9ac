"""Linear absorption of the anharmonic oscillator for different baths.

Builds the amide-I-like parameter set (fundamental 1650 cm^-1,
anharmonicity 16 cm^-1, 300 K), calibrates Drude-Lorentz, Ohmic and
quadratic super-Ohmic baths to the same reorganization energy of 2 cm^-1,
and compares the resulting lineshapes. The cubic super-Ohmic bath cannot
damp the anharmonic divergence, so it is shown only in the time domain.

Run:  python demos/absorption_lineshapes.py   (writes absorption.png)
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from respkit import (Kind, Oscillator, TimeGrid, absorption_spectrum,
                     calibrate_coupling, classical_linear, peak_metrics,
                     peak_shift_estimate, zero_crossing_time)

osc = Oscillator.from_wavenumbers(1650.0, 16.0, 300.0)
models = {
    "Drude-Lorentz": calibrate_coupling(2.0, Kind.DRUDE_LORENTZ, gamma_cm=10.0),
    "Ohmic (n=1)": calibrate_coupling(2.0, Kind.POWER_EXP_CUTOFF, n=1,
                                      omega_c_cm=10.0),
    "super-Ohmic (n=2)": calibrate_coupling(2.0, Kind.POWER_EXP_CUTOFF, n=2,
                                            omega_c_cm=10.0),
}

print("first-order peak-shift estimate 4*delta*kT/omega0 = "
      f"{peak_shift_estimate(osc):.2f} cm^-1")
print("first zero crossing of the bare prefactor: "
      f"{1e3 * zero_crossing_time(osc):.4f} fs "
      f"(harmonic half period {1e3 * np.pi / osc.omega0:.4f} fs)")

grid = TimeGrid(0.004, 8192)
fig, (ax_t, ax_w) = plt.subplots(1, 2, figsize=(10, 4))

for label, model in models.items():
    signal = classical_linear(osc, model, grid.times())
    spec = absorption_spectrum(signal, grid, window_cm=(1570.0, 1730.0))
    scale = np.abs(spec.intensity).max()
    pm = peak_metrics(spec)
    print(f"{label:18s} peak {pm.position_cm:8.2f} cm^-1 "
          f"(shift {pm.position_cm - 1650.0:+5.2f}), FWHM {pm.fwhm_cm:6.2f} cm^-1")
    ax_w.plot(spec.omega_cm, spec.intensity / scale, label=label)
    mask = grid.times() < 1.2
    ax_t.plot(grid.times()[mask], signal[mask], lw=0.7, label=label)

ax_t.set_xlabel("t / ps")
ax_t.set_ylabel("linear response")
ax_w.set_xlabel(r"$\omega$ / cm$^{-1}$")
ax_w.set_ylabel("absorption (normalized)")
ax_w.axvline(1650.0, color="k", lw=0.5, ls=":")
ax_w.legend(fontsize=8)
fig.tight_layout()
fig.savefig("absorption.png", dpi=150)
print("wrote absorption.png")
