"""Quantum-classical correspondence under an hbar scan.

hbar enters the quantum response only through the coth thermal weight, the
reorganization shift, and the anharmonic level spacings, so it can be
scanned as an explicit parameter. The real part of every quantum decay
exponent converges to its classical counterpart at order hbar^2 and the
imaginary part vanishes at order hbar; the anharmonicity-induced part of
the full quantum third-order response converges to the classical pathway
response. The oscillating prefactors agree exactly when hbar = 2 kT / w0.

Run:  python demos/quantum_classical_limit.py   (writes hbar_scan.png)
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from respkit import (Kind, Ladder, Oscillator, Pathway, calibrate_coupling,
                     classical_third_order, exponent_nonrephasing, g_quantum,
                     h_kernel, quantum_exponent_third_order,
                     quantum_third_order)

osc = Oscillator.from_wavenumbers(1650.0, 16.0, 300.0)
osc_harm = Oscillator.from_wavenumbers(1650.0, 0.0, 300.0)
beta = osc.beta
model = calibrate_coupling(2.0, Kind.DRUDE_LORENTZ, gamma_cm=10.0)
hbars = 2.0 ** -np.arange(0, 8, dtype=float)

tau = 0.9
h_ref = h_kernel(model, tau, beta)
g_vals = [g_quantum(model, tau, beta, hb) for hb in hbars]
err_re = [abs(g.real - h_ref) for g in g_vals]
err_im = [abs(g.imag) for g in g_vals]

t123 = (0.4, 0.2, 0.6)
g_cl = exponent_nonrephasing(model, *t123, beta)
err_re3 = [abs(quantum_exponent_third_order(model, Pathway.NONREPHASING,
                                            Ladder.GB_SE, *t123, beta,
                                            hb).real - g_cl) for hb in hbars]

c_ref = classical_third_order(osc, model, Pathway.NONREPHASING, *t123)
err_resp = []
for hb in hbars:
    q = quantum_third_order(osc, model, Pathway.NONREPHASING, *t123, hb)
    q0 = quantum_third_order(osc_harm, model, Pathway.NONREPHASING, *t123, hb)
    err_resp.append(abs((q - q0) - c_ref) / abs(c_ref))

print(f"{'hbar':>9s} {'|Re g - h|':>12s} {'|Im g|':>12s} "
      f"{'|Re G3 - G|':>12s} {'resp rel err':>13s}")
for row in zip(hbars, err_re, err_im, err_re3, err_resp):
    print(f"{row[0]:9.4f} {row[1]:12.3e} {row[2]:12.3e} "
          f"{row[3]:12.3e} {row[4]:13.3e}")

hbar_match = 2.0 * osc.kT / osc.omega0
print(f"\nprefactor brackets coincide exactly at hbar = 2 kT / w0 "
      f"= {hbar_match:.5f}")

fig, ax = plt.subplots(figsize=(5.5, 4))
ax.loglog(hbars, err_re, "o-", label=r"$|\mathrm{Re}\,g - h|$ (linear)")
ax.loglog(hbars, err_im, "s-", label=r"$|\mathrm{Im}\,g|$ (linear)")
ax.loglog(hbars, err_re3, "^-", label=r"$|\mathrm{Re}\,G_3 - G_3^{cl}|$")
ax.loglog(hbars, err_resp, "v-", label="anharmonic response rel. err.")
ax.loglog(hbars, err_re[0] * (hbars / hbars[0]) ** 2, "k:", lw=0.7,
          label=r"$\propto\hbar^2$")
ax.loglog(hbars, err_im[0] * hbars / hbars[0], "k--", lw=0.7,
          label=r"$\propto\hbar$")
ax.set_xlabel(r"$\hbar$ scan value")
ax.set_ylabel("deviation from classical")
ax.legend(fontsize=7)
fig.tight_layout()
fig.savefig("hbar_scan.png", dpi=150)
print("wrote hbar_scan.png")
