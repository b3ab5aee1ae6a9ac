"""2D IR correlation spectra and spectral diffusion.

Computes rephasing and nonrephasing surfaces for the Drude-Lorentz bath at
several population times, forms the correlation map Im[S_NR + S_R], and
tracks the center-line slope of the bleach lobe as frequency memory decays.

Run:  python demos/two_dimensional_spectra.py   (writes twodir.png)
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from respkit import (Kind, Oscillator, Pathway, Signal2D, TimeGrid,
                     calibrate_coupling, center_line_slope,
                     correlation_spectrum, spectrum_2d, third_order_grid)

osc = Oscillator.from_wavenumbers(1650.0, 16.0, 300.0)
model = calibrate_coupling(2.0, Kind.DRUDE_LORENTZ, gamma_cm=10.0)
grid = TimeGrid(0.02, 512, frame_cm=1650.0)
t = grid.times()
t2_list = (0.0, 2.0, 10.0)

fig, axes = plt.subplots(1, len(t2_list), figsize=(4 * len(t2_list), 3.6),
                         sharey=True)
for ax, t2 in zip(axes, t2_list):
    surfaces = {}
    for pathway in Pathway:
        sig = third_order_grid(osc, model, pathway, t, t2, t, frame=grid.frame)
        surfaces[pathway] = spectrum_2d(Signal2D(sig, t2, grid, grid, pathway))
    corr = correlation_spectrum(surfaces[Pathway.NONREPHASING],
                                surfaces[Pathway.REPHASING])

    # slope of the bleach-lobe ridge: ~1 while excitation and detection
    # frequencies stay correlated, ~0 once memory is lost
    i, j = np.unravel_index(np.argmin(corr.values), corr.values.shape)
    c1, c3 = corr.omega1_cm[i], corr.omega3_cm[j]
    cls = center_line_slope(corr, ((c1 - 20, c1 + 20), (c3 - 20, c3 + 20)))
    ratio = (np.abs(surfaces[Pathway.REPHASING].values).max()
             / np.abs(surfaces[Pathway.NONREPHASING].values).max())
    print(f"t2 = {t2:4.1f} ps: CLS = {cls:6.3f}, "
          f"rephasing/nonrephasing peak ratio = {ratio:5.2f}")

    m1 = np.abs(corr.omega1_cm - 1650.0) <= 60.0
    m3 = np.abs(corr.omega3_cm - 1650.0) <= 60.0
    sub = corr.values[np.ix_(m1, m3)]
    vmax = np.abs(sub).max()
    ax.pcolormesh(corr.omega1_cm[m1], corr.omega3_cm[m3], sub.T,
                  cmap="RdBu_r", vmin=-vmax, vmax=vmax, shading="nearest")
    ax.plot([1590, 1710], [1590, 1710], "k:", lw=0.6)
    ax.set_title(f"$\\tau_2$ = {t2:g} ps, CLS = {cls:.2f}")
    ax.set_xlabel(r"$\omega_1$ / cm$^{-1}$")
axes[0].set_ylabel(r"$\omega_3$ / cm$^{-1}$")
fig.tight_layout()
fig.savefig("twodir.png", dpi=150)
print("wrote twodir.png")
