"""
Mean Doppler shift and Doppler spread under vMF scattering
==========================================================

A receiver moving at speed v sees each path shifted by f_m cos(angle between
the path and the motion).  When the directions of arrival follow a von
Mises-Fisher law the first two moments of that shift have closed forms.
Here we tabulate them and compare against brute-force quadrature.
"""

import math

import numpy as np

from vmf_fading.doppler import DopplerGeometry, moments
from vmf_fading.oracle import spread_by_quadrature
from vmf_fading.vmf import VmfScattering
from _plotting import pyplot, save

# %%
# A 2 GHz carrier and 30 m/s give a maximum shift of about 200 Hz.
f_m = 30.0 * 2e9 / 299792458.0
print(f"f_m = {f_m:.2f} Hz")

# %%
# Isotropic scattering (kappa = 0) is the classical Clarke case: the mean is
# zero and the spread is f_m / sqrt(3) no matter how we move.
for beta in (0, 45, 90):
    m = moments(VmfScattering(0, 0, 0.0), DopplerGeometry.from_angle(f_m, math.radians(beta)))
    print(f"kappa=0  beta={beta:3d}  mean={m.mean:8.3f}  spread/f_m={m.spread / f_m:.6f}")

# %%
# Concentrated scattering.  Moving towards the cluster shifts the mean up and
# shrinks the spread; moving across it keeps the mean at zero.
print(f"\n{'kappa':>6} {'beta':>5} {'mean/f_m':>10} {'spread/f_m':>11} {'oracle':>11}")
for kappa in (1.0, 10.0, 100.0):
    for beta in (0, 90, 180):
        g = DopplerGeometry.from_angle(1.0, math.radians(beta))
        s = VmfScattering(0, 0, kappa)
        m = moments(s, g)
        _, qs = spread_by_quadrature(s, g)
        print(f"{kappa:6g} {beta:5d} {m.mean:10.6f} {m.spread:11.8f} {qs:11.8f}")

# %%
# Spread against motion angle for several concentrations.
plt = pyplot()
if plt is not None:
    betas = np.linspace(0, 180, 181)
    fig, ax = plt.subplots()
    for kappa in (0, 1, 3, 10, 30, 100):
        s = VmfScattering(0, 0, kappa)
        spread = [moments(s, DopplerGeometry.from_angle(1.0, math.radians(b))).spread for b in betas]
        ax.plot(betas, spread, label=f"kappa={kappa}")
    ax.set_xlabel("motion angle to mean direction [deg]")
    ax.set_ylabel("Doppler spread / f_m")
    ax.legend()
    save(fig, "doppler_spread.png")
