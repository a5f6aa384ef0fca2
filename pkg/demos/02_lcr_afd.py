"""
Level-crossing rate and average fade duration
=============================================

For a Rayleigh envelope the LCR and AFD depend on the scattering only
through the Doppler spread.  Sharper scattering means slower fading: fewer
crossings and longer fades.
"""

import math

import numpy as np

from vmf_fading.doppler import MotionConfig
from vmf_fading.secondorder import curve, db_to_rho, max_lcr
from vmf_fading.vmf import VmfScattering
from _plotting import pyplot, save

levels_db = np.arange(-30.0, 10.01, 0.5)
rho = db_to_rho(levels_db)
f_m = 100.0

curves = {}
for kappa in (0.0, 1.0, 10.0, 100.0):
    s = VmfScattering(0.0, 0.0, kappa)
    # move straight towards the cluster: the slowest-fading geometry
    motion = MotionConfig.at_angle(s, 0.0, f_m * 0.15, 0.15)
    curves[kappa] = curve(s, motion, rho)

# %%
# The crossing rate peaks 3 dB below the rms level, at sigma_D sqrt(2 pi / e).
for kappa, c in curves.items():
    r_star, l_star = max_lcr(c.sigma_d)
    print(f"kappa={kappa:5g}  sigma_D={c.sigma_d:7.3f} Hz  peak LCR={l_star:7.3f}/s at {20 * math.log10(r_star):.2f} dB")

# %%
# LCR * AFD is the probability of being below the level, for every kappa.
c = curves[10.0]
print("max |L*T - (1 - exp(-rho^2))| =", np.max(np.abs(c.lcr * c.afd + np.expm1(-rho**2))))

plt = pyplot()
if plt is not None:
    fig, (a1, a2) = plt.subplots(1, 2, figsize=(10, 4))
    for kappa, c in curves.items():
        a1.semilogy(levels_db, c.lcr / f_m, label=f"kappa={kappa:g}")
        a2.semilogy(levels_db, c.afd * f_m, label=f"kappa={kappa:g}")
    a1.set_xlabel("level [dB re rms]"), a1.set_ylabel("LCR / f_m")
    a2.set_xlabel("level [dB re rms]"), a2.set_ylabel("AFD * f_m")
    a1.legend()
    save(fig, "lcr_afd.png")
