"""
Sum-of-sinusoids channel and empirical crossing statistics
==========================================================

Each path gets a vMF direction, a uniform phase and amplitude sqrt(Omega/N).
We synthesize the complex gain, measure the crossing statistics of its
envelope, and compare with the closed forms.
"""

import math

import numpy as np

from vmf_fading.doppler import MotionConfig, doppler_spread, geometry
from vmf_fading.secondorder import afd, db_to_rho, lcr
from vmf_fading.simulator import ChannelConfig, envelope, estimate_lcr_afd, monte_carlo_lcr_afd, realize
from vmf_fading.vmf import VmfScattering
from _plotting import pyplot, save

f_m, wavelength = 50.0, 0.1
scat = VmfScattering(0.0, 0.0, 10.0)
motion = MotionConfig.at_angle(scat, math.radians(90.0), f_m * wavelength, wavelength)
sigma = doppler_spread(scat, geometry(scat, motion))
cfg = ChannelConfig(128, 1.0, scat, motion, seed=7)

# %%
# One realization, 400 / f_m seconds long, 32 samples per 1 / f_m.
env = envelope(realize(cfg), 400 / f_m, 1 / (32 * f_m))
rho = db_to_rho([-10.0, -3.0, 0.0])
est = estimate_lcr_afd(env, rho)
print("single run  LCR:", np.round(est.lcr_hat, 2), " theory:", np.round(lcr(sigma, rho), 2))

# %%
# Pooling crossings over 20 independent realizations tightens the estimate.
pooled = monte_carlo_lcr_afd(cfg, rho, 20, 400 / f_m, 1 / (32 * f_m))
for r, lh, ah, lt, at in zip(rho, pooled.lcr_hat, pooled.afd_hat, lcr(sigma, rho), afd(sigma, rho)):
    print(f"{20 * math.log10(r):6.1f} dB  LCR {lh:7.2f} vs {lt:7.2f}   AFD {1e3 * ah:6.2f} vs {1e3 * at:6.2f} ms")

plt = pyplot()
if plt is not None:
    n = int(2.0 / env.dt)
    fig, ax = plt.subplots()
    ax.plot(env.times[:n], 20 * np.log10(env.samples[:n]))
    for r in rho:
        ax.axhline(20 * math.log10(r), color="k", lw=0.5)
    ax.set_xlabel("time [s]"), ax.set_ylabel("envelope [dB re rms]")
    save(fig, "envelope.png")
