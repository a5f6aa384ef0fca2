"""
Drawing directions of arrival
=============================

The sampler inverts the CDF of the cosine to the mean direction and picks a
uniform azimuth around it.  Draws are produced in fixed-size blocks with
their own seeds, so any slice of a long stream can be regenerated alone.
"""

import numpy as np

from vmf_fading.specfun import langevin
from vmf_fading.vmf import VmfScattering, direction_to_angles, mean_direction, sample_directions
from _plotting import pyplot, save

model = VmfScattering.from_degrees(40.0, 20.0, 8.0)
d = sample_directions(model, 200_000, seed=3)
u = d @ mean_direction(model)
print(f"mean cosine {u.mean():.5f}   Langevin value {langevin(model.kappa):.5f}")

# %%
# Regenerate draws 150000..150009 without producing the ones before them.
tail = sample_directions(model, 10, seed=3, start=150_000)
print("slice matches full run:", np.array_equal(tail, d[150_000:150_010]))

plt = pyplot()
if plt is not None:
    phi, psi = direction_to_angles(d[:20_000])
    fig, ax = plt.subplots()
    ax.plot(np.degrees(phi), np.degrees(psi), ",", alpha=0.4)
    ax.set_xlabel("azimuth [deg]"), ax.set_ylabel("elevation [deg]")
    ax.set_xlim(-180, 180), ax.set_ylim(-90, 90)
    save(fig, "doa_samples.png")
