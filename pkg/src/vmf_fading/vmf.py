"""von Mises-Fisher scattering on the unit sphere.

Directions are plain length-3 numpy arrays (or ``(n, 3)`` stacks). The
model container stores the mean arrival direction as azimuth/elevation
angles in radians together with the concentration ``kappa``.
"""

from dataclasses import dataclass
import math

import numpy as np

from .errors import DomainError
from .specfun import kappa_over_sinh_scaled

__all__ = [
    "VmfScattering",
    "AnglePair",
    "SAMPLE_BLOCK",
    "vmf_pdf",
    "mean_direction",
    "angles_to_direction",
    "direction_to_angles",
    "sample_directions",
    "tangent_basis",
]

# Draws are generated in fixed blocks, each block seeded from (seed, block
# index). Any sub-range of sample indices is therefore reproducible on its own.
SAMPLE_BLOCK = 1 << 16


@dataclass(frozen=True)
class VmfScattering:
    """Single vMF scattering cluster.

    mu_phi: mean azimuth of arrival in radians, in (-pi, pi].
    mu_psi: mean elevation of arrival in radians, in [-pi/2, pi/2].
    kappa: concentration; 0 is isotropic scattering.
    """

    mu_phi: float = 0.0
    mu_psi: float = 0.0
    kappa: float = 0.0

    def __post_init__(self):
        for name in ("mu_phi", "mu_psi", "kappa"):
            if not math.isfinite(getattr(self, name)):
                raise DomainError(f"{name} must be finite")
        if self.kappa < 0:
            raise DomainError("kappa must be non-negative")
        if not (-math.pi < self.mu_phi <= math.pi):
            raise DomainError("mu_phi must lie in (-pi, pi]")
        if abs(self.mu_psi) > math.pi / 2:
            raise DomainError("mu_psi must lie in [-pi/2, pi/2]")

    @classmethod
    def from_degrees(cls, mu_phi_deg, mu_psi_deg, kappa):
        phi = math.radians(mu_phi_deg)
        # map onto (-pi, pi]
        phi = -(((-phi + math.pi) % (2 * math.pi)) - math.pi)
        return cls(phi, math.radians(mu_psi_deg), kappa)


@dataclass(frozen=True)
class AnglePair:
    phi: float
    psi: float

    def __post_init__(self):
        if not (abs(self.phi) <= math.pi and abs(self.psi) <= math.pi / 2):
            raise DomainError("angles outside |phi| <= pi, |psi| <= pi/2")


def angles_to_direction(phi, psi):
    """Unit vector ``(cos phi cos psi, sin phi cos psi, sin psi)``.

    Works elementwise on arrays; the result has a trailing axis of size 3.
    """
    phi = np.asarray(phi, dtype=float)
    psi = np.asarray(psi, dtype=float)
    cpsi = np.cos(psi)
    return np.stack([np.cos(phi) * cpsi, np.sin(phi) * cpsi, np.sin(psi)], axis=-1)


def direction_to_angles(d):
    """Inverse of :func:`angles_to_direction`.

    Returns ``(phi, psi)``. At the poles the azimuth is undefined and is
    reported as 0.
    """
    d = np.asarray(d, dtype=float)
    x, y, z = d[..., 0], d[..., 1], d[..., 2]
    rho = np.hypot(x, y)
    psi = np.arctan2(z, rho)
    phi = np.where(rho > 0, np.arctan2(y, x), 0.0)
    if phi.ndim == 0:
        return float(phi), float(psi)
    return phi, psi


def mean_direction(model):
    return angles_to_direction(model.mu_phi, model.mu_psi)


def vmf_pdf(model, phi, psi):
    """Joint density of (azimuth, elevation) under the vMF law.

    The density includes the ``cos(psi)`` Jacobian, so it integrates to one
    over ``|phi| <= pi, |psi| <= pi/2``. Evaluated as
    ``kappa e^kappa / sinh(kappa) * exp(kappa (u - 1))`` which stays finite
    for large ``kappa``.
    """
    phi_a = np.asarray(phi, dtype=float)
    psi_a = np.asarray(psi, dtype=float)
    if np.any(np.abs(phi_a) > math.pi) or np.any(np.abs(psi_a) > math.pi / 2):
        raise DomainError("angles outside |phi| <= pi, |psi| <= pi/2")
    k = model.kappa
    u = np.cos(model.mu_psi) * np.cos(psi_a) * np.cos(phi_a - model.mu_phi) + np.sin(
        model.mu_psi
    ) * np.sin(psi_a)
    out = kappa_over_sinh_scaled(k) * np.exp(k * (u - 1.0)) * np.cos(psi_a) / (4 * math.pi)
    return float(out) if out.ndim == 0 else out


def tangent_basis(mu):
    """Two unit vectors completing ``mu`` to a right-handed orthonormal basis."""
    mu = np.asarray(mu, dtype=float)
    # seed with the coordinate axis least aligned with mu; never degenerate
    axis = np.zeros(3)
    axis[np.argmin(np.abs(mu))] = 1.0
    e1 = axis - np.dot(axis, mu) * mu
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(mu, e1)
    return e1, e2


def _block_uniforms(seed, block):
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, block])))
    return rng.random((SAMPLE_BLOCK, 2))


def _axial_from_uniform(xi, kappa):
    """Return ``(u, 1 - u)`` for the axial law ``p(u) ~ exp(kappa u)`` on [-1, 1]."""
    if kappa == 0:
        u = 2.0 * xi - 1.0
        return u, 1.0 - u
    # u = 1 + log(xi + (1 - xi) e^{-2k}) / k, rewritten to avoid cancellation
    t = (1.0 - xi) * (-math.expm1(-2.0 * kappa))
    one_minus_u = -np.log1p(-t) / kappa
    return 1.0 - one_minus_u, one_minus_u


def sample_directions(model, n, seed, start=0):
    """Draw vMF directions for sample indices ``start .. start + n - 1``.

    The axial component along the mean direction comes from the exact
    inverse CDF, the azimuth around it is uniform. Uniform variates are
    produced in blocks of :data:`SAMPLE_BLOCK` seeded by ``(seed, block)``
    through ``numpy.random.SeedSequence`` feeding PCG64, so splitting an
    index range over workers reproduces the single-call result exactly.

    Returns an ``(n, 3)`` array.
    """
    if n < 1:
        raise DomainError("n must be >= 1")
    if start < 0:
        raise DomainError("start must be >= 0")
    stop = start + n
    chunks = []
    for block in range(start // SAMPLE_BLOCK, (stop - 1) // SAMPLE_BLOCK + 1):
        lo = max(start, block * SAMPLE_BLOCK) - block * SAMPLE_BLOCK
        hi = min(stop, (block + 1) * SAMPLE_BLOCK) - block * SAMPLE_BLOCK
        chunks.append(_block_uniforms(seed, block)[lo:hi])
    uv = np.concatenate(chunks)

    u, one_minus_u = _axial_from_uniform(uv[:, 0], model.kappa)
    radial = np.sqrt(np.clip(one_minus_u * (1.0 + u), 0.0, None))
    theta = 2.0 * math.pi * uv[:, 1]

    mu = mean_direction(model)
    e1, e2 = tangent_basis(mu)
    out = (
        u[:, None] * mu
        + (radial * np.cos(theta))[:, None] * e1
        + (radial * np.sin(theta))[:, None] * e2
    )
    return out
