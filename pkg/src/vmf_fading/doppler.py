"""Closed-form Doppler statistics for a vMF scattering cluster.

The Doppler shift of a path is ``f_m * cos(angle(k, v))``. Under vMF
scattering its law depends only on the concentration ``kappa``, the
maximum shift ``f_m`` and the mean-direction shift ``f_mu = f_m cos(beta)``.
"""

from dataclasses import dataclass
import math

import numpy as np

from .errors import DomainError
from .specfun import (
    bessel_i0_scaled,
    kappa_over_sinh,
    kappa_over_sinh_scaled,
    langevin,
    langevin_derivative,
    langevin_over_kappa,
)
from .vmf import angles_to_direction, mean_direction, tangent_basis

__all__ = [
    "MotionConfig",
    "DopplerGeometry",
    "DopplerMoments",
    "IStarParams",
    "geometry",
    "doppler_pdf",
    "mean_doppler",
    "mean_square_doppler",
    "doppler_spread",
    "moments",
    "istar",
    "normalized_moment",
    "mixture_moments",
]

SPEED_OF_LIGHT = 299_792_458.0


@dataclass(frozen=True)
class MotionConfig:
    """Mobile motion: speed in m/s, unit direction vector, carrier wavelength in m."""

    speed: float
    motion_direction: tuple
    wavelength: float

    def __post_init__(self):
        if not math.isfinite(self.speed) or self.speed < 0:
            raise DomainError("speed must be finite and >= 0")
        if not math.isfinite(self.wavelength) or self.wavelength <= 0:
            raise DomainError("wavelength must be > 0")
        d = np.asarray(self.motion_direction, dtype=float)
        if d.shape != (3,) or abs(np.linalg.norm(d) - 1.0) > 1e-9:
            raise DomainError("motion_direction must be a unit 3-vector")
        object.__setattr__(self, "motion_direction", tuple(float(c) for c in d))

    @classmethod
    def from_angles(cls, speed, azimuth, elevation, wavelength):
        """Motion direction from azimuth/elevation in radians."""
        return cls(speed, tuple(angles_to_direction(azimuth, elevation)), wavelength)

    @classmethod
    def at_angle(cls, scat, beta, speed, wavelength):
        """Motion at angle ``beta`` (radians) from the cluster's mean direction."""
        mu = mean_direction(scat)
        e1, _ = tangent_basis(mu)
        d = math.cos(beta) * mu + math.sin(beta) * e1
        return cls(speed, tuple(d / np.linalg.norm(d)), wavelength)

    @property
    def max_doppler(self):
        return self.speed / self.wavelength


@dataclass(frozen=True)
class DopplerGeometry:
    f_m: float
    f_mu: float
    beta: float

    def __post_init__(self):
        if self.f_m < 0 or abs(self.f_mu) > self.f_m * (1 + 1e-12):
            raise DomainError("need f_m >= 0 and |f_mu| <= f_m")

    @classmethod
    def from_angle(cls, f_m, beta):
        return cls(float(f_m), float(f_m * math.cos(beta)), float(beta))

    @property
    def f_mu_normalized(self):
        return self.f_mu / self.f_m if self.f_m > 0 else 0.0


@dataclass(frozen=True)
class DopplerMoments:
    mean: float
    mean_square: float
    spread: float


@dataclass(frozen=True)
class IStarParams:
    """Substitution constants of the parametric Doppler integral."""

    a: float
    b: float
    c: float

    @classmethod
    def from_model(cls, kappa, f_mu_normalized):
        fmu = float(np.clip(f_mu_normalized, -1.0, 1.0))
        return cls(
            0.5 * kappa_over_sinh(kappa),
            -kappa * fmu,
            kappa * math.sqrt(max(0.0, 1.0 - fmu * fmu)),
        )


def geometry(scat, motion):
    f_m = motion.max_doppler
    cosb = float(np.clip(np.dot(mean_direction(scat), motion.motion_direction), -1.0, 1.0))
    beta = math.acos(cosb)
    return DopplerGeometry(f_m, f_m * cosb, beta)


def doppler_pdf(scat, geom, f):
    """Density of the Doppler shift at ``f`` (Hz), for ``|f| <= f_m``.

    The exponent is rearranged as ``kappa (fmu f - 1) + z`` with the Bessel
    factor scaled by ``exp(-z)``; by Cauchy-Schwarz it never exceeds zero.
    """
    if geom.f_m <= 0:
        raise DomainError("Doppler density is degenerate for f_m = 0")
    f = np.asarray(f, dtype=float)
    x = f / geom.f_m
    if np.any(np.abs(x) > 1.0 + 1e-12):
        raise DomainError("|f| must not exceed f_m")
    x = np.clip(x, -1.0, 1.0)
    k = scat.kappa
    fmu = geom.f_mu_normalized
    z = k * math.sqrt(max(0.0, 1.0 - fmu * fmu)) * np.sqrt(1.0 - x * x)
    expo = k * (fmu * x - 1.0) + z
    out = 0.5 / geom.f_m * kappa_over_sinh_scaled(k) * np.exp(expo) * bessel_i0_scaled(z)
    return float(out) if out.ndim == 0 else out


def _closed_moments(kappa, f_m, f_mu, w_offset=0.0):
    # w_offset perturbs the Langevin factor; only used by fault injection
    w = langevin(kappa) + w_offset
    w_k = langevin_over_kappa(kappa) + (w_offset / kappa if kappa > 0 else 0.0)
    if w_offset:
        dw = 1.0 - w * w - 2.0 * w_k
    else:
        dw = langevin_derivative(kappa)
    fmu2 = f_mu * f_mu
    sin2 = max(0.0, f_m * f_m - fmu2)
    mean = w * f_mu
    # variance split into the perpendicular and parallel parts; at kappa = 0
    # both coefficients are exactly 1/3
    var = w_k * sin2 + dw * fmu2
    var = max(var, 0.0)
    return DopplerMoments(mean, var + mean * mean, math.sqrt(var))


def mean_doppler(scat, geom):
    return langevin(scat.kappa) * geom.f_mu


def mean_square_doppler(scat, geom):
    """Second raw moment ``(w/k) f_m^2 + (1 - 3 w/k) f_mu^2``."""
    return _closed_moments(scat.kappa, geom.f_m, geom.f_mu).mean_square


def doppler_spread(scat, geom):
    """Doppler spread (standard deviation of the Doppler shift) in Hz.

    Computed as ``sqrt((w/k) (f_m^2 - f_mu^2) + w'(k) f_mu^2)``, an exact
    rearrangement of the usual form whose terms never cancel.
    """
    return _closed_moments(scat.kappa, geom.f_m, geom.f_mu).spread


def moments(scat, geom):
    return _closed_moments(scat.kappa, geom.f_m, geom.f_mu)


def istar(p):
    """Closed form ``2 sinh(r) / r`` with ``r = sqrt(b^2 + c^2)``."""
    r = math.hypot(p.b, p.c)
    if r < 1e-4:
        return 2.0 * (1.0 + r * r / 6.0 + r**4 / 120.0)
    return 2.0 * math.sinh(r) / r


def normalized_moment(scat, geom, n, spec=None):
    """``E[(f_D / f_m)^n]``.

    Orders 1 and 2 use the closed forms; higher orders are integrated
    numerically with :func:`vmf_fading.oracle.moment_by_quadrature`.
    """
    if n < 1 or int(n) != n:
        raise DomainError("moment order must be an integer >= 1")
    fmu = geom.f_mu_normalized
    k = scat.kappa
    if n == 1:
        return langevin(k) * fmu
    if n == 2:
        wk = langevin_over_kappa(k)
        return wk + (1.0 - 3.0 * wk) * fmu * fmu
    from .oracle import moment_by_quadrature

    unit = DopplerGeometry(1.0, float(np.clip(fmu, -1.0, 1.0)), geom.beta)
    return moment_by_quadrature(scat, unit, int(n), spec)


def mixture_moments(components, motion):
    """Moments of a weighted mixture of vMF clusters sharing one motion.

    ``components`` is a sequence of ``(weight, VmfScattering)``; weights
    must be positive and sum to one. Raw moments combine linearly.
    """
    weights = np.array([w for w, _ in components], dtype=float)
    if len(weights) == 0 or np.any(weights <= 0) or abs(weights.sum() - 1.0) > 1e-12:
        raise DomainError("mixture weights must be positive and sum to 1")
    mean = 0.0
    msq = 0.0
    for w, scat in components:
        m = moments(scat, geometry(scat, motion))
        mean += w * m.mean
        msq += w * m.mean_square
    var = max(msq - mean * mean, 0.0)
    return DopplerMoments(mean, msq, math.sqrt(var))
