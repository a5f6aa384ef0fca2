"""Scalar special functions with overflow-safe evaluation.

Everything here works in plain IEEE double precision and accepts either
Python floats or numpy arrays. Scalar input gives a Python float back.
"""

import math

import numpy as np
from scipy.special import bernoulli

from .errors import DomainError

__all__ = [
    "bessel_i0_scaled",
    "langevin",
    "langevin_over_kappa",
    "langevin_derivative",
    "kappa_over_sinh",
    "kappa_over_sinh_scaled",
]

# Power series is used below this argument, asymptotic expansion above it.
# At 30 the smallest asymptotic term is ~e^-60, far below double eps.
_I0_SWITCH = 30.0
_I0_SERIES_TERMS = 90
_I0_ASYMPTOTIC_TERMS = 40

# coth(k) - 1/k = sum_n c_n k^(2n-1), c_n = 2^(2n) B_(2n) / (2n)!
_N_COTH = 18
_B = bernoulli(2 * _N_COTH)
_COTH_COEFFS = np.array(
    [2.0 ** (2 * n) * _B[2 * n] / math.factorial(2 * n) for n in range(1, _N_COTH + 1)]
)
_LANGEVIN_SWITCH = 1.0


def _as_array(x, name):
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} must be finite")
    if np.any(arr < 0):
        raise DomainError(f"{name} must be non-negative")
    return np.atleast_1d(arr), arr.ndim == 0


def _ret(arr, scalar):
    return float(arr[0]) if scalar else arr


def bessel_i0_scaled(x):
    """Exponentially scaled modified Bessel function ``exp(-x) * I0(x)``.

    Uses the ascending power series for ``x <= 30`` and the Hankel
    asymptotic expansion above, so arguments far beyond the overflow
    point of ``I0`` itself are fine.
    """
    x, scalar = _as_array(x, "x")
    out = np.empty_like(x)

    small = x <= _I0_SWITCH
    if np.any(small):
        xs = x[small]
        q = 0.25 * xs * xs
        term = np.ones_like(xs)
        total = np.ones_like(xs)
        for k in range(1, _I0_SERIES_TERMS):
            term = term * q / (k * k)
            total += term
        out[small] = total * np.exp(-xs)

    large = ~small
    if np.any(large):
        xl = x[large]
        term = np.ones_like(xl)
        total = np.ones_like(xl)
        for k in range(1, _I0_ASYMPTOTIC_TERMS):
            term = term * (2 * k - 1) ** 2 / (8.0 * k * xl)
            total += term
        out[large] = total / np.sqrt(2.0 * np.pi * xl)

    return _ret(out, scalar)


def _coth_series(k, power_shift, weights=None):
    # sum_n c_n * w_n * k^(2n-1-power_shift), Horner in k^2
    k2 = k * k
    coeffs = _COTH_COEFFS if weights is None else _COTH_COEFFS * weights
    acc = np.zeros_like(k)
    for c in coeffs[::-1]:
        acc = acc * k2 + c
    return acc * k ** (1 - power_shift)


def langevin(kappa):
    """Langevin function ``coth(kappa) - 1/kappa``, the vMF mean resultant length.

    Continuous at zero (returns 0) and accurate to a few ulp everywhere;
    small arguments go through the Bernoulli series.
    """
    k, scalar = _as_array(kappa, "kappa")
    out = np.empty_like(k)
    s = k < _LANGEVIN_SWITCH
    out[s] = _coth_series(k[s], 0)
    kl = k[~s]
    out[~s] = 1.0 / np.tanh(kl) - 1.0 / kl
    return _ret(out, scalar)


def langevin_over_kappa(kappa):
    """``langevin(kappa) / kappa`` with the limit 1/3 at ``kappa = 0``."""
    k, scalar = _as_array(kappa, "kappa")
    out = np.empty_like(k)
    s = k < _LANGEVIN_SWITCH
    out[s] = _coth_series(k[s], 1)
    kl = k[~s]
    out[~s] = (1.0 / np.tanh(kl) - 1.0 / kl) / kl
    return _ret(out, scalar)


def langevin_derivative(kappa):
    """Derivative of the Langevin function, ``1/kappa^2 - 1/sinh(kappa)^2``.

    This is also the variance of ``cos(theta)`` under a vMF law on the
    sphere. The csch^2 term is formed from ``exp(-2 kappa)`` so that large
    arguments do not overflow.
    """
    k, scalar = _as_array(kappa, "kappa")
    out = np.empty_like(k)
    s = k < _LANGEVIN_SWITCH
    orders = 2.0 * np.arange(1, _N_COTH + 1) - 1.0
    out[s] = _coth_series(k[s], 1, weights=orders)
    kl = k[~s]
    e2 = np.exp(-2.0 * kl)
    out[~s] = 1.0 / (kl * kl) - 4.0 * e2 / (-np.expm1(-2.0 * kl)) ** 2
    return _ret(out, scalar)


def kappa_over_sinh(kappa):
    """``kappa / sinh(kappa)``, equal to 1 at zero.

    For ``kappa > 1`` the value is formed as
    ``2 kappa e^-kappa / (1 - e^-2kappa)``. It underflows to 0.0 once
    ``kappa`` exceeds roughly 745.
    """
    k, scalar = _as_array(kappa, "kappa")
    out = np.empty_like(k)
    tiny = k < 1e-8
    out[tiny] = 1.0 - k[tiny] ** 2 / 6.0
    mid = ~tiny & (k <= 1.0)
    out[mid] = k[mid] / np.sinh(k[mid])
    big = k > 1.0
    kb = k[big]
    out[big] = 2.0 * kb * np.exp(-kb) / (-np.expm1(-2.0 * kb))
    return _ret(out, scalar)


def kappa_over_sinh_scaled(kappa):
    """``kappa * exp(kappa) / sinh(kappa)`` (equals ``2 kappa / (1 - e^-2kappa)``).

    Pairs with exponents of the form ``kappa * (u - 1)`` so that vMF
    densities stay finite for very large concentrations.
    """
    k, scalar = _as_array(kappa, "kappa")
    out = np.empty_like(k)
    tiny = k < 1e-8
    out[tiny] = 1.0 + k[tiny]
    rest = ~tiny
    out[rest] = 2.0 * k[rest] / (-np.expm1(-2.0 * k[rest]))
    return _ret(out, scalar)
