"""Level-crossing rate and average fade duration of a Rayleigh envelope.

Levels ``rho`` are envelope amplitudes normalized to the RMS value
``sqrt(Omega)``. The Doppler spread ``sigma_d`` (Hz) carries all of the
scattering and motion dependence.
"""

from dataclasses import dataclass
import math

import numpy as np

from .doppler import doppler_spread, geometry
from .errors import DomainError

__all__ = ["LcrAfdCurve", "lcr", "afd", "max_lcr", "curve", "db_to_rho", "rho_to_db"]

SQRT_PI = math.sqrt(math.pi)


def db_to_rho(level_db):
    """Envelope level in dB relative to RMS -> linear ``rho``."""
    return 10.0 ** (np.asarray(level_db, dtype=float) / 20.0)


def rho_to_db(rho):
    return 20.0 * np.log10(rho)


def _check_rho(rho):
    r = np.asarray(rho, dtype=float)
    if not np.all(np.isfinite(r)) or np.any(r <= 0):
        raise DomainError("normalized level rho must be finite and > 0")
    return r


def _check_sigma(sigma_d):
    if not math.isfinite(sigma_d) or sigma_d < 0:
        raise DomainError("Doppler spread must be finite and >= 0")


def _out(x):
    return float(x) if np.ndim(x) == 0 else x


def lcr(sigma_d, rho):
    """Level-crossing rate ``2 sqrt(pi) sigma_d rho exp(-rho^2)`` in crossings/s."""
    _check_sigma(sigma_d)
    r = _check_rho(rho)
    return _out(2.0 * SQRT_PI * sigma_d * r * np.exp(-r * r))


def afd(sigma_d, rho):
    """Average fade duration ``(exp(rho^2) - 1) / (2 sqrt(pi) sigma_d rho)`` in s.

    A zero spread means a frozen envelope; the duration is then ``inf``.
    """
    _check_sigma(sigma_d)
    r = _check_rho(rho)
    if sigma_d == 0:
        return _out(np.full_like(r, math.inf))
    return _out(np.expm1(r * r) / (2.0 * SQRT_PI * sigma_d * r))


def max_lcr(sigma_d):
    """Level and value of the LCR maximum: ``(1/sqrt(2), sigma_d sqrt(2 pi / e))``."""
    _check_sigma(sigma_d)
    return 1.0 / math.sqrt(2.0), sigma_d * math.sqrt(2.0 * math.pi / math.e)


@dataclass(frozen=True)
class LcrAfdCurve:
    levels: np.ndarray
    lcr: np.ndarray
    afd: np.ndarray
    sigma_d: float

    def __post_init__(self):
        if not (len(self.levels) == len(self.lcr) == len(self.afd)):
            raise DomainError("curve arrays must have equal length")

    @property
    def levels_db(self):
        return rho_to_db(self.levels)


def curve(scat, motion, levels):
    """LCR and AFD for one cluster/motion pair on a strictly increasing level grid."""
    rho = _check_rho(levels)
    if rho.ndim != 1 or rho.size == 0:
        raise DomainError("levels must be a non-empty 1-D sequence")
    if np.any(np.diff(rho) <= 0):
        raise DomainError("levels must be strictly increasing")
    sigma = doppler_spread(scat, geometry(scat, motion))
    return LcrAfdCurve(
        rho.copy(),
        np.atleast_1d(lcr(sigma, rho)),
        np.atleast_1d(afd(sigma, rho)),
        sigma,
    )
