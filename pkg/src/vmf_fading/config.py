"""Experiment configuration: flat ``key = value`` text files plus overrides.

Angles are given in degrees here and converted to radians exactly once,
when the model objects are built.
"""

from dataclasses import dataclass, fields, replace
import math

import numpy as np

from .doppler import SPEED_OF_LIGHT, MotionConfig
from .errors import DomainError
from .secondorder import db_to_rho
from .simulator import MIN_SAMPLES_PER_FM, ChannelConfig
from .vmf import VmfScattering

__all__ = ["ConfigError", "ExperimentConfig", "parse_config", "load_config", "apply_overrides"]


class ConfigError(ValueError):
    """Invalid configuration; the message names the offending field or line."""


def _floats(text):
    return tuple(float(t) for t in str(text).replace(",", " ").split())


@dataclass(frozen=True)
class ExperimentConfig:
    scenario: str = "default"
    kappa: float = 10.0
    mu_phi_deg: float = 0.0
    mu_psi_deg: float = 0.0
    speed: float = 10.0
    motion_azimuth_deg: float = 0.0
    motion_elevation_deg: float = 0.0
    # overrides the motion direction: angle between motion and mean direction
    beta_deg: float = None
    carrier_hz: float = None
    wavelength_m: float = None
    level_min_db: float = -30.0
    level_max_db: float = 10.0
    level_step_db: float = 0.25
    omega: float = 1.0
    n_paths: int = 128
    duration: float = None
    dt_factor: float = 32.0
    realizations: int = 20
    seed: int = 0
    output: str = None
    kappas: tuple = (0.0, 1.0, 3.0, 10.0, 30.0, 100.0, 1000.0)
    betas_deg: tuple = (0.0, 45.0, 90.0, 135.0, 180.0)
    fig1_kappas: tuple = (0.0, 0.1, 0.3, 1.0, 3.0, 10.0, 30.0, 100.0)
    fig1_beta_step_deg: float = 5.0
    fig_kappa: float = 10.0

    def __post_init__(self):
        if self.carrier_hz is not None and self.wavelength_m is not None:
            raise ConfigError("carrier_hz and wavelength_m are mutually exclusive")
        if self.carrier_hz is None and self.wavelength_m is None:
            object.__setattr__(self, "carrier_hz", 2.0e9)
        if self.carrier_hz is not None and not self.carrier_hz > 0:
            raise ConfigError("carrier_hz: must be > 0")
        if self.wavelength_m is not None and not self.wavelength_m > 0:
            raise ConfigError("wavelength_m: must be > 0")
        if not (math.isfinite(self.kappa) and self.kappa >= 0):
            raise ConfigError("kappa: must be finite and >= 0")
        if not (math.isfinite(self.speed) and self.speed >= 0):
            raise ConfigError("speed: must be finite and >= 0")
        if abs(self.mu_psi_deg) > 90 or abs(self.motion_elevation_deg) > 90:
            raise ConfigError("mu_psi_deg/motion_elevation_deg: must lie in [-90, 90]")
        if self.beta_deg is not None and not 0 <= self.beta_deg <= 180:
            raise ConfigError("beta_deg: must lie in [0, 180]")
        if not self.level_step_db > 0 or self.level_max_db < self.level_min_db:
            raise ConfigError("level grid: need level_step_db > 0 and max >= min")
        if not self.omega > 0:
            raise ConfigError("omega: must be > 0")
        if self.n_paths < 1:
            raise ConfigError("n_paths: must be >= 1")
        if self.realizations < 1:
            raise ConfigError("realizations: must be >= 1")
        if self.seed < 0:
            raise ConfigError("seed: must be >= 0")
        if self.dt_factor < MIN_SAMPLES_PER_FM:
            raise ConfigError(f"dt_factor: must be >= {MIN_SAMPLES_PER_FM}")
        if self.duration is not None and not self.duration > 0:
            raise ConfigError("duration: must be > 0")
        if any(k < 0 for k in self.kappas + self.fig1_kappas) or self.fig_kappa < 0:
            raise ConfigError("kappas: values must be >= 0")
        if any(not 0 <= b <= 180 for b in self.betas_deg):
            raise ConfigError("betas_deg: values must lie in [0, 180]")

    @property
    def wavelength(self):
        if self.wavelength_m is not None:
            return self.wavelength_m
        return SPEED_OF_LIGHT / self.carrier_hz

    @property
    def f_m(self):
        return self.speed / self.wavelength

    def scattering(self, kappa=None):
        try:
            return VmfScattering.from_degrees(
                self.mu_phi_deg, self.mu_psi_deg, self.kappa if kappa is None else kappa
            )
        except DomainError as exc:
            raise ConfigError(f"scattering: {exc}") from None

    def motion(self, scat=None, beta_deg=None):
        scat = scat or self.scattering()
        beta = self.beta_deg if beta_deg is None else beta_deg
        if beta is not None:
            return MotionConfig.at_angle(scat, math.radians(beta), self.speed, self.wavelength)
        return MotionConfig.from_angles(
            self.speed,
            math.radians(self.motion_azimuth_deg),
            math.radians(self.motion_elevation_deg),
            self.wavelength,
        )

    def levels_db(self):
        n = int(math.floor((self.level_max_db - self.level_min_db) / self.level_step_db + 1e-9))
        return self.level_min_db + self.level_step_db * np.arange(n + 1)

    def levels(self):
        return db_to_rho(self.levels_db())

    def sim_duration(self):
        if self.duration is not None:
            return self.duration
        return 400.0 / self.f_m if self.f_m > 0 else 1.0

    def sim_dt(self):
        return 1.0 / (self.dt_factor * self.f_m) if self.f_m > 0 else self.sim_duration() / 1024

    def channel(self, seed=None):
        scat = self.scattering()
        return ChannelConfig(
            self.n_paths, self.omega, scat, self.motion(scat), 0.0,
            self.seed if seed is None else seed,
        )

    def echo(self):
        """``key=value`` tokens for every field, used in CSV headers.

        ``output`` is left out: the destination does not change the content.
        """
        parts = []
        for f in fields(self):
            if f.name == "output":
                continue
            v = getattr(self, f.name)
            if isinstance(v, tuple):
                v = ",".join(_fmt(x) for x in v)
            elif isinstance(v, float):
                v = _fmt(v)
            parts.append(f"{f.name}={v}")
        return " ".join(parts)


def _fmt(x):
    return format(float(x), ".17g")


_FIELD_TYPES = {f.name: f for f in fields(ExperimentConfig)}
_INT_FIELDS = {"n_paths", "realizations", "seed"}
_STR_FIELDS = {"scenario", "output"}
_TUPLE_FIELDS = {"kappas", "betas_deg", "fig1_kappas"}
_OPTIONAL = {"beta_deg", "carrier_hz", "wavelength_m", "duration", "output"}


def _convert(key, raw):
    raw = raw.strip()
    if key in _OPTIONAL and raw.lower() in ("", "none"):
        return None
    if key in _STR_FIELDS:
        return raw
    if key in _TUPLE_FIELDS:
        return _floats(raw)
    if key in _INT_FIELDS:
        return int(raw)
    value = float(raw)
    if not math.isfinite(value):
        raise ValueError("not finite")
    return value


def _parse_pairs(lines, source):
    values = {}
    for lineno, line in enumerate(lines, 1):
        text = line.split("#", 1)[0].strip()
        if not text:
            continue
        if "=" not in text:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value'")
        key, raw = (s.strip() for s in text.split("=", 1))
        if key not in _FIELD_TYPES:
            raise ConfigError(f"{source}:{lineno}: unknown key '{key}'")
        try:
            values[key] = _convert(key, raw)
        except ValueError:
            raise ConfigError(f"{source}:{lineno}: bad value for '{key}': {raw!r}") from None
    return values


def parse_config(text, source="<config>"):
    values = _parse_pairs(text.splitlines(), source)
    return _build(ExperimentConfig(), values)


def load_config(path):
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read(), source=str(path))


def apply_overrides(config, overrides):
    """Apply ``key=value`` strings (from the command line) on top of ``config``."""
    values = _parse_pairs(overrides, "--set")
    return _build(config, values)


def _build(base, values):
    # carrier and wavelength replace each other instead of clashing
    if "wavelength_m" in values and "carrier_hz" not in values:
        values["carrier_hz"] = None
    if "carrier_hz" in values and "wavelength_m" not in values:
        values["wavelength_m"] = None
    try:
        return replace(base, **values)
    except ConfigError:
        raise
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from None
