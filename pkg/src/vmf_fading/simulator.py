"""Sum-of-sinusoids channel with vMF arrival directions.

A realization fixes N_m paths with equal amplitudes ``sqrt(Omega/N_m)``,
uniform initial phases and vMF-drawn arrival directions. The channel at a
fixed frequency is then

    H(t) = sum_n A_n exp(j phi_n) exp(-j 2 pi f_n t)

(the minus sign follows the usual phasor convention for the Doppler term).
Envelope statistics estimated from sampled ``|H(t)|`` close the loop with
the analytic LCR/AFD.
"""

from dataclasses import dataclass, field
import math

import numpy as np
from scipy import stats

from .doppler import DopplerMoments, MotionConfig
from .errors import DomainError, SamplingError
from .vmf import VmfScattering, sample_directions

__all__ = [
    "ChannelConfig",
    "ChannelRealization",
    "EnvelopeSeries",
    "EmpiricalSecondOrder",
    "MIN_SAMPLES_PER_FM",
    "realize",
    "channel_series",
    "envelope",
    "estimate_lcr_afd",
    "estimate_doppler_moments",
    "realization_seed",
    "rayleigh_ks",
    "monte_carlo_lcr_afd",
]

# sampling contract: dt * f_m <= 1/32
MIN_SAMPLES_PER_FM = 32

_PHASE_STREAM = 0x7068617365  # "phase"


@dataclass(frozen=True)
class ChannelConfig:
    n_paths: int
    omega: float
    scat: VmfScattering
    motion: MotionConfig
    carrier_offset: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if int(self.n_paths) != self.n_paths or self.n_paths < 1:
            raise DomainError("n_paths must be an integer >= 1")
        if not (math.isfinite(self.omega) and self.omega > 0):
            raise DomainError("omega must be > 0")
        if self.seed < 0:
            raise DomainError("seed must be >= 0")


@dataclass(frozen=True)
class ChannelRealization:
    amplitudes: np.ndarray
    phases: np.ndarray
    doas: np.ndarray
    dopplers: np.ndarray
    f_m: float = 0.0

    @property
    def n_paths(self):
        return len(self.amplitudes)

    @property
    def omega(self):
        return float(np.sum(self.amplitudes**2))


@dataclass
class EnvelopeSeries:
    """Uniformly sampled envelope ``|H(t_i)|`` with ``t_i = i * dt``."""

    samples: np.ndarray
    dt: float
    rms_ref: float
    iq: np.ndarray = field(default=None, repr=False)

    @property
    def times(self):
        return np.arange(len(self.samples)) * self.dt

    @property
    def duration(self):
        return (len(self.samples) - 1) * self.dt


@dataclass
class EmpiricalSecondOrder:
    """Counts and estimates per level. ``afd_hat`` is NaN where no fade completed."""

    levels: np.ndarray
    lcr_hat: np.ndarray
    afd_hat: np.ndarray
    n_crossings: np.ndarray
    n_fades: np.ndarray
    total_fade_time: np.ndarray
    time_below: np.ndarray


def realization_seed(seed, index):
    """Deterministic 63-bit sub-seed for realization ``index`` of a batch."""
    ss = np.random.SeedSequence([seed, index])
    return int(ss.generate_state(1, dtype=np.uint64)[0] >> np.uint64(1))


def realize(config):
    n = int(config.n_paths)
    amps = np.full(n, math.sqrt(config.omega / n))
    phase_rng = np.random.Generator(
        np.random.PCG64(np.random.SeedSequence([config.seed, _PHASE_STREAM]))
    )
    phases = phase_rng.random(n) * 2.0 * math.pi
    # carrier offset times the initial delays is absorbed into the uniform phases
    doas = sample_directions(config.scat, n, config.seed)
    v = config.motion.speed * np.asarray(config.motion.motion_direction)
    dopplers = doas @ v / config.motion.wavelength
    return ChannelRealization(amps, phases, doas, dopplers, config.motion.max_doppler)


def _check_dt(real, dt):
    if not dt > 0:
        raise SamplingError("dt must be > 0")
    if real.f_m > 0 and dt * real.f_m > 1.0 / MIN_SAMPLES_PER_FM * (1 + 1e-12):
        raise SamplingError(
            f"dt = {dt:g} s too coarse: need dt <= 1/({MIN_SAMPLES_PER_FM} f_m) "
            f"= {1.0 / (MIN_SAMPLES_PER_FM * real.f_m):g} s"
        )


def channel_series(real, duration, dt, chunk=4096):
    """Complex samples ``H(i dt)`` for ``i = 0 .. floor(duration/dt)``."""
    _check_dt(real, dt)
    n_samples = int(math.floor(duration / dt + 1e-9)) + 1
    if n_samples < 2:
        raise SamplingError("series needs at least two samples")
    weights = real.amplitudes * np.exp(1j * real.phases)
    w = -2.0 * math.pi * real.dopplers
    out = np.empty(n_samples, dtype=complex)
    for lo in range(0, n_samples, chunk):
        t = np.arange(lo, min(lo + chunk, n_samples)) * dt
        out[lo : lo + len(t)] = np.exp(1j * np.outer(t, w)) @ weights
    return out


def envelope(real, duration, dt):
    h = channel_series(real, duration, dt)
    return EnvelopeSeries(np.abs(h), dt, math.sqrt(real.omega), iq=h)


def estimate_lcr_afd(series, levels):
    """Empirical up-crossing rate and fade duration at normalized ``levels``.

    A sample equal to the threshold counts as above it, so an up-crossing is
    ``x[i] < thr <= x[i+1]``. Fades that touch either end of the record are
    left out of the duration estimate.
    """
    x = np.asarray(series.samples, dtype=float)
    if x.size < 2:
        raise DomainError("series must contain at least two samples")
    levels = np.atleast_1d(np.asarray(levels, dtype=float))
    if np.any(levels <= 0):
        raise DomainError("levels must be > 0")
    dur = series.duration
    out = {k: np.zeros(len(levels)) for k in ("lcr", "afd", "nc", "nf", "tf", "tb")}
    for j, rho in enumerate(levels):
        below = x < rho * series.rms_ref
        b = below.astype(np.int8)
        d = np.diff(b)
        ups = np.flatnonzero(d == -1)  # last below sample before rising
        downs = np.flatnonzero(d == 1) + 1  # first below sample of a fade
        n_up = len(ups)
        # pair each fade start with the next rise; drop boundary fades
        if below[0]:
            ups_c = ups[1:]
        else:
            ups_c = ups
        m = min(len(downs), len(ups_c))
        lengths = ups_c[:m] - downs[:m] + 1
        fade_time = float(lengths.sum()) * series.dt
        out["nc"][j] = n_up
        out["nf"][j] = m
        out["tf"][j] = fade_time
        out["tb"][j] = below.mean()
        out["lcr"][j] = n_up / dur
        out["afd"][j] = fade_time / m if m > 0 else math.nan
    return EmpiricalSecondOrder(
        levels,
        out["lcr"],
        out["afd"],
        out["nc"].astype(int),
        out["nf"].astype(int),
        out["tf"],
        out["tb"],
    )


def estimate_doppler_moments(real):
    """Sample mean, mean square and unbiased spread of the per-path Doppler shifts."""
    f = np.asarray(real.dopplers, dtype=float)
    if f.size < 2:
        raise DomainError("need at least two paths")
    mean = float(f.mean())
    var = float(f.var(ddof=1))
    return DopplerMoments(mean, float(np.mean(f * f)), math.sqrt(var))


def rayleigh_ks(samples, omega, decorrelation=1):
    """Kolmogorov-Smirnov test of envelope samples against Rayleigh(Omega).

    ``decorrelation`` thins the record so that retained samples are roughly
    independent; the KS null distribution assumes i.i.d. draws.
    """
    x = np.asarray(samples, dtype=float)[:: max(1, int(decorrelation))]
    return stats.kstest(x, stats.rayleigh(scale=math.sqrt(omega / 2.0)).cdf)


def monte_carlo_lcr_afd(config, levels, realizations, duration, dt, keep_samples=None):
    """Average the empirical LCR/AFD over independent realizations.

    Realization ``r`` uses seed :func:`realization_seed(config.seed, r)`, so
    the result does not depend on execution order. LCR is pooled as total
    crossings over total time, AFD as total fade time over total fades.
    ``keep_samples`` (a stride) collects thinned envelope samples as well.
    """
    levels = np.atleast_1d(np.asarray(levels, dtype=float))
    crossings = np.zeros(len(levels))
    fades = np.zeros(len(levels))
    fade_time = np.zeros(len(levels))
    total = 0.0
    kept = []
    for r in range(realizations):
        cfg = ChannelConfig(
            config.n_paths,
            config.omega,
            config.scat,
            config.motion,
            config.carrier_offset,
            realization_seed(config.seed, r),
        )
        series = envelope(realize(cfg), duration, dt)
        est = estimate_lcr_afd(series, levels)
        crossings += est.n_crossings
        fades += est.n_fades
        fade_time += est.total_fade_time
        total += series.duration
        if keep_samples:
            kept.append(series.samples[:: int(keep_samples)])
    with np.errstate(invalid="ignore", divide="ignore"):
        afd_hat = np.where(fades > 0, fade_time / fades, np.nan)
    result = EmpiricalSecondOrder(
        levels,
        crossings / total,
        afd_hat,
        crossings.astype(int),
        fades.astype(int),
        fade_time,
        np.full(len(levels), np.nan),
    )
    if keep_samples:
        return result, np.concatenate(kept)
    return result
