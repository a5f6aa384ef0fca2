"""Numerical-integration engine used as ground truth for the closed forms.

Nothing in this module touches :mod:`vmf_fading.doppler` closed forms; the
integrands are assembled directly from the scaled special functions.
"""

from dataclasses import dataclass
import math

import numpy as np
from numpy.polynomial.legendre import leggauss

from .errors import ConvergenceError, DomainError
from .specfun import bessel_i0_scaled, kappa_over_sinh_scaled
from .vmf import vmf_pdf

__all__ = [
    "QuadratureSpec",
    "graded_breakpoints",
    "integrate",
    "moment_by_quadrature",
    "central_moment_by_quadrature",
    "spread_by_quadrature",
    "istar_by_quadrature",
    "sphere_normalization",
]


@dataclass(frozen=True)
class QuadratureSpec:
    """Composite Gauss-Legendre settings.

    nodes: Gauss points per panel.
    panels: initial number of equal sub-panels per graded segment.
    tolerance: relative change between successive panel doublings that
        counts as converged.
    max_doublings: refinement cap before giving up.
    """

    nodes: int = 24
    panels: int = 2
    tolerance: float = 1e-13
    max_doublings: int = 8

    def __post_init__(self):
        if self.nodes < 8:
            raise DomainError("nodes must be >= 8")
        if self.panels < 1:
            raise DomainError("panels must be >= 1")
        if not self.tolerance > 0:
            raise DomainError("tolerance must be > 0")


DEFAULT_SPEC = QuadratureSpec()


def graded_breakpoints(lo, hi, peak, width):
    """Panel edges on [lo, hi], geometrically refined around ``peak``.

    Edges sit at ``peak +- width * 2^j``. With ``width >= hi - lo`` the
    result is just the two end points plus the clipped peak.
    """
    pts = {lo, hi}
    if lo < peak < hi:
        pts.add(peak)
    if width < hi - lo:
        step = width
        while step < hi - lo:
            for p in (peak - step, peak + step):
                if lo < p < hi:
                    pts.add(p)
            step *= 2.0
    return np.array(sorted(pts))


def _composite(fun, edges, nodes):
    x, w = leggauss(nodes)
    a = edges[:-1, None]
    b = edges[1:, None]
    half = 0.5 * (b - a)
    pts = 0.5 * (a + b) + half * x
    vals = fun(pts.ravel()).reshape(pts.shape)
    return float(np.sum(half * w * vals))


def _subdivide(edges, k):
    t = np.linspace(0.0, 1.0, k + 1)[:-1]
    a = edges[:-1, None]
    b = edges[1:, None]
    inner = (a + (b - a) * t).ravel()
    return np.append(inner, edges[-1])


def integrate(fun, edges, spec=DEFAULT_SPEC):
    """Integrate a vectorized ``fun`` over panels ``edges`` with doubling.

    Every panel is split into ``spec.panels`` pieces, then all panels are
    halved until successive estimates agree to ``spec.tolerance``
    (relative). Raises :class:`ConvergenceError` when the cap is hit.
    """
    edges = _subdivide(np.asarray(edges, dtype=float), spec.panels)
    prev = _composite(fun, edges, spec.nodes)
    for _ in range(spec.max_doublings):
        edges = _subdivide(edges, 2)
        cur = _composite(fun, edges, spec.nodes)
        if abs(cur - prev) <= spec.tolerance * max(abs(cur), 1e-300):
            return cur
        prev = cur
    raise ConvergenceError(
        f"quadrature did not reach rel. tol {spec.tolerance:g} "
        f"after {spec.max_doublings} doublings (last change {abs(cur - prev):.3g})"
    )


def _width(kappa):
    # angular scale of the Doppler law: ~1/kappa along the mean direction
    return 1.0 / kappa if kappa > 1.0 else 2.0


def _unit_density_parts(kappa, fmu):
    c = kappa * math.sqrt(max(0.0, 1.0 - fmu * fmu))
    pref = 0.5 * kappa_over_sinh_scaled(kappa)
    return c, pref


def moment_by_quadrature(scat, geom, n, spec=None):
    """Raw moment ``E[f_D^n]`` (Hz^n) of the Doppler density by quadrature.

    The density is folded onto [0, 1] in normalized frequency using its
    parity, so odd moments near zero keep full relative accuracy. ``n = 0``
    gives the normalization.
    """
    spec = spec or DEFAULT_SPEC
    if n < 0 or int(n) != n:
        raise DomainError("n must be an integer >= 0")
    if geom.f_m <= 0:
        raise DomainError("f_m must be > 0")
    n = int(n)
    k = scat.kappa
    s = float(np.clip(geom.f_mu / geom.f_m, -1.0, 1.0))
    c, pref = _unit_density_parts(k, s)
    a = abs(s)
    odd = n % 2 == 1
    sign = math.copysign(1.0, s)

    def folded(x):
        z = c * np.sqrt(np.clip(1.0 - x * x, 0.0, None))
        base = pref * np.exp(k * (a * x - 1.0) + z) * bessel_i0_scaled(z)
        if odd:
            pair = sign * -np.expm1(-2.0 * k * a * x)
        else:
            pair = 1.0 + np.exp(-2.0 * k * a * x)
        return x**n * base * pair

    edges = graded_breakpoints(0.0, 1.0, a, _width(k))
    return geom.f_m**n * integrate(folded, edges, spec)


def central_moment_by_quadrature(scat, geom, n, center, spec=None):
    """``E[(f_D - center)^n]`` integrated over the full band."""
    spec = spec or DEFAULT_SPEC
    k = scat.kappa
    s = float(np.clip(geom.f_mu / geom.f_m, -1.0, 1.0))
    c, pref = _unit_density_parts(k, s)
    m = center / geom.f_m

    def integrand(x):
        z = c * np.sqrt(np.clip(1.0 - x * x, 0.0, None))
        return (x - m) ** n * pref * np.exp(k * (s * x - 1.0) + z) * bessel_i0_scaled(z)

    edges = graded_breakpoints(-1.0, 1.0, s, _width(k))
    return geom.f_m**n * integrate(integrand, edges, spec)


def spread_by_quadrature(scat, geom, spec=None):
    """Return ``(mean, spread)`` of the Doppler shift by quadrature."""
    mean = moment_by_quadrature(scat, geom, 1, spec)
    var = central_moment_by_quadrature(scat, geom, 2, mean, spec)
    return mean, math.sqrt(max(var, 0.0))


def istar_by_quadrature(p, spec=None):
    """``int_{-1}^{1} exp(-b x) I0(c sqrt(1 - x^2)) dx`` by quadrature."""
    spec = spec or DEFAULT_SPEC
    b, c = float(p.b), float(p.c)
    r = math.hypot(b, c)

    def integrand(x):
        z = c * np.sqrt(np.clip(1.0 - x * x, 0.0, None))
        return np.exp(-b * x + z - r) * bessel_i0_scaled(z)

    peak = -b / r if r > 0 else 0.0
    edges = graded_breakpoints(-1.0, 1.0, peak, _width(r))
    return math.exp(r) * integrate(integrand, edges, spec)


def _wrap_breaks(lo, hi, center, width):
    # periodic axis: grade around the mode and its 2*pi images
    pts = set()
    for shift in (-2 * math.pi, 0.0, 2 * math.pi):
        pts.update(graded_breakpoints(lo, hi, center + shift, width).tolist())
    return np.array(sorted(pts))


def sphere_normalization(scat, spec=None):
    """Total mass of :func:`vmf_fading.vmf.vmf_pdf` on the angle domain.

    Tensor-product Gauss-Legendre over azimuth and elevation with panels
    graded toward the mean direction (width ``~1/sqrt(kappa)``).
    """
    spec = spec or DEFAULT_SPEC
    k = scat.kappa
    width = 1.0 / math.sqrt(k) if k > 1.0 else 4.0
    phi_edges = _wrap_breaks(-math.pi, math.pi, scat.mu_phi, width)
    psi_edges = graded_breakpoints(-math.pi / 2, math.pi / 2, scat.mu_psi, width)
    x, w = leggauss(spec.nodes)

    def nodes_for(edges):
        a = edges[:-1, None]
        b = edges[1:, None]
        half = 0.5 * (b - a)
        return (0.5 * (a + b) + half * x).ravel(), (half * w).ravel()

    def total(pe, se):
        ph, wph = nodes_for(pe)
        ps, wps = nodes_for(se)
        dens = vmf_pdf(scat, ph[:, None], ps[None, :])
        return float(wph @ dens @ wps)

    pe = _subdivide(phi_edges, spec.panels)
    se = _subdivide(psi_edges, spec.panels)
    prev = total(pe, se)
    for _ in range(spec.max_doublings):
        pe, se = _subdivide(pe, 2), _subdivide(se, 2)
        cur = total(pe, se)
        if abs(cur - prev) <= spec.tolerance * abs(cur):
            return cur
        prev = cur
    raise ConvergenceError("sphere quadrature did not converge")
