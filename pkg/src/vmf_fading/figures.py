"""Tabulated data behind the Doppler-spread and LCR/AFD figures.

Each function returns ``(columns, rows)``: a list of column names and a 2-D
array. LCR values are normalized by ``f_m`` and AFD values multiplied by
``f_m``, so the tables do not depend on speed or carrier. Every curve is
given twice, from the closed-form spread and from the quadrature spread.
"""

import math

import numpy as np

from .doppler import DopplerGeometry, doppler_spread
from .oracle import spread_by_quadrature
from .secondorder import afd, db_to_rho, lcr
from .vmf import VmfScattering


def _spreads(kappa, beta_deg):
    scat = VmfScattering(0.0, 0.0, kappa)
    geom = DopplerGeometry.from_angle(1.0, math.radians(beta_deg))
    return doppler_spread(scat, geom), spread_by_quadrature(scat, geom)[1]


def _tag(x):
    return format(x, "g")


def fig1(kappas, beta_step_deg=5.0):
    """Normalized Doppler spread over a (kappa, beta) grid."""
    betas = np.arange(0.0, 180.0 + 1e-9, beta_step_deg)
    rows = []
    for k in kappas:
        for b in betas:
            closed, quad = _spreads(k, b)
            rows.append((k, b, closed, quad))
    return ["kappa", "beta_deg", "spread_closed", "spread_oracle"], np.array(rows)


def fig2(levels_db, kappa=10.0, betas_deg=(0.0, 45.0, 90.0, 135.0, 180.0), envelope_step=1.0):
    """LCR versus level for several motion directions at fixed ``kappa``.

    ``lcr_min``/``lcr_max`` bound the curves over all directions, scanned on a
    ``envelope_step`` degree grid.
    """
    levels_db = np.asarray(levels_db, dtype=float)
    rho = db_to_rho(levels_db)
    cols = ["level_db", "rho"]
    data = [levels_db, rho]
    for b in betas_deg:
        closed, quad = _spreads(kappa, b)
        cols += [f"lcr_beta{_tag(b)}", f"lcr_beta{_tag(b)}_oracle"]
        data += [lcr(closed, rho), lcr(quad, rho)]
    scan = [_spreads(kappa, b)[0] for b in np.arange(0.0, 180.0 + 1e-9, envelope_step)]
    cols += ["lcr_min", "lcr_max"]
    data += [lcr(min(scan), rho), lcr(max(scan), rho)]
    return cols, np.column_stack(data)


def _kappa_sweep(levels_db, kappas, beta_deg, func, prefix):
    levels_db = np.asarray(levels_db, dtype=float)
    rho = db_to_rho(levels_db)
    cols = ["level_db", "rho"]
    data = [levels_db, rho]
    for k in kappas:
        closed, quad = _spreads(k, beta_deg)
        cols += [f"{prefix}_kappa{_tag(k)}", f"{prefix}_kappa{_tag(k)}_oracle"]
        data += [func(closed, rho), func(quad, rho)]
    return cols, np.column_stack(data)


def fig3(levels_db, kappas=(0.0, 1.0, 3.0, 10.0, 30.0, 100.0, 1000.0), beta_deg=0.0):
    """LCR versus level for several concentrations."""
    return _kappa_sweep(levels_db, kappas, beta_deg, lcr, "lcr")


def fig4(levels_db, kappas=(0.0, 1.0, 3.0, 10.0, 30.0, 100.0, 1000.0), beta_deg=0.0):
    """AFD versus level for several concentrations."""
    return _kappa_sweep(levels_db, kappas, beta_deg, afd, "afd")
