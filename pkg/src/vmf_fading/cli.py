"""Command-line front end.

Subcommands: moments, lcr, afd, pdf, simulate, figures, verify.
Exit codes: 0 success, 1 validation error, 2 verification failure, 3 I/O error.
"""

import argparse
import json
import math
import os
import sys

import numpy as np

from . import figures
from .config import ConfigError, ExperimentConfig, apply_overrides, load_config
from .csvio import format_table, write_table
from .doppler import doppler_pdf, geometry, moments
from .errors import DomainError, SamplingError
from .oracle import spread_by_quadrature
from .secondorder import afd, lcr
from .simulator import channel_series, realize

EXIT_OK, EXIT_INVALID, EXIT_VERIFY, EXIT_IO = 0, 1, 2, 3


def _rel(a, b):
    if a == b:
        return 0.0
    return abs(a - b) / max(abs(b), 1e-300)


def _emit(text, output, stdout):
    if output:
        with open(output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        stdout.write(text)


def moments_report(config):
    scat = config.scattering()
    geom = geometry(scat, config.motion(scat))
    m = moments(scat, geom)
    lines = [
        f"f_m        = {geom.f_m:.10g} Hz",
        f"beta       = {math.degrees(geom.beta):.10g} deg",
        f"f_mu       = {geom.f_mu:.10g} Hz",
        f"kappa      = {scat.kappa:.10g}",
        f"mean       = {m.mean:.10g} Hz",
        f"mean_sq    = {m.mean_square:.10g} Hz^2",
        f"spread     = {m.spread:.10g} Hz",
    ]
    if geom.f_m > 0:
        qm, qs = spread_by_quadrature(scat, geom)
        lines += [
            f"spread/f_m = {m.spread / geom.f_m:.7f}",
            f"mean/f_m   = {m.mean / geom.f_m:.7f}",
            f"oracle mean   = {qm:.10g} Hz (rel. dev {_rel(m.mean, qm):.2e})",
            f"oracle spread = {qs:.10g} Hz (rel. dev {_rel(m.spread, qs):.2e})",
        ]
    return "\n".join(lines) + "\n"


def _level_table(config, func, name):
    scat = config.scattering()
    sigma = moments(scat, geometry(scat, config.motion(scat))).spread
    rho = config.levels()
    values = func(sigma, rho)
    return ["level_db", "rho", name], np.column_stack([config.levels_db(), rho, values])


def simulation_table(config):
    """Columns, rows and header echo of a single simulated channel trace."""
    real = realize(config.channel())
    dt = config.sim_dt()
    h = channel_series(real, config.sim_duration(), dt)
    env = np.abs(h)
    with np.errstate(divide="ignore"):
        env_db = 20.0 * np.log10(env / math.sqrt(config.omega))
    t = np.arange(len(h)) * dt
    cols = ["time", "in_phase", "quadrature", "envelope", "envelope_db"]
    echo = f"{config.echo()} command=simulate dt={dt!r} phase_sign=-1"
    return cols, np.column_stack([t, h.real, h.imag, env, env_db]), echo


def pdf_table(config, points=401):
    scat = config.scattering()
    geom = geometry(scat, config.motion(scat))
    f = np.linspace(-geom.f_m, geom.f_m, points)
    return ["f_hz", "pdf"], np.column_stack([f, doppler_pdf(scat, geom, f)])


FIGURES = ("fig1", "fig2", "fig3", "fig4")


def figure_table(config, which):
    levels = config.levels_db()
    if which == "fig1":
        return figures.fig1(config.fig1_kappas, config.fig1_beta_step_deg)
    if which == "fig2":
        return figures.fig2(levels, config.fig_kappa, config.betas_deg)
    if which == "fig3":
        return figures.fig3(levels, config.kappas)
    if which == "fig4":
        return figures.fig4(levels, config.kappas)
    raise ConfigError(f"unknown figure {which!r}")


def build_parser():
    p = argparse.ArgumentParser(prog="vmf-fading", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-c", "--config", help="key = value configuration file")
    common.add_argument(
        "-s", "--set", action="append", default=[], metavar="KEY=VALUE",
        help="override a configuration key (repeatable)",
    )
    common.add_argument("-o", "--output", help="output file (default: stdout)")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("moments", parents=[common], help="Doppler moments, closed form and oracle")
    sub.add_parser("lcr", parents=[common], help="level-crossing rate over the level grid")
    sub.add_parser("afd", parents=[common], help="average fade duration over the level grid")
    pp = sub.add_parser("pdf", parents=[common], help="Doppler density on a frequency grid")
    pp.add_argument("--points", type=int, default=401)
    sub.add_parser("simulate", parents=[common], help="simulated channel trace as CSV")
    fp = sub.add_parser("figures", parents=[common], help="figure data as CSV files")
    fp.add_argument("--which", choices=FIGURES + ("all",), default="all")
    fp.add_argument("--outdir", default=".")
    vp = sub.add_parser("verify", parents=[common], help="run the verification suite")
    vp.add_argument("--no-monte-carlo", action="store_true")
    vp.add_argument("--json", help="write the machine-readable summary here")
    vp.add_argument("--inject-fault", choices=["langevin"], help=argparse.SUPPRESS)
    return p


def _config_from_args(args):
    config = load_config(args.config) if args.config else ExperimentConfig()
    overrides = list(args.set)
    if args.output:
        overrides.append(f"output={args.output}")
    return apply_overrides(config, overrides)


def run(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        config = _config_from_args(args)
        return _dispatch(args, config, stdout, stderr)
    except (ConfigError, DomainError, SamplingError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"I/O error: {exc}", file=stderr)
        return EXIT_IO


def _dispatch(args, config, stdout, stderr):
    cmd = args.command
    out = config.output
    if cmd == "moments":
        _emit(moments_report(config), out, stdout)
    elif cmd in ("lcr", "afd"):
        cols, rows = _level_table(config, lcr if cmd == "lcr" else afd, cmd)
        _emit(format_table(cols, rows, f"{config.echo()} command={cmd}"), out, stdout)
    elif cmd == "pdf":
        cols, rows = pdf_table(config, args.points)
        _emit(format_table(cols, rows, f"{config.echo()} command=pdf"), out, stdout)
    elif cmd == "simulate":
        _emit(format_table(*simulation_table(config)), out, stdout)
    elif cmd == "figures":
        os.makedirs(args.outdir, exist_ok=True)
        which = FIGURES if args.which == "all" else (args.which,)
        for name in which:
            cols, rows = figure_table(config, name)
            path = os.path.join(args.outdir, f"{name}.csv")
            write_table(path, cols, rows, f"{config.echo()} command=figures figure={name}")
            print(f"wrote {path}", file=stdout)
    elif cmd == "verify":
        from .verification import run_all, summary

        checks = run_all(config, fault=args.inject_fault, monte_carlo=not args.no_monte_carlo)
        for c in checks:
            print(c.line(), file=stdout)
        report = summary(checks)
        if args.json:
            with open(args.json, "w", encoding="utf-8") as fh:
                json.dump(report, fh, indent=2)
        if not report["passed"]:
            print(f"verification FAILED: {', '.join(report['failed'])}", file=stderr)
            return EXIT_VERIFY
        print("verification passed", file=stdout)
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
