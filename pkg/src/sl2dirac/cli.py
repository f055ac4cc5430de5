"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import figures, svg
from .param_space import QUARTER, line_point, Principal
from .verify import SUITES, run_suites

DEFAULT_QS = (0.25, 0.5, 2.0)


@dataclass
class RunConfig:
    command: str
    qs: list[float] = field(default_factory=list)
    taus: list[float] = field(default_factory=list)
    q_range: Optional[tuple[float, float]] = None
    samples: int = 2
    kmax: int = 6
    out: Optional[str] = None
    fmt: str = "csv"
    tol: Optional[float] = None


class UsageError(ValueError):
    pass


def _taus(args) -> list[float]:
    if args.tau is not None:
        return [args.tau]
    if args.tau_samples < 2 or not args.tau_max > args.tau_min:
        raise UsageError(f"empty tau range: [{args.tau_min}, {args.tau_max}] with {args.tau_samples} samples")
    return [float(t) for t in np.linspace(args.tau_min, args.tau_max, args.tau_samples)]


def _q_sweep(args) -> list[float]:
    if args.q:
        return list(args.q)
    if args.samples < 2 or not args.q_max > args.q_min:
        raise UsageError(f"empty q range: [{args.q_min}, {args.q_max}] with {args.samples} samples")
    return [float(q) for q in np.linspace(args.q_min, args.q_max, args.samples)]


def build_config(args) -> RunConfig:
    cfg = RunConfig(args.command, out=args.out, fmt=args.format, tol=args.tol)
    if args.command == "verify":
        return cfg
    cfg.kmax = args.kmax
    if cfg.kmax < 0:
        raise UsageError("kmax must be >= 0")
    if any(not math.isfinite(q) for q in (args.q or [])):
        raise UsageError("q values must be finite")
    if args.command in ("spectrum", "helix"):
        cfg.qs = list(args.q) if args.q else list(DEFAULT_QS)
        cfg.taus = _taus(args)
        if args.command == "helix" and any(q < QUARTER for q in cfg.qs):
            raise UsageError("helix coordinates need principal-series q >= 1/4")
    elif args.command == "line-sweep":
        cfg.qs = _q_sweep(args)
    elif args.command == "flow":
        if args.samples < 2 or not args.q_max > args.q_min:
            raise UsageError("flow needs q-min < q-max and at least 2 samples")
        cfg.q_range = (args.q_min, args.q_max)
        cfg.samples = args.samples
        if cfg.fmt != "csv":
            raise UsageError("flow output is CSV only")
    elif args.command == "cohomology":
        cfg.qs = _q_sweep(args)
        if any(q < QUARTER for q in cfg.qs) and args.tau is None and not args.q:
            raise UsageError("cohomology grids live on the principal series, q >= 1/4")
        cfg.taus = _taus(args)
    return cfg


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.out:
        with open(cfg.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _series(rows, key_idx, x_idx, y_idx):
    out: dict[str, tuple[list[float], list[float]]] = {}
    for row in rows:
        xs, ys = out.setdefault(str(row[key_idx]), ([], []))
        xs.append(float(row[x_idx]) if row[x_idx] != "" else 0.0)
        ys.append(float(row[y_idx]))
    return out


def cmd_spectrum(cfg: RunConfig) -> int:
    rows = list(figures.spectrum_rows(cfg.qs, cfg.taus, cfg.kmax))
    if cfg.fmt == "svg":
        text = svg.render(_series(rows, 0, 1, 4), "Localised spectra of D over circles of representations",
                          "tau", "eigenvalue")
    else:
        text = figures.csv_text(figures.SPECTRUM_HEADER, rows)
    _emit(cfg, text)
    return 0


def cmd_line_sweep(cfg: RunConfig, operator: str = "H") -> int:
    rows = list(figures.line_rows(cfg.qs, cfg.kmax, operator))
    if cfg.fmt == "svg":
        text = svg.render(_series(rows, 1, 0, 2), "Bundle eigenvalues over the line of representations",
                          "q", "eigenvalue", lines=True)
    else:
        text = figures.csv_text(figures.LINE_HEADER, rows)
    _emit(cfg, text)
    return 0


def cmd_helix(cfg: RunConfig) -> int:
    rows = list(figures.helix_rows(cfg.qs, cfg.taus, cfg.kmax))
    if cfg.fmt == "svg":
        text = svg.render(_series(rows, 0, 1, 2), "Principal-series spectrum: theta against z, one series per r",
                          "theta", "z")
    else:
        text = figures.csv_text(figures.HELIX_HEADER, rows)
    _emit(cfg, text)
    return 0


def cmd_flow(cfg: RunConfig) -> int:
    rows = list(figures.flow_rows(cfg.q_range, cfg.samples, max(cfg.kmax, 1)))
    _emit(cfg, figures.csv_text(figures.FLOW_HEADER, rows))
    return 0


def cmd_cohomology(cfg: RunConfig) -> int:
    tol = cfg.tol if cfg.tol is not None else 1e-9
    pts = []
    for q in cfg.qs:
        if q < QUARTER:
            pts.append(line_point(q))
        else:
            pts.extend(Principal(q, t) for t in cfg.taus)
    rows = list(figures.cohomology_rows(pts, tol))
    if cfg.fmt == "svg":
        hits = [r for r in rows if r[2] == "1"]
        text = svg.render({"kernel": ([float(r[1]) for r in hits], [float(r[0]) for r in hits])},
                          "Points with nonzero localised Dirac cohomology", "tau", "q")
    else:
        text = figures.csv_text(figures.COHOMOLOGY_HEADER, rows)
    _emit(cfg, text)
    return 0


def cmd_verify(suites: Sequence[str], perturb: float, stream=None) -> int:
    stream = stream or sys.stdout
    results = run_suites(suites, perturb=perturb)
    for r in results:
        print(r.line(), file=stream)
    failed = [r.name for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} suites passed", file=stream)
    return 1 if failed else 0


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sl2dirac",
        description="Localised spectra of the Dirac operator on the universal cover of SL(2,R).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, kmax):
        p.add_argument("--kmax", type=int, default=kmax)
        p.add_argument("--out", help="output file (default: stdout)")
        p.add_argument("--format", choices=("csv", "svg"), default="csv")
        p.add_argument("--tol", type=float, default=None)

    def tau_opts(p):
        p.add_argument("--tau", type=float, default=None, help="single tau instead of a sweep")
        p.add_argument("--tau-min", type=float, default=0.0)
        p.add_argument("--tau-max", type=float, default=1.0)
        p.add_argument("--tau-samples", type=int, default=101)

    def q_opts(p, qmin, qmax, samples):
        p.add_argument("--q", type=float, action="append", help="explicit q value (repeatable)")
        p.add_argument("--q-min", type=float, default=qmin)
        p.add_argument("--q-max", type=float, default=qmax)
        p.add_argument("--samples", type=int, default=samples)

    p = sub.add_parser("spectrum", help="closed-form spectra over circles of representations")
    p.add_argument("--q", type=float, action="append", help="q value (repeatable; default 1/4, 1/2, 2)")
    tau_opts(p)
    common(p, 6)

    p = sub.add_parser("line-sweep", help="bundle eigenvalues over the line of representations")
    q_opts(p, -2.0, 3.0, 501)
    p.add_argument("--operator", choices=("H", "D"), default="H")
    common(p, 3)

    p = sub.add_parser("helix", help="principal-series spectrum in cylindrical coordinates")
    p.add_argument("--q", type=float, action="append", help="q value (repeatable; default 1/4, 1/2, 2)")
    tau_opts(p)
    common(p, 3)

    p = sub.add_parser("flow", help="spectral flow of every bundle eigenvalue curve")
    q_opts(p, -50.0, 50.0, 1000)
    common(p, 3)

    p = sub.add_parser("cohomology", help="localised Dirac cohomology on a grid or at points")
    q_opts(p, QUARTER, 3.0, 12)
    tau_opts(p)
    common(p, 0)

    p = sub.add_parser("verify", help="run the invariant suites")
    p.add_argument("--suite", action="append", choices=sorted(SUITES), help="run only these suites")
    p.add_argument("--perturb", type=float, default=0.0, help="shift the oracle side by this amount")
    p.add_argument("--out", help=argparse.SUPPRESS)
    p.add_argument("--format", default="csv", help=argparse.SUPPRESS)
    p.add_argument("--tol", type=float, default=None, help=argparse.SUPPRESS)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        cfg = build_config(args)
    except (UsageError, ValueError) as exc:
        parser.error(str(exc))
    if args.command == "verify":
        return cmd_verify(args.suite, args.perturb)
    try:
        if args.command == "spectrum":
            return cmd_spectrum(cfg)
        if args.command == "line-sweep":
            return cmd_line_sweep(cfg, args.operator)
        if args.command == "helix":
            return cmd_helix(cfg)
        if args.command == "flow":
            return cmd_flow(cfg)
        return cmd_cohomology(cfg)
    except OSError as exc:
        print(f"sl2dirac: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
