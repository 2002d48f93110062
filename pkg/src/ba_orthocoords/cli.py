"""Command-line entry point ``ba-orthocoords``.

Subcommands:
  validate  structural checks of the spectral data and of Omega
  verify    full numerical verification report
  sample    CSV of coordinates, Lame coefficients and residuals on a grid
  plot      SVG of the coordinate lines (n = 2)

Exit codes: 0 success, 1 validation or verification failure, 2 usage or
configuration error.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import logging
import sys
from pathlib import Path

import numpy as np

from . import curve, omega
from .chart import CoordinateChart, chart_from_raw, with_residues
from .config import ConfigParseError, RunConfig, load_config
from .curve import PointOnCurve
from .errors import BAError
from .plot import PROJECTIONS, plot_chart
from .verify import Grid, run_all

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def parse_grid(text: str, n: int) -> tuple[int, ...]:
    try:
        res = tuple(int(k) for k in text.lower().split("x"))
    except ValueError as exc:
        raise UsageError(f"--grid expects NxM, got {text!r}") from exc
    if len(res) != n or any(k < 0 for k in res):
        raise UsageError(f"--grid needs {n} non-negative sizes, got {text!r}")
    return res


def parse_fault(text: str) -> tuple[str, float]:
    key, sep, delta = text.partition("=")
    if not sep:
        raise UsageError(f"--inject-fault expects KEY=DELTA, got {text!r}")
    try:
        return key.strip(), float(delta)
    except ValueError as exc:
        raise UsageError(f"bad delta in {text!r}") from exc


def _indexed(key: str, prefix: str, count: int) -> int | None:
    if key.startswith(prefix) and key[len(prefix):].isdigit():
        i = int(key[len(prefix):]) - 1
        if not 0 <= i < count:
            raise UsageError(f"fault key {key!r} out of range")
        return i
    return None


def apply_data_faults(cfg: RunConfig, faults: list[tuple[str, float]]) -> RunConfig:
    """Faults that move gamma points before Omega is checked (``gammaK``)."""
    sd = cfg.data
    for key, delta in faults:
        if (i := _indexed(key, "gamma", len(sd.gamma))) is not None:
            g = sd.gamma[i]
            moved = PointOnCurve(g.component, g.z + delta)
            sd = dataclasses.replace(sd, gamma=sd.gamma[:i] + (moved,) + sd.gamma[i + 1:])
    return dataclasses.replace(cfg, data=sd)


def apply_chart_faults(chart: CoordinateChart, faults: list[tuple[str, float]]) -> CoordinateChart:
    """Faults applied after normalization: ``A<i>``, ``B``, ``C<i>`` and ``h``.

    Shifting ``h`` before normalization would be absorbed by rescaling Omega,
    so it is shifted here with Omega held fixed.
    """
    for key, delta in faults:
        rd = chart.residues
        if key == "h":
            chart = dataclasses.replace(chart, data=dataclasses.replace(chart.data, h=chart.data.h + delta))
        elif key == "B":
            chart = with_residues(chart, B=rd.B + delta)
        elif (i := _indexed(key, "A", len(rd.A))) is not None:
            A = list(rd.A)
            A[i] += delta
            chart = with_residues(chart, A=tuple(A))
        elif (i := _indexed(key, "C", len(rd.C))) is not None:
            C = list(rd.C)
            C[i] += delta
            chart = with_residues(chart, C=tuple(C))
        elif _indexed(key, "gamma", len(chart.data.gamma)) is None:
            raise UsageError(f"unknown fault key {key!r} (use A<i>, B, C<i>, h, gamma<i>)")
    return chart


def _load(args) -> RunConfig:
    cfg = load_config(args.config)
    if getattr(args, "grid", None):
        cfg.grid = Grid(cfg.grid.ranges, parse_grid(args.grid, cfg.data.n))
    return cfg


def cmd_validate(args) -> int:
    cfg = _load(args)
    sd, om = cfg.data, cfg.forms
    print(f"[{cfg.name}] spectral curve")
    rep = curve.validate(sd)
    print(rep)
    if not rep.ok:
        return EXIT_FAIL
    print(f"[{cfg.name}] one-form")
    orep = omega.check_divisor(sd, om)
    glue = omega.check_glue_residues(sd, om)
    for j, res in enumerate(glue):
        if res > omega.GLUE_TOL:
            orep.violations.append(f"node{j + 1}: residues do not cancel (|sum| = {res:.3g})")
    orep.notes.append("node residue residuals: " + ", ".join(f"{x:.2e}" for x in glue))
    if orep.ok:
        try:
            rd = omega.extract_residue_data(sd, om)
            orep.notes.append(f"raw residues: A = {rd.A}, B = {rd.B:.15g}, C = {rd.C}")
            _, nrd = omega.normalize_form(sd, om, rd)
            orep.notes.append(f"normalized (h^2 B = -1): A = {nrd.A}, C = {nrd.C}")
            orep.notes.append(f"equal-Q-residue spread (advisory): {omega.check_equal_q_residues(nrd):.3g}")
        except BAError as exc:
            orep.violations.append(str(exc))
    print(orep)
    return EXIT_OK if orep.ok else EXIT_FAIL


def _chart(cfg: RunConfig, faults) -> CoordinateChart:
    cfg = apply_data_faults(cfg, faults)
    chart = chart_from_raw(cfg.data, cfg.forms)
    return apply_chart_faults(chart, faults)


def cmd_verify(args) -> int:
    cfg = _load(args)
    faults = [parse_fault(f) for f in args.inject_fault or []]
    try:
        chart = _chart(cfg, faults)
    except BAError as exc:
        print(f"[{cfg.name}] FAIL chart construction: {exc}")
        return EXIT_FAIL
    report = run_all(chart, cfg.grid, cfg.fd_grid, cfg.reference)
    print(f"[{cfg.name}] verification report")
    print(report.to_text())
    if args.out:
        rows = report.rows()
        with open(args.out, "w", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=list(rows[0]), lineterminator="\n")
            w.writeheader()
            w.writerows(rows)
    return EXIT_OK if report.passed else EXIT_FAIL


def _g(x: float) -> str:
    return "%.17g" % x


def sample_csv(chart: CoordinateChart, grid: Grid) -> str:
    n = chart.n
    ucols = ["u", "v"] if n == 2 else [f"u{i + 1}" for i in range(n)]
    header = ucols + [f"x{k + 1}" for k in range(n + 1)] + [f"H{i + 1}" for i in range(n)]
    header += ["embed_residual", "orth_residual"]
    eps = chart.signature
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    if any(k == 0 for k in grid.resolution):
        return buf.getvalue()
    for u in grid.points():
        try:
            x = chart.x(u)
            dx = chart.dx(u)
        except BAError:
            w.writerow([_g(t) for t in u] + ["nan"] * (len(header) - n))
            continue
        try:
            H = list(chart.lame(u))
        except BAError:
            H = [float("nan")] * n
        embed = abs(np.sum(eps * x**2) - 1)
        orth = max(
            (abs(np.sum(eps * dx[i] * dx[j])) for i in range(n) for j in range(i + 1, n)), default=0.0
        )
        w.writerow([_g(t) for t in (*u, *x, *H, embed, orth)])
    return buf.getvalue()


def cmd_sample(args) -> int:
    cfg = _load(args)
    try:
        chart = chart_from_raw(cfg.data, cfg.forms)
    except BAError as exc:
        print(f"[{cfg.name}] FAIL chart construction: {exc}", file=sys.stderr)
        return EXIT_FAIL
    text = sample_csv(chart, cfg.grid)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_plot(args) -> int:
    cfg = _load(args)
    if cfg.data.n != 2:
        print(f"[{cfg.name}] plot: unsupported for n = {cfg.data.n} (needs n = 2)", file=sys.stderr)
        return EXIT_USAGE
    try:
        chart = chart_from_raw(cfg.data, cfg.forms)
    except BAError as exc:
        print(f"[{cfg.name}] FAIL chart construction: {exc}", file=sys.stderr)
        return EXIT_FAIL
    out = cfg.output
    projection = args.projection or out.get("projection")
    families = tuple(int(k) for k in (args.families.split("x") if args.families else out.get("families", (12, 12))))
    if len(families) != 2:
        raise UsageError("--families expects NxM")
    ranges = tuple(tuple(r) for r in out.get("ranges", cfg.grid.ranges))
    svg = plot_chart(chart, ranges, families, int(out.get("samples", 200)), projection, title=cfg.name)
    if args.out:
        Path(args.out).write_text(svg)
    else:
        sys.stdout.write(svg)
    return EXIT_OK


def create_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ba-orthocoords",
        description="Orthogonal coordinates on S^n / H^n from Baker-Akhiezer functions on nodal curves",
    )
    parser.add_argument("--verbose", "-v", action="store_true", help="enable INFO logging")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("config", help="path to a JSON config, or a bundled name (s2, h2)")
        p.add_argument("--out", help="output path")
        p.add_argument("--grid", help="grid resolution NxM (overrides the config)")
        p.set_defaults(func=func)
        return p

    add("validate", cmd_validate, "check spectral data and the 1-form")
    v = add("verify", cmd_verify, "run the verification suite")
    v.add_argument(
        "--inject-fault",
        action="append",
        metavar="KEY=DELTA",
        help="perturb A<i>, B, C<i>, h or gamma<i> by DELTA (repeatable)",
    )
    add("sample", cmd_sample, "write coordinates and residuals on a grid as CSV")
    p = add("plot", cmd_plot, "draw coordinate lines as SVG (n = 2)")
    p.add_argument("--projection", choices=PROJECTIONS)
    p.add_argument("--families", help="number of u=const and v=const lines, NxM")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = create_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except (UsageError, ConfigParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BAError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
