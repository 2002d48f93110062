"""Numerical verification of every identity the construction promises.

Algebraic identities (residue identities, embedding, orthogonality) are
checked at 1e-9..1e-10 using exact u-derivatives.  Identities that need
derivatives of the Lame coefficients (the Lame system, Gaussian curvature)
go through nested fourth-order finite differences and are checked at 1e-5.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable

import numpy as np

from . import omega
from .chart import CoordinateChart, central_difference
from .errors import BAError
from .reference import CLOSED_FORMS

ALGEBRAIC_TOL = 1e-10
ORTHOGONALITY_TOL = 1e-9
DERIVATIVE_TOL = 1e-8
FD_TOL = 1e-5
REGRESSION_TOL = 1e-9
NODE_TOL = 1e-12

INNER_STEP = 1e-3
OUTER_STEP = 2e-3
DEGENERATE_H = 1e-6


@dataclass(frozen=True)
class Grid:
    ranges: tuple[tuple[float, float], ...]
    resolution: tuple[int, ...]

    def points(self) -> Iterable[np.ndarray]:
        axes = [np.linspace(lo, hi, k) for (lo, hi), k in zip(self.ranges, self.resolution)]
        for p in itertools.product(*axes):
            yield np.array(p)

    def describe(self) -> str:
        res = "x".join(map(str, self.resolution))
        box = "x".join(f"[{lo:.6g},{hi:.6g}]" for lo, hi in self.ranges)
        return f"{res} on {box}"


@dataclass
class CheckResult:
    name: str
    grid: str
    max_residual: float
    worst_point: tuple[float, ...] | None
    threshold: float
    advisory: bool = False
    note: str = ""

    @property
    def passed(self) -> bool:
        return bool(self.max_residual <= self.threshold)

    def line(self) -> str:
        status = "PASS" if self.passed else ("WARN" if self.advisory else "FAIL")
        worst = "-" if self.worst_point is None else "(" + ", ".join(f"{x:.6g}" for x in self.worst_point) + ")"
        text = (
            f"{status:4s} {self.name:28s} max={self.max_residual:.3e} "
            f"threshold={self.threshold:.0e} worst={worst} grid={self.grid}"
        )
        return text + (f"  [{self.note}]" if self.note else "")


@dataclass
class VerificationReport:
    results: list[CheckResult] = field(default_factory=list)

    def add(self, *results: CheckResult):
        self.results.extend(results)

    @property
    def passed(self) -> bool:
        return all(r.passed or r.advisory for r in self.results)

    def __getitem__(self, name: str) -> CheckResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def to_text(self) -> str:
        lines = [r.line() for r in self.results]
        lines.append("overall: " + ("PASS" if self.passed else "FAIL"))
        return "\n".join(lines)

    def rows(self) -> list[dict]:
        return [
            dict(
                name=r.name,
                grid=r.grid,
                max_residual=repr(float(r.max_residual)),
                worst_point=" ".join(repr(float(x)) for x in r.worst_point or ()),
                threshold=repr(r.threshold),
                passed=r.passed,
                advisory=r.advisory,
                note=r.note,
            )
            for r in self.results
        ]


def _sweep(
    name: str,
    grid: Grid,
    threshold: float,
    fn: Callable[[np.ndarray], float],
    note: str = "",
) -> CheckResult:
    """Max of ``fn`` over the grid; points raising BAError are excluded and counted."""
    worst, worst_u, skipped = -1.0, None, 0
    for u in grid.points():
        try:
            value = float(fn(u))
        except BAError:
            skipped += 1
            continue
        if math.isnan(value):
            value = math.inf
        if value > worst:
            worst, worst_u = value, tuple(u.tolist())
    if skipped:
        note = (note + "; " if note else "") + f"{skipped} degenerate point(s) excluded"
    if worst_u is None:
        worst = math.inf
        note = (note + "; " if note else "") + "no usable grid points"
    return CheckResult(name, grid.describe(), worst, worst_u, threshold, note=note)


# ---------------------------------------------------------------------------
# residue identities
# ---------------------------------------------------------------------------


def _psi_data(chart: CoordinateChart, u):
    sol = chart.solution(u)
    Q = chart.data.Q
    psi = np.array([sol.psi(q) for q in Q])
    dpsi = np.array([[sol.psi_derivative(i, q) for q in Q] for i in range(chart.n)])
    return sol, psi, dpsi


def check_residue_identities(chart: CoordinateChart, grid: Grid) -> list[CheckResult]:
    """The three residue identities, written in psi, A, B, C and f only."""
    A = np.asarray(chart.residues.A)
    B, C, h = chart.residues.B, np.asarray(chart.residues.C), chart.data.h

    def sum_squares(u):
        _, psi, _ = _psi_data(chart, u)
        return abs(np.sum(psi**2 * A) + h**2 * B)

    def mixed(u):
        _, _, d = _psi_data(chart, u)
        return max(
            (abs(np.sum(d[i] * d[j] * A)) for i in range(chart.n) for j in range(i + 1, chart.n)),
            default=0.0,
        )

    def diagonal(u):
        sol, _, d = _psi_data(chart, u)
        f = sol.leading
        return max(abs(np.sum(d[i] ** 2 * A) - C[i] * f[i] ** 2) for i in range(chart.n))

    return [
        _sweep("identity_sum_psi_squared", grid, ALGEBRAIC_TOL, sum_squares),
        _sweep("identity_mixed_derivatives", grid, ALGEBRAIC_TOL, mixed),
        _sweep("identity_diagonal_derivatives", grid, ALGEBRAIC_TOL, diagonal),
    ]


def check_embedding(chart: CoordinateChart, grid: Grid) -> list[CheckResult]:
    """Quadric, orthogonality and Lame consistency in terms of x."""
    eps = chart.signature
    sign = chart.curvature  # H_i^2 = sign * <d_i x, d_i x>

    def embed(u):
        x = chart.x(u)
        return abs(np.sum(eps * x**2) - 1)

    def orth(u):
        dx = chart.dx(u)
        return max(
            (abs(np.sum(eps * dx[i] * dx[j])) for i in range(chart.n) for j in range(i + 1, chart.n)),
            default=0.0,
        )

    def lame(u):
        dx = chart.dx(u)
        h2 = chart.lame_squared(u)
        return max(abs(sign * np.sum(eps * dx[i] ** 2) - h2[i]) for i in range(chart.n))

    return [
        _sweep("embedding", grid, ALGEBRAIC_TOL, embed),
        _sweep("orthogonality", grid, ORTHOGONALITY_TOL, orth),
        _sweep("lame_consistency", grid, ORTHOGONALITY_TOL, lame),
    ]


def check_reality(chart: CoordinateChart, grid: Grid) -> CheckResult:
    def imag(u):
        sol = chart.solution(u, derivatives=False)
        vals = [sol.psi(q).imag for q in chart.data.Q] + list(sol.leading.imag)
        return max(abs(v) for v in vals)

    return _sweep("reality", grid, ALGEBRAIC_TOL, imag)


def check_gluing(chart: CoordinateChart, grid: Grid) -> CheckResult:
    def gap(u):
        sol = chart.solution(u, derivatives=False)
        return max(abs(sol.psi(g.first) - sol.psi(g.second)) for g in chart.data.glue)

    return _sweep("gluing", grid, ALGEBRAIC_TOL, gap)


def check_derivatives(chart: CoordinateChart, grid: Grid, step: float = 1e-5) -> CheckResult:
    """Exact derivatives of psi(Q_k) against a fourth-order central difference."""

    def psi_q(u):
        sol = chart.solution(u, derivatives=False)
        return np.array([sol.psi(q) for q in chart.data.Q])

    def gap(u):
        _, _, d = _psi_data(chart, u)
        return max(
            np.max(np.abs(central_difference(psi_q, u, i, step) - d[i])) for i in range(chart.n)
        )

    return _sweep("derivative_fd_agreement", grid, DERIVATIVE_TOL, gap)


def check_node_residues(chart: CoordinateChart) -> CheckResult:
    res = omega.check_glue_residues(chart.data, chart.forms)
    return CheckResult(
        "node_residues", f"{len(res)} nodes", max(res, default=0.0), None, NODE_TOL
    )


def check_equal_q(chart: CoordinateChart) -> CheckResult:
    return CheckResult(
        "equal_q_residues",
        "-",
        omega.check_equal_q_residues(chart.residues),
        None,
        ALGEBRAIC_TOL,
        advisory=True,
    )


# ---------------------------------------------------------------------------
# finite-difference identities
# ---------------------------------------------------------------------------


def _lame_checked(chart: CoordinateChart):
    def H(u):
        h = chart.lame(u)
        if np.any(h < DEGENERATE_H):
            raise _Degenerate()
        return h

    return H


class _Degenerate(BAError):
    pass


def _beta(chart, u, inner):
    H = _lame_checked(chart)
    h = H(u)
    beta = np.zeros((chart.n, chart.n))
    for i in range(chart.n):
        beta[i] = central_difference(H, u, i, inner) / h[i]
        beta[i, i] = 0.0
    return h, beta


def lame_system_residuals(chart: CoordinateChart, u, K: float, inner=INNER_STEP, outer=OUTER_STEP):
    """Residuals of the two Lame-system equations at ``u``.

    Returns ``(rotation, curvature)``; ``rotation`` is ``None`` for n = 2.
    """
    n = chart.n
    h, beta = _beta(chart, u, inner)
    dbeta = [central_difference(lambda v: _beta(chart, v, inner)[1], u, k, outer) for k in range(n)]
    rotation = None
    if n >= 3:
        rotation = max(
            abs(dbeta[k][i, j] - beta[i, k] * beta[k, j])
            for i, j, k in itertools.permutations(range(n), 3)
        )
    curvature = max(
        abs(
            dbeta[i][i, j]
            + dbeta[j][j, i]
            + sum(beta[m, i] * beta[m, j] for m in range(n) if m not in (i, j))
            + K * h[i] * h[j]
        )
        for i in range(n)
        for j in range(i + 1, n)
    )
    return rotation, curvature


def check_lame_system(chart: CoordinateChart, grid: Grid, K: float | None = None) -> list[CheckResult]:
    if chart.n < 2:
        raise ValueError("the Lame system needs n >= 2")
    K = chart.curvature if K is None else K
    out = []
    if chart.n == 2:
        out.append(
            CheckResult("lame_rotation", "-", 0.0, None, FD_TOL, note="vacuous for n = 2 (skipped)")
        )
    else:
        out.append(_sweep("lame_rotation", grid, FD_TOL, lambda u: lame_system_residuals(chart, u, K)[0]))
    out.append(
        _sweep(f"lame_curvature(K={K:+g})", grid, FD_TOL, lambda u: lame_system_residuals(chart, u, K)[1])
    )
    return out


def gauss_curvature_orthogonal(metric: Callable, u, inner=INNER_STEP, outer=OUTER_STEP) -> float:
    """Gaussian curvature of ``E du^2 + G dv^2`` (Brioschi form for F = 0).

    ``metric(u)`` returns ``(E, G)``.
    """
    u = np.asarray(u, dtype=float)

    def terms(p):
        E, G = metric(p)
        root = math.sqrt(E * G)
        G_u = central_difference(lambda q: metric(q)[1], p, 0, inner)
        E_v = central_difference(lambda q: metric(q)[0], p, 1, inner)
        return np.array([G_u / root, E_v / root])

    E, G = metric(u)
    a = central_difference(lambda p: terms(p)[0], u, 0, outer)
    b = central_difference(lambda p: terms(p)[1], u, 1, outer)
    return -(a + b) / (2 * math.sqrt(E * G))


def round_sphere_metric(u) -> tuple[float, float]:
    """``du^2 + sin(u)^2 dv^2``, curvature exactly 1."""
    return 1.0, math.sin(u[0]) ** 2


STENCIL_GRID = Grid(((0.5, 2.5), (0.0, 1.0)), (10, 10))
STENCIL_TOL = 1e-8


def check_stencil(grid: Grid = STENCIL_GRID) -> CheckResult:
    """Curvature stencil applied to the round sphere, where K = 1 exactly."""
    return _sweep(
        "stencil_self_test",
        grid,
        STENCIL_TOL,
        lambda u: abs(gauss_curvature_orthogonal(round_sphere_metric, u) - 1),
    )


def check_gauss_curvature(chart: CoordinateChart, grid: Grid) -> CheckResult:
    if chart.n != 2:
        raise ValueError("Gaussian curvature check needs n = 2")
    H = _lame_checked(chart)
    target = chart.curvature
    return _sweep(
        "gauss_curvature",
        grid,
        FD_TOL,
        lambda u: abs(gauss_curvature_orthogonal(lambda p: H(p) ** 2, u) - target),
    )


# ---------------------------------------------------------------------------
# closed-form regression
# ---------------------------------------------------------------------------


def regression_coordinates(chart: CoordinateChart, which: str, grid: Grid) -> CheckResult:
    x_ref, _ = CLOSED_FORMS[which]
    return _sweep(
        f"closed_form_coordinates[{which}]",
        grid,
        REGRESSION_TOL,
        lambda u: np.max(np.abs(chart.x(u) - x_ref(*u))),
    )


def regression_metric(chart: CoordinateChart, which: str, grid: Grid) -> CheckResult:
    _, g_ref = CLOSED_FORMS[which]
    return _sweep(
        f"closed_form_metric[{which}]",
        grid,
        REGRESSION_TOL,
        lambda u: np.max(np.abs(chart.lame_squared(u) - g_ref(*u))),
    )


def run_all(
    chart: CoordinateChart,
    grid: Grid,
    fd_grid: Grid | None = None,
    reference: str | None = None,
) -> VerificationReport:
    """Every check, in a fixed order."""
    fd_grid = fd_grid or grid
    rep = VerificationReport()
    rep.add(check_node_residues(chart), check_equal_q(chart))
    rep.add(check_reality(chart, grid), check_gluing(chart, grid))
    rep.add(*check_residue_identities(chart, grid))
    rep.add(*check_embedding(chart, grid))
    rep.add(check_derivatives(chart, grid))
    if chart.n >= 2:
        rep.add(*check_lame_system(chart, fd_grid))
    if chart.n == 2:
        rep.add(check_stencil(), check_gauss_curvature(chart, fd_grid))
    if reference is not None:
        rep.add(regression_coordinates(chart, reference, grid))
        rep.add(regression_metric(chart, reference, grid))
    return rep
