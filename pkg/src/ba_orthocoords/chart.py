"""Orthogonal coordinate charts on S^n and H^n from a solved BA function."""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from . import curve, omega
from .curve import SpectralData
from .errors import ConfigurationError, SignViolation
from .omega import OneFormSpec, ResidueData
from .solver import Ansatz, BASolution, build_ansatz, solve

NORMALIZATION_TOL = 1e-12


def central_difference(f, u: np.ndarray, i: int, step: float):
    """Fourth-order central difference of ``f`` along coordinate ``i``."""
    e = np.zeros_like(u)
    e[i] = step
    return (f(u - 2 * e) - 8 * f(u - e) + 8 * f(u + e) - f(u + 2 * e)) / (12 * step)


@dataclass(frozen=True)
class CoordinateChart:
    """``x^k(u) = sqrt|A_k| psi(u, Q_k)`` in R^{n+1} or Minkowski R^{1,n}.

    ``signature`` is ``(+1, ..., +1)`` on the sphere and ``(+1, -1, ..., -1)``
    on the hyperboloid.
    """

    data: SpectralData
    forms: OneFormSpec
    residues: ResidueData
    ansatz: Ansatz = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "ansatz", build_ansatz(self.data))

    @property
    def n(self) -> int:
        return self.data.n

    @property
    def curvature(self) -> int:
        return self.data.curvature_target

    @property
    def signature(self) -> np.ndarray:
        eps = np.ones(self.n + 1)
        if self.curvature < 0:
            eps[1:] = -1
        return eps

    @property
    def scales(self) -> np.ndarray:
        return np.sqrt(np.abs(self.residues.A))

    def solution(self, u, derivatives: bool = True) -> BASolution:
        return solve(self.ansatz, u, derivatives=derivatives)

    def x(self, u) -> np.ndarray:
        sol = self.solution(u, derivatives=False)
        return self.scales * np.array([sol.psi(q).real for q in self.data.Q])

    def dx(self, u) -> np.ndarray:
        """``dx[i, k] = d x^k / d u_i``."""
        sol = self.solution(u)
        return self.scales * np.array(
            [[sol.psi_derivative(i, q).real for q in self.data.Q] for i in range(self.n)]
        )

    def lame_squared(self, u) -> np.ndarray:
        """``C_i f_i^2`` on the sphere, ``-C_i f_i^2`` on the hyperboloid."""
        f = self.solution(u, derivatives=False).leading.real
        return self.curvature * np.asarray(self.residues.C) * f**2

    def lame(self, u) -> np.ndarray:
        h2 = self.lame_squared(u)
        for i, value in enumerate(h2):
            if not value > 0:
                raise SignViolation(np.asarray(u, dtype=float), i, float(value))
        return np.sqrt(h2)

    def metric(self, u) -> np.ndarray:
        return np.diag(self.lame(u) ** 2)

    def rotation_coefficients(self, u, step: float = 1e-4) -> np.ndarray:
        """``beta[i, j] = (d H_j / d u_i) / H_i`` for ``i != j``; zero diagonal."""
        u = np.asarray(u, dtype=float)
        H = self.lame(u)
        beta = np.zeros((self.n, self.n))
        for i in range(self.n):
            dH = central_difference(self.lame, u, i, step)
            beta[i] = dH / H[i]
            beta[i, i] = 0.0
        return beta


def sign_pattern_ok(rd: ResidueData, curvature: int) -> bool:
    A = np.asarray(rd.A)
    if curvature > 0:
        return bool(np.all(A > 0))
    return bool(A[0] > 0 and np.all(A[1:] < 0))


def build_chart(sd: SpectralData, om: OneFormSpec, residues: ResidueData | None = None) -> CoordinateChart:
    """Validate the data and assemble the chart.

    Omega must already satisfy ``h**2 * B = -1`` (see
    :func:`omega.normalize_form`).  ``residues`` overrides the extracted
    residue data, which is how fault injection enters.
    """
    rep = curve.validate(sd)
    if rep.ok:
        rep.extend(omega.check_divisor(sd, om))
    if not rep.ok:
        raise ConfigurationError("invalid spectral data:\n" + str(rep))
    bad = [x for x in omega.check_glue_residues(sd, om) if x > omega.GLUE_TOL]
    if bad:
        raise ConfigurationError(f"node residues do not cancel (max residual {max(bad):.3g})")
    rd = residues if residues is not None else omega.extract_residue_data(sd, om)
    if residues is None and abs(sd.h**2 * rd.B + 1) > NORMALIZATION_TOL:
        raise ConfigurationError(
            f"Omega is not normalized: h^2 B = {sd.h**2 * rd.B:.15g}, expected -1"
        )
    if not sign_pattern_ok(rd, sd.curvature_target):
        other = -sd.curvature_target
        raise ConfigurationError(
            f"residues A = {rd.A} do not fit curvature {sd.curvature_target:+d}: "
            + (
                f"data realizes curvature {other:+d}"
                if sign_pattern_ok(rd, other)
                else "data realizes neither curvature sign"
            )
        )
    return CoordinateChart(sd, om, rd)


def chart_from_raw(sd: SpectralData, om: OneFormSpec) -> CoordinateChart:
    """Normalize Omega so that ``h**2 B = -1``, then build the chart."""
    rd = omega.extract_residue_data(sd, om)
    om_n, _ = omega.normalize_form(sd, om, rd)
    return build_chart(sd, om_n)


def with_residues(chart: CoordinateChart, **changes) -> CoordinateChart:
    """Copy of ``chart`` with some residue data replaced (no re-validation)."""
    return replace(chart, residues=replace(chart.residues, **changes))
