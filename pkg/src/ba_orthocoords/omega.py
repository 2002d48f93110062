"""The meromorphic 1-form Omega on a nodal curve and its residue data.

Omega is given componentwise as ``forms[i] dz_i``.  Besides the divisor
prescribed at the marked points, Omega may have simple poles at the nodes,
provided the two residues at each node cancel.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass

from .curve import PointOnCurve, SpectralData, ValidationReport, sigma_image
from .errors import ConfigurationError
from .rational import (
    ProjectivePoint,
    RationalFunction,
    divisor,
    local_expansion,
    residue_at,
    same_point,
)

IMAG_TOL = 1e-10
GLUE_TOL = 1e-10


@dataclass(frozen=True)
class OneFormSpec:
    forms: tuple[RationalFunction, ...]

    def __post_init__(self):
        object.__setattr__(self, "forms", tuple(self.forms))

    def scaled(self, factor: float) -> OneFormSpec:
        return OneFormSpec(tuple(f.scaled(factor) for f in self.forms))

    def on(self, p: PointOnCurve) -> RationalFunction:
        return self.forms[p.component]


@dataclass(frozen=True)
class ResidueData:
    """Residues ``A_i`` at ``Q_i``, ``B`` at ``r`` and expansion data ``C_i`` at ``P_i``."""

    A: tuple[float, ...]
    B: float
    C: tuple[float, ...]

    def scaled(self, factor: float) -> ResidueData:
        return ResidueData(
            tuple(a * factor for a in self.A), self.B * factor, tuple(c * factor for c in self.C)
        )


class _PointCounter:
    """Multiset of points on one component, keyed up to POINT_TOL."""

    def __init__(self):
        self.items: list[list] = []

    def add(self, p: ProjectivePoint, k: int = 1):
        for item in self.items:
            if same_point(item[0], p):
                item[1] += k
                return
        self.items.append([p, k])

    def get(self, p: ProjectivePoint) -> int:
        for q, k in self.items:
            if same_point(q, p):
                return k
        return 0

    def points(self):
        return [q for q, k in self.items if k]


def _expected_divisor(sd: SpectralData):
    """Expected zero and pole multisets per component, plus glue points."""
    zeros = defaultdict(_PointCounter)
    poles = defaultdict(_PointCounter)
    nodes = defaultdict(list)
    for g in sd.gamma:
        zeros[g.component].add(g.point)
        zeros[g.component].add(sigma_image(g).point)
    for p in sd.P:
        zeros[p.component].add(p.point)
    for q in sd.Q:
        poles[q.component].add(q.point)
    poles[sd.r.component].add(sd.r.point)
    for ri in sd.r_zeros:
        poles[ri.component].add(ri.point)
        poles[ri.component].add(sigma_image(ri).point)
    for gp in sd.glue:
        for end in gp.points():
            nodes[end.component].append(end.point)
    return zeros, poles, nodes


def check_divisor(sd: SpectralData, om: OneFormSpec) -> ValidationReport:
    """Compare the divisor of Omega with ``D + sigma D + P - Q - R - sigma r_i``.

    Simple poles at node points are allowed on top of the prescribed poles.
    """
    rep = ValidationReport()
    v = rep.violations
    if len(om.forms) != sd.components:
        v.append(f"{len(om.forms)} forms given for {sd.components} components")
        return rep
    zeros, poles, nodes = _expected_divisor(sd)
    for c, form in enumerate(om.forms):
        name = f"G{c + 1}"
        if form.num.is_zero:
            v.append(f"{name}: form is identically zero")
            continue
        if not form.is_reduced():
            v.append(f"{name}: form is not reduced (numerator and denominator share a root)")
        actual = _PointCounter()
        for p, k in divisor(form):
            actual.add(p, k)

        expected = _PointCounter()
        for p in zeros[c].points():
            expected.add(p, zeros[c].get(p))
        for p in poles[c].points():
            expected.add(p, -poles[c].get(p))
        for p in nodes[c]:
            if expected.get(p) != 0:
                v.append(f"{name}: node point {p!r} coincides with a prescribed zero or pole")
            expected.add(p, -1)

        seen = []
        for p in actual.points() + expected.points():
            if any(same_point(p, q) for q in seen):
                continue
            seen.append(p)
            have, want = actual.get(p), expected.get(p)
            if have == want:
                continue
            if want > 0 and have < want:
                v.append(f"{name}: missing zero at {p!r} (expected order {want}, found {have})")
            elif want < 0 and have > want:
                what = "simple pole at node" if any(same_point(p, q) for q in nodes[c]) else "pole"
                v.append(f"{name}: missing {what} at {p!r} (expected order {want}, found {have})")
            elif have > 0:
                v.append(f"{name}: excess zero at {p!r} (order {have}, expected {want})")
            else:
                v.append(f"{name}: excess pole at {p!r} (order {have}, expected {want})")

        for p in actual.points():
            if p.is_infinite:
                continue
            mirror = ProjectivePoint(-p.z)
            if actual.get(p) != actual.get(mirror):
                kind = "zero" if actual.get(p) > 0 else "pole"
                v.append(f"{name}: {kind} divisor not sigma-symmetric at {p!r}")

    if not (sd.r.is_infinite or abs(sd.r.z) <= 1e-12):
        v.append(f"r = {sd.r!r} is not sigma-fixed; B = Res_r Omega is then ill-posed")
    return rep


def check_glue_residues(sd: SpectralData, om: OneFormSpec) -> list[float]:
    """``|Res_a Omega + Res_b Omega|`` for every node ``(a, b)``."""
    return [
        abs(residue_at(om.on(g.first), g.first.point) + residue_at(om.on(g.second), g.second.point))
        for g in sd.glue
    ]


def _real(value: complex, what: str) -> float:
    if abs(value.imag) > IMAG_TOL:
        raise ConfigurationError(f"{what} = {value} is not real (tau-conditions violated)")
    return float(value.real)


def expansion_coefficient(form: RationalFunction, p) -> complex:
    """Coefficient ``C`` of ``Omega = (C t + ...) dt`` at ``p``, ``t = 1/k``.

    Requires Omega to vanish at ``p``; returns 0 when it vanishes to order > 1.
    """
    s = local_expansion(form, p, 2)
    if s.order < 1:
        raise ConfigurationError(f"Omega does not vanish at P = {p!r}; C is undefined")
    return s.coefficient(1) if s.order == 1 else 0j


def extract_residue_data(sd: SpectralData, om: OneFormSpec) -> ResidueData:
    A = tuple(_real(residue_at(om.on(q), q.point), f"A{i + 1}") for i, q in enumerate(sd.Q))
    B = _real(residue_at(om.on(sd.r), sd.r.point), "B")
    C = tuple(
        _real(expansion_coefficient(om.on(p), p.point), f"C{i + 1}") for i, p in enumerate(sd.P)
    )
    return ResidueData(A, B, C)


def normalize_form(
    sd: SpectralData, om: OneFormSpec, rd: ResidueData
) -> tuple[OneFormSpec, ResidueData]:
    """Rescale Omega by a real constant so that ``h**2 * B == -1``."""
    if rd.B == 0:
        raise ConfigurationError("normalization impossible: Res_r Omega = 0")
    if sd.h == 0:
        raise ConfigurationError("normalization impossible: h = 0")
    lam = -1.0 / (sd.h**2 * rd.B)
    scaled = rd.scaled(lam)
    # exact by construction, not by floating-point luck
    scaled = ResidueData(scaled.A, -1.0 / sd.h**2, scaled.C)
    return om.scaled(lam), scaled


def check_equal_q_residues(rd: ResidueData) -> float:
    """``max_i |A_i - A_1|`` (advisory)."""
    return max(abs(a - rd.A[0]) for a in rd.A)
