"""Singular reducible spectral curves: CP^1 components glued at nodes.

Every component carries the holomorphic involution ``sigma: z -> -z`` and the
antiholomorphic involution ``tau: z -> conj(z)``; both fix infinity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from .rational import ProjectivePoint, as_point, same_point


@dataclass(frozen=True)
class PointOnCurve:
    component: int
    point: ProjectivePoint

    def __post_init__(self):
        object.__setattr__(self, "point", as_point(self.point))
        if self.component < 0:
            raise ValueError("component index must be non-negative")

    @property
    def z(self):
        return self.point.z

    @property
    def is_infinite(self) -> bool:
        return self.point.is_infinite

    def same_as(self, other: PointOnCurve) -> bool:
        return self.component == other.component and same_point(self.point, other.point)

    def __repr__(self):
        return f"{self.point!r}@G{self.component + 1}"


@dataclass(frozen=True)
class GluePair:
    first: PointOnCurve
    second: PointOnCurve

    def points(self) -> tuple[PointOnCurve, PointOnCurve]:
        return self.first, self.second

    def matches(self, other: GluePair) -> bool:
        """Equality as an unordered pair."""
        return (self.first.same_as(other.first) and self.second.same_as(other.second)) or (
            self.first.same_as(other.second) and self.second.same_as(other.first)
        )


def sigma_image(p: PointOnCurve) -> PointOnCurve:
    """Holomorphic involution ``z -> -z`` on the component of ``p``."""
    if p.is_infinite:
        return p
    return PointOnCurve(p.component, ProjectivePoint(-p.z))


def tau_image(p: PointOnCurve) -> PointOnCurve:
    """Antiholomorphic involution ``z -> conj(z)`` on the component of ``p``."""
    if p.is_infinite:
        return p
    return PointOnCurve(p.component, ProjectivePoint(p.z.conjugate()))


@dataclass(frozen=True)
class SpectralData:
    """Spectral data of the construction on a nodal curve.

    ``P[j]`` is the point where the exponential ``exp(u_j k_j)`` sits; the
    component carrying it is the one whose prefactor involves ``u_j``.
    """

    n: int
    components: int
    glue: tuple[GluePair, ...]
    P: tuple[PointOnCurve, ...]
    Q: tuple[PointOnCurve, ...]
    r: PointOnCurve
    r_zeros: tuple[PointOnCurve, ...] = ()
    gamma: tuple[PointOnCurve, ...] = ()
    h: float = 1.0
    curvature_target: int = 1

    def __post_init__(self):
        for name in ("glue", "P", "Q", "r_zeros", "gamma"):
            object.__setattr__(self, name, tuple(getattr(self, name)))

    @property
    def s(self) -> int:
        return len(self.glue)

    @property
    def l(self) -> int:  # noqa: E743
        return len(self.r_zeros)

    @property
    def genus(self) -> int:
        """Arithmetic genus ``#nodes - #components + 1``."""
        return self.s - self.components + 1

    @property
    def unknown_count(self) -> int:
        return self.components + len(self.gamma)

    @property
    def equation_count(self) -> int:
        return self.s + 1 + self.l

    def marked_points(self) -> Iterator[tuple[str, PointOnCurve]]:
        for j, p in enumerate(self.P):
            yield f"P{j + 1}", p
        for j, q in enumerate(self.Q):
            yield f"Q{j + 1}", q
        yield "r", self.r
        for j, p in enumerate(self.r_zeros):
            yield f"r{j + 1}", p
        for j, p in enumerate(self.gamma):
            yield f"gamma{j + 1}", p

    def glue_points(self) -> Iterator[tuple[str, PointOnCurve]]:
        for j, g in enumerate(self.glue):
            yield f"node{j + 1}.a", g.first
            yield f"node{j + 1}.b", g.second

    def points_on(self, component: int) -> list[tuple[str, PointOnCurve]]:
        return [
            (name, p)
            for name, p in (*self.marked_points(), *self.glue_points())
            if p.component == component
        ]

    def p_component(self, component: int) -> int | None:
        """Index ``j`` of the P-point on ``component``, if any."""
        for j, p in enumerate(self.P):
            if p.component == component:
                return j
        return None


@dataclass
class ValidationReport:
    """Violations make a report fail; notes are informational."""

    violations: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def extend(self, other: ValidationReport) -> ValidationReport:
        self.violations.extend(other.violations)
        self.notes.extend(other.notes)
        return self

    def __str__(self):
        lines = [f"  note: {n}" for n in self.notes]
        lines += [f"  VIOLATION: {v}" for v in self.violations]
        lines.append("  status: " + ("clean" if self.ok else f"{len(self.violations)} violation(s)"))
        return "\n".join(lines)


def _is_sigma_fixed(p: PointOnCurve) -> bool:
    return p.is_infinite or abs(p.z) <= 1e-12


def _is_real(p: PointOnCurve) -> bool:
    return p.is_infinite or abs(p.z.imag) <= 1e-12 * max(1.0, abs(p.z))


def _connected(components: int, glue: tuple[GluePair, ...]) -> bool:
    parent = list(range(components))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for g in glue:
        parent[find(g.first.component)] = find(g.second.component)
    return len({find(i) for i in range(components)}) <= 1


def validate(sd: SpectralData) -> ValidationReport:
    """Check every structural condition on the spectral data.

    Returns a report listing each violated condition with the offending
    point; an empty violation list means the data is usable.
    """
    rep = ValidationReport()
    v = rep.violations
    m = sd.components

    everything = list(sd.marked_points()) + list(sd.glue_points())
    bad_index = [name for name, p in everything if p.component >= m]
    for name in bad_index:
        v.append(f"{name} lies on a component index >= {m}")
    if bad_index:
        return rep

    if sd.n < 1:
        v.append(f"n must be positive, got {sd.n}")
    if len(sd.P) != sd.n:
        v.append(f"|P| = {len(sd.P)} but n = {sd.n}")
    if len(sd.Q) != sd.n + 1:
        v.append(f"|Q| = {len(sd.Q)} but n + 1 = {sd.n + 1}")
    if sd.h == 0:
        v.append("normalization constant h is zero")
    if sd.curvature_target not in (1, -1):
        v.append(f"curvature_target must be +1 or -1, got {sd.curvature_target}")

    g = sd.genus
    rep.notes.append(
        f"arithmetic genus g = s - m + 1 = {sd.s} - {m} + 1 = {g}; l = {sd.l}; |gamma| = {len(sd.gamma)}"
    )
    rep.notes.append(
        "counting (nodal-curve interpretation): unknowns m + |gamma| = "
        f"{sd.unknown_count}, equations s + 1 + l = {sd.equation_count}"
    )
    if g < 0:
        v.append(f"arithmetic genus is negative: s - m + 1 = {g}")
    if len(sd.gamma) != g + sd.l:
        v.append(f"|gamma| = {len(sd.gamma)} but g + l = {g + sd.l}")
    if not _connected(m, sd.glue):
        v.append("dual graph of the curve is disconnected")

    stationary = [(f"P{j + 1}", p) for j, p in enumerate(sd.P)]
    stationary += [(f"Q{j + 1}", q) for j, q in enumerate(sd.Q)]
    stationary.append(("r", sd.r))
    for name, p in stationary:
        if not _is_sigma_fixed(p):
            v.append(f"{name} = {p!r} is not fixed by sigma (must be 0 or inf)")
    for name, p in sd.marked_points():
        if name.startswith("r") and name != "r" and not _is_real(p):
            v.append(f"{name} = {p!r} is not fixed by tau")
        if name.startswith("gamma"):
            if p.is_infinite:
                v.append(f"{name} must be a finite point")
            elif not _is_real(p):
                v.append(f"{name} = {p!r} is not fixed by tau (must be real)")

    p_comps = [p.component for p in sd.P]
    for c in set(p_comps):
        if p_comps.count(c) > 1:
            v.append(f"component G{c + 1} carries more than one P point")

    for j, gp in enumerate(sd.glue):
        if gp.first.component == gp.second.component:
            v.append(f"node{j + 1} glues two points of the same component G{gp.first.component + 1}")
        for end in gp.points():
            for name, p in sd.marked_points():
                if end.same_as(p):
                    what = "gamma" if name.startswith("gamma") else name
                    v.append(f"{what} coincides with node{j + 1} at {p!r} ({name})")

    for label, image in (("sigma", sigma_image), ("tau", tau_image)):
        for j, gp in enumerate(sd.glue):
            moved = GluePair(image(gp.first), image(gp.second))
            if not any(moved.matches(other) for other in sd.glue):
                v.append(f"glue set is not {label}-invariant: image of node{j + 1} is missing")

    for c in range(m):
        pts = sd.points_on(c)
        for i in range(len(pts)):
            for k in range(i + 1, len(pts)):
                (n1, p1), (n2, p2) = pts[i], pts[k]
                if n1.startswith("node") and n2.startswith("node"):
                    if p1.same_as(p2):
                        v.append(f"{n1} and {n2} coincide at {p1!r}")
                    continue
                if n1.startswith("node") or n2.startswith("node"):
                    continue  # reported above
                if p1.same_as(p2):
                    v.append(f"{n1} and {n2} coincide at {p1!r}")
    return rep
