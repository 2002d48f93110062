"""Complex polynomials, rational functions and rational 1-forms on CP^1.

A rational 1-form ``f(z) dz`` is represented by the :class:`RationalFunction`
``f``; whether an object is read as a function or as a form is decided by the
operation (``evaluate`` treats it as a function, ``residue_at`` and
``local_expansion`` as a form).

Local parameters follow one global convention: at a finite point ``p`` the
vanishing coordinate is ``t = z - p`` (so ``k = 1/(z - p)``), at infinity it
is ``w = 1/z`` (so ``k = z``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from numbers import Number
from typing import Iterable, Sequence

import numpy as np
from numpy.polynomial import polynomial as npoly

# Grouping tolerance for roots of a single polynomial. Companion-matrix roots
# of an m-fold root scatter like eps**(1/m), so this is looser than POINT_TOL.
ROOT_TOL = 1e-7
# Roots closer than this are candidates for one multiple root; see
# Poly.root_clusters for the test that decides.
CANDIDATE_TOL = 1e-2
NOISE_FACTOR = 3.0
# Two user-level points closer than this (relative) are the same point.
POINT_TOL = 1e-9
# Taylor coefficients below this fraction of the largest one are zero.
ZERO_TOL = 1e-10


class _Pole:
    """Value-level marker returned by :func:`evaluate` at a pole."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "POLE"


POLE = _Pole()


# --------------------------------------------------------------------------
# points
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class ProjectivePoint:
    """A point of CP^1: finite ``z`` or infinity (``z is None``)."""

    z: complex | None

    def __post_init__(self):
        if self.z is not None:
            z = complex(self.z)
            if not (math.isfinite(z.real) and math.isfinite(z.imag)):
                raise ValueError("use ProjectivePoint(None) for the point at infinity")
            object.__setattr__(self, "z", z)

    @property
    def is_infinite(self) -> bool:
        return self.z is None

    def __repr__(self):
        return "inf" if self.z is None else f"{self.z:.12g}"


INF = ProjectivePoint(None)


def as_point(p) -> ProjectivePoint:
    """Coerce numbers, ``"inf"``, ``math.inf`` or points to :class:`ProjectivePoint`."""
    if isinstance(p, ProjectivePoint):
        return p
    if p is None or (isinstance(p, str) and p.lower() in ("inf", "infinity", "oo")):
        return INF
    if isinstance(p, Number):
        c = complex(p)
        if math.isinf(c.real) or math.isinf(c.imag):
            return INF
        return ProjectivePoint(c)
    raise TypeError(f"cannot interpret {p!r} as a point of CP^1")


def same_point(p: ProjectivePoint, q: ProjectivePoint, tol: float = POINT_TOL) -> bool:
    if p.is_infinite or q.is_infinite:
        return p.is_infinite and q.is_infinite
    return abs(p.z - q.z) <= tol * max(1.0, abs(p.z), abs(q.z))


# --------------------------------------------------------------------------
# polynomials
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Poly:
    """Complex polynomial, coefficients in ascending degree."""

    coeffs: tuple[complex, ...]

    def __post_init__(self):
        c = [complex(x) for x in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def from_roots(cls, roots: Iterable[complex], lead: complex = 1.0) -> Poly:
        c = npoly.polyfromroots(list(roots)) if roots else np.array([1.0])
        return cls(tuple(lead * np.asarray(c, dtype=complex)))

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        """Degree; ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def array(self) -> np.ndarray:
        return np.array(self.coeffs if self.coeffs else (0j,), dtype=complex)

    def __call__(self, z):
        return npoly.polyval(z, self.array)

    def __add__(self, other: Poly) -> Poly:
        return Poly(tuple(npoly.polyadd(self.array, other.array)))

    def __sub__(self, other: Poly) -> Poly:
        return Poly(tuple(npoly.polysub(self.array, other.array)))

    def __neg__(self) -> Poly:
        return Poly(tuple(-self.array))

    def __mul__(self, other):
        if isinstance(other, Poly):
            return Poly(tuple(npoly.polymul(self.array, other.array)))
        return Poly(tuple(self.array * complex(other)))

    __rmul__ = __mul__

    def divmod(self, other: Poly) -> tuple[Poly, Poly]:
        q, r = npoly.polydiv(self.array, other.array)
        return Poly(tuple(q)), Poly(tuple(r))

    def roots(self) -> np.ndarray:
        if self.degree < 1:
            return np.empty(0, dtype=complex)
        return np.asarray(npoly.polyroots(self.array), dtype=complex)

    def _noise_radius(self, center: complex, multiplicity: int) -> float:
        """How far rounding alone scatters the computed roots of a k-fold root.

        A relative coefficient perturbation of size eps moves a k-fold root
        at ``center`` by about ``(eps * |p|_c / |p^(k)(c)/k!|)**(1/k)``.
        """
        taylor = self.shifted(center)
        lead = abs(taylor[multiplicity]) if multiplicity < len(taylor) else 0.0
        if lead == 0:
            return math.inf
        weights = max(1.0, abs(center)) ** np.arange(len(self.coeffs))
        size = float(np.sum(np.abs(self.array) * weights))
        return (np.finfo(float).eps * size / lead) ** (1.0 / multiplicity)

    def root_clusters(self) -> list[tuple[complex, int]]:
        """Distinct roots with multiplicities.

        Nearby computed roots are merged into one multiple root when their
        spread is within what rounding produces for that multiplicity.  A
        group that fails is split at a tighter tolerance and retried, down
        to ROOT_TOL.
        """
        out = []
        for members in _group_roots(self.roots(), CANDIDATE_TOL):
            out.extend(self._split(members, CANDIDATE_TOL))
        return out

    def _split(self, members: list[complex], tol: float) -> list[tuple[complex, int]]:
        k = len(members)
        center = complex(sum(members) / k)
        spread = max(abs(m - center) for m in members)
        if k == 1 or spread <= NOISE_FACTOR * self._noise_radius(center, k):
            return [(center, k)]
        if tol <= ROOT_TOL:
            return cluster_roots(members, ROOT_TOL)
        tighter = max(tol / 10, ROOT_TOL)
        out = []
        for group in _group_roots(members, tighter):
            out.extend(self._split(group, tighter))
        return out

    def shifted(self, p: complex) -> np.ndarray:
        """Coefficients of ``t -> self(p + t)`` (Taylor shift), ascending."""
        out = np.zeros(1, dtype=complex)
        for c in reversed(self.coeffs):
            out = npoly.polyadd(npoly.polymul(out, [p, 1.0]), [c])
        return np.asarray(out, dtype=complex)

    def reversed(self) -> np.ndarray:
        """Coefficients of ``w**deg * self(1/w)``."""
        return np.array(self.coeffs[::-1], dtype=complex)


def cluster_roots(roots: Sequence[complex], tol: float = ROOT_TOL) -> list[tuple[complex, int]]:
    """Group numerically coincident roots into ``(center, multiplicity)`` pairs."""
    return [(complex(sum(g) / len(g)), len(g)) for g in _group_roots(roots, tol)]


def _group_roots(roots: Sequence[complex], tol: float) -> list[list[complex]]:
    remaining = list(roots)
    clusters = []
    while remaining:
        seed = remaining.pop(0)
        members = [seed]
        changed = True
        while changed:
            changed = False
            center = sum(members) / len(members)
            scale = max(1.0, abs(center))
            for r in list(remaining):
                if abs(r - center) <= tol * scale:
                    members.append(r)
                    remaining.remove(r)
                    changed = True
        clusters.append(members)
    return clusters


# --------------------------------------------------------------------------
# rational functions
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class RationalFunction:
    """``num(z) / den(z)``; doubles as the 1-form ``num/den dz``."""

    num: Poly
    den: Poly

    def __post_init__(self):
        if not isinstance(self.num, Poly):
            object.__setattr__(self, "num", Poly(tuple(self.num)))
        if not isinstance(self.den, Poly):
            object.__setattr__(self, "den", Poly(tuple(self.den)))
        if self.den.is_zero:
            raise ValueError("denominator is identically zero")

    @classmethod
    def from_coeffs(cls, num: Sequence[complex], den: Sequence[complex]) -> RationalFunction:
        return cls(Poly(tuple(num)), Poly(tuple(den)))

    def scaled(self, factor: complex) -> RationalFunction:
        return RationalFunction(self.num * factor, self.den)

    def __call__(self, z):
        return self.num(z) / self.den(z)

    def _common_roots(self, tol: float = ROOT_TOL) -> list[tuple[complex, int]]:
        if self.num.is_zero:
            return []
        num_clusters = self.num.root_clusters()
        common = []
        for r, m in self.den.root_clusters():
            for s, k in num_clusters:
                if abs(r - s) <= tol * max(1.0, abs(r)):
                    common.append(((r + s) / 2, min(m, k)))
        return common

    def is_reduced(self, tol: float = ROOT_TOL) -> bool:
        return not self._common_roots(tol)

    def reduced(self, tol: float = ROOT_TOL) -> RationalFunction:
        """Cancel factors shared by numerator and denominator."""
        if self.num.is_zero:
            return RationalFunction(Poly(()), Poly((1.0,)))
        num, den = self.num, self.den
        for r, m in self._common_roots(tol):
            factor = Poly.from_roots([r] * m)
            num = num.divmod(factor)[0]
            den = den.divmod(factor)[0]
        return RationalFunction(num, den)

    def poles(self) -> list[tuple[complex, int]]:
        """Finite poles with orders (assumes reduced input)."""
        return self.den.root_clusters()

    def zeros(self) -> list[tuple[complex, int]]:
        """Finite zeros with orders (assumes reduced input)."""
        if self.num.is_zero:
            raise ValueError("the zero function has no isolated zeros")
        return self.num.root_clusters()


# --------------------------------------------------------------------------
# Laurent expansions
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class LaurentSeries:
    """Truncated Laurent series ``sum_k coeffs[k] * t**(order + k)``."""

    order: int
    coeffs: tuple[complex, ...]

    def coefficient(self, power: int) -> complex:
        idx = power - self.order
        if idx < 0:
            return 0j
        if idx >= len(self.coeffs):
            raise IndexError(f"coefficient of t^{power} was not computed")
        return self.coeffs[idx]


def _valuation(c: np.ndarray) -> tuple[int, np.ndarray]:
    """Strip leading (low-order) coefficients that are numerically zero."""
    scale = np.max(np.abs(c)) if c.size else 0.0
    if scale == 0.0:
        raise ValueError("series is identically zero")
    k = 0
    while abs(c[k]) <= ZERO_TOL * scale:
        k += 1
    return k, c[k:]


def _series_quotient(a: np.ndarray, b: np.ndarray, count: int) -> LaurentSeries:
    va, a = _valuation(a)
    vb, b = _valuation(b)
    out = np.zeros(count, dtype=complex)
    for k in range(count):
        acc = a[k] if k < a.size else 0j
        for j in range(1, min(k, b.size - 1) + 1):
            acc -= b[j] * out[k - j]
        out[k] = acc / b[0]
    return LaurentSeries(va - vb, tuple(out))


def function_expansion(rf: RationalFunction, p, count: int) -> LaurentSeries:
    """Laurent series of the function ``rf`` in the vanishing coordinate at ``p``."""
    if count < 1:
        raise ValueError("count must be positive")
    p = as_point(p)
    if rf.num.is_zero:
        return LaurentSeries(0, (0j,) * count)
    if p.is_infinite:
        s = _series_quotient(rf.num.reversed(), rf.den.reversed(), count)
        return LaurentSeries(s.order + rf.den.degree - rf.num.degree, s.coeffs)
    return _series_quotient(rf.num.shifted(p.z), rf.den.shifted(p.z), count)


def local_expansion(form: RationalFunction, p, count: int) -> LaurentSeries:
    """Expansion of the 1-form ``form dz`` as ``(sum c_k t^k) dt`` at ``p``.

    ``t = z - p`` at finite points and ``t = 1/z`` at infinity, i.e. ``t`` is
    always ``k**-1`` for the fixed local parameter ``k``.
    """
    p = as_point(p)
    s = function_expansion(form, p, count)
    if p.is_infinite:
        # dz = -dw / w**2
        return LaurentSeries(s.order - 2, tuple(-c for c in s.coeffs))
    return s


def evaluate(rf: RationalFunction, p):
    """Value of ``rf`` at ``p``; returns :data:`POLE` at a pole."""
    p = as_point(p)
    if not p.is_infinite:
        den = rf.den(p.z)
        if abs(den) > 1e-8 * max(np.max(np.abs(rf.den.array)), 1.0):
            return complex(rf.num(p.z) / den)
    s = function_expansion(rf, p, 1)
    if s.order < 0:
        return POLE
    return 0j if s.order > 0 else complex(s.coeffs[0])


def residue_at(form: RationalFunction, p) -> complex:
    """Residue of ``form dz`` at ``p`` (any pole order; 0 at regular points)."""
    if not form.is_reduced():
        raise ValueError("residue_at requires a reduced rational function")
    if form.num.is_zero:
        return 0j
    s = local_expansion(form, p, 1)
    if s.order >= 0:
        return 0j
    s = local_expansion(form, p, -s.order)
    return complex(s.coefficient(-1))


def divisor(form: RationalFunction) -> list[tuple[ProjectivePoint, int]]:
    """Divisor of the 1-form ``form dz``: points with nonzero order."""
    rf = form.reduced()
    out = [(ProjectivePoint(z), m) for z, m in rf.zeros()]
    out += [(ProjectivePoint(z), -m) for z, m in rf.poles()]
    at_inf = rf.den.degree - rf.num.degree - 2
    if at_inf:
        out.append((INF, at_inf))
    return out


def residue_sum_check(form: RationalFunction) -> float:
    """``|sum of all residues|`` of ``form dz``, infinity included."""
    rf = form.reduced()
    if rf.num.is_zero:
        return 0.0
    total = sum(residue_at(rf, z) for z, _ in rf.poles())
    total += residue_at(rf, INF)
    return abs(total)
