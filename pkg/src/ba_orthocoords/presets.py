"""The two worked examples: a three-component curve giving charts on S^2 and H^2.

Layout shared by both examples (components are 0-based here):

    G1: P1 = inf, r = 0, nodes at +-a
    G2: P2 = inf, Q1 = 0, gamma1, nodes at +-b, +-c
    G3: Q2 = inf, Q3 = 0, gamma2, nodes at +-d

with nodes a~b, -a~-b, c~d, -c~-d.
"""

from __future__ import annotations

import math

from .curve import GluePair, PointOnCurve, SpectralData
from .omega import OneFormSpec
from .rational import INF, Poly, RationalFunction

SQRT3 = math.sqrt(3.0)


def _pt(component: int, z) -> PointOnCurve:
    return PointOnCurve(component, INF if z is None else z)


def three_component_data(a, b, c, d, gamma1, gamma2, h, curvature_target) -> SpectralData:
    glue = (
        GluePair(_pt(0, a), _pt(1, b)),
        GluePair(_pt(0, -a), _pt(1, -b)),
        GluePair(_pt(1, c), _pt(2, d)),
        GluePair(_pt(1, -c), _pt(2, -d)),
    )
    return SpectralData(
        n=2,
        components=3,
        glue=glue,
        P=(_pt(0, None), _pt(1, None)),
        Q=(_pt(1, 0), _pt(2, None), _pt(2, 0)),
        r=_pt(0, 0),
        gamma=(_pt(1, gamma1), _pt(2, gamma2)),
        h=h,
        curvature_target=curvature_target,
    )


def _even(root) -> Poly:
    """``z**2 - root**2``."""
    return Poly((-complex(root) ** 2, 0, 1))


def three_component_forms(a, b, c, d, gamma1, gamma2) -> OneFormSpec:
    z = Poly((0, 1))
    one = Poly((1,))
    return OneFormSpec(
        (
            RationalFunction(one, z * _even(a)),
            RationalFunction(_even(gamma1), z * _even(b) * _even(c)),
            RationalFunction(_even(gamma2), z * _even(d)),
        )
    )


SPHERE_PARAMS = dict(a=1j / SQRT3, b=1j / SQRT3, c=1j, d=1j, gamma1=1 / SQRT3, gamma2=1.0)
HYPERBOLIC_PARAMS = dict(a=-1.0, b=1.0, c=1j, d=1j, gamma1=SQRT3, gamma2=1.0)


def sphere_example() -> tuple[SpectralData, OneFormSpec]:
    """Chart on S^2: ``a = b = i/sqrt(3)``, ``c = d = i``, ``h = 1/sqrt(3)``."""
    sd = three_component_data(**SPHERE_PARAMS, h=1 / SQRT3, curvature_target=1)
    return sd, three_component_forms(**SPHERE_PARAMS)


def hyperbolic_example() -> tuple[SpectralData, OneFormSpec]:
    """Chart on H^2: ``a = -1``, ``b = 1``, ``c = d = i``, ``h = 1``."""
    sd = three_component_data(**HYPERBOLIC_PARAMS, h=1.0, curvature_target=-1)
    return sd, three_component_forms(**HYPERBOLIC_PARAMS)
