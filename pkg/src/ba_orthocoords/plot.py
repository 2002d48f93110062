"""Static SVG drawings of the coordinate lines ``u = const`` and ``v = const``.

Sphere charts are drawn in orthographic projection onto the (x2, x3) plane,
with the back hemisphere (x1 < 0) dashed.  Hyperboloid charts are mapped to
the Poincare disk by ``(x2, x3) / (1 + x1)``.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET

import numpy as np

from .chart import CoordinateChart
from .errors import BAError

PROJECTIONS = ("orthographic", "disk", "plane-x2x3")
SIZE = 600
COLORS = ("#1f5fa8", "#c0392b")


def coordinate_lines(
    chart: CoordinateChart,
    ranges: tuple[tuple[float, float], tuple[float, float]],
    families: tuple[int, int],
    samples: int = 200,
) -> list[tuple[int, float, np.ndarray]]:
    """Sample both line families as ``(family, constant, points)``.

    Family 0 holds ``u = const`` (v varies), family 1 ``v = const``.  Points
    where the chart fails are NaN rows.
    """
    if chart.n != 2:
        raise ValueError("coordinate lines are only drawn for n = 2")
    out = []
    for fam in (0, 1):
        other = 1 - fam
        for c in np.linspace(*ranges[fam], families[fam]) if families[fam] else []:
            pts = np.full((samples, 3), np.nan)
            for k, t in enumerate(np.linspace(*ranges[other], samples)):
                u = np.empty(2)
                u[fam], u[other] = c, t
                try:
                    pts[k] = chart.x(u)
                except BAError:
                    pass
            out.append((fam, float(c), pts))
    return out


def project(points: np.ndarray, projection: str) -> tuple[np.ndarray, np.ndarray]:
    """2-D image of embedded points and a per-point visibility mask."""
    if projection == "orthographic":
        return points[:, 1:3], points[:, 0] >= 0
    if projection == "disk":
        return points[:, 1:3] / (1 + points[:, :1]), np.ones(len(points), bool)
    if projection == "plane-x2x3":
        return points[:, 1:3], np.ones(len(points), bool)
    raise ValueError(f"unknown projection {projection!r}; expected one of {PROJECTIONS}")


def _fmt(x: float) -> str:
    return f"{x:.3f}"


def render_svg(
    lines: list[tuple[int, float, np.ndarray]],
    projection: str,
    title: str = "",
) -> str:
    planar = [(fam, c, *project(pts, projection)) for fam, c, pts in lines]
    if projection == "plane-x2x3" and planar:
        finite = np.concatenate([xy[np.isfinite(xy).all(1)] for _, _, xy, _ in planar])
        extent = float(np.max(np.abs(finite))) * 1.05 if finite.size else 1.0
    else:
        extent = 1.1
    scale = SIZE / (2 * extent)

    def to_px(xy: np.ndarray) -> np.ndarray:
        return np.column_stack([SIZE / 2 + scale * xy[:, 0], SIZE / 2 - scale * xy[:, 1]])

    svg = ET.Element(
        "svg",
        xmlns="http://www.w3.org/2000/svg",
        version="1.1",
        width=str(SIZE),
        height=str(SIZE),
        viewBox=f"0 0 {SIZE} {SIZE}",
    )
    if title:
        ET.SubElement(svg, "title").text = title
    axes = ET.SubElement(svg, "g", id="axes", stroke="#888888", fill="none")
    ET.SubElement(axes, "line", x1="0", y1=str(SIZE / 2), x2=str(SIZE), y2=str(SIZE / 2))
    ET.SubElement(axes, "line", x1=str(SIZE / 2), y1="0", x2=str(SIZE / 2), y2=str(SIZE))
    if projection in ("orthographic", "disk"):
        ET.SubElement(axes, "circle", cx=str(SIZE / 2), cy=str(SIZE / 2), r=_fmt(scale))

    groups = [
        ET.SubElement(svg, "g", id=f"family-{name}", stroke=color, fill="none")
        for name, color in zip(("u", "v"), COLORS)
    ]
    for fam, c, xy, visible in planar:
        ok = np.isfinite(xy).all(axis=1)
        px = to_px(xy)
        g = ET.SubElement(groups[fam], "g", {"data-const": repr(c)})
        dashed = projection == "orthographic"
        ET.SubElement(
            g,
            "polyline",
            points=" ".join(f"{_fmt(x)},{_fmt(y)}" for (x, y), good in zip(px, ok) if good),
            **({"stroke-dasharray": "4 3", "stroke-opacity": "0.45"} if dashed else {"stroke-width": "1.2"}),
        )
        if dashed:
            # solid overlay for the front hemisphere
            d, pen = [], False
            for (x, y), good, vis in zip(px, ok, visible):
                if good and vis:
                    d.append(("L" if pen else "M") + f"{_fmt(x)},{_fmt(y)}")
                    pen = True
                else:
                    pen = False
            if d:
                ET.SubElement(g, "path", d=" ".join(d), **{"stroke-width": "1.2"})
    return '<?xml version="1.0" encoding="UTF-8"?>\n' + ET.tostring(svg, encoding="unicode") + "\n"


def plot_chart(
    chart: CoordinateChart,
    ranges,
    families=(12, 12),
    samples: int = 200,
    projection: str | None = None,
    title: str = "",
) -> str:
    if projection is None:
        projection = "orthographic" if chart.curvature > 0 else "disk"
    if projection not in PROJECTIONS:
        raise ValueError(f"unknown projection {projection!r}; expected one of {PROJECTIONS}")
    return render_svg(coordinate_lines(chart, ranges, families, samples), projection, title)
