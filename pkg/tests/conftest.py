import math

import numpy as np
import pytest

from ba_orthocoords.chart import chart_from_raw
from ba_orthocoords.presets import hyperbolic_example, sphere_example
from ba_orthocoords.verify import Grid

TWO_PI = 2 * math.pi
SPHERE_GRID = Grid(((0.0, TWO_PI), (0.0, TWO_PI)), (20, 20))
HYPERBOLIC_GRID = Grid(((-1.0, 1.0), (-1.0, 1.0)), (20, 20))
SPHERE_FD_GRID = Grid(((0.1, 2.0), (0.1, 2.0)), (20, 20))
HYPERBOLIC_FD_GRID = Grid(((-0.5, 0.5), (-0.5, 0.5)), (20, 20))


def contour_residue(f, center: complex, radius: float = 1e-2, nodes: int = 256) -> complex:
    """Residue of f(z) dz at ``center`` by the trapezoid rule on a small circle.

    Independent of the package's series machinery; spectrally accurate for
    functions analytic on an annulus around the circle.
    """
    theta = 2 * np.pi * np.arange(nodes) / nodes
    w = radius * np.exp(1j * theta)
    return complex(np.mean(f(center + w) * w))


@pytest.fixture(scope="session")
def sphere():
    return sphere_example()


@pytest.fixture(scope="session")
def hyperbolic():
    return hyperbolic_example()


@pytest.fixture(scope="session")
def sphere_chart(sphere):
    return chart_from_raw(*sphere)


@pytest.fixture(scope="session")
def hyperbolic_chart(hyperbolic):
    return chart_from_raw(*hyperbolic)


# one line per acceptance criterion, printed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
