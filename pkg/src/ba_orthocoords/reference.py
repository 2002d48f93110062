"""Closed forms of the coordinates and metrics of the two bundled examples.

They are independent of the construction pipeline and serve as regression
oracles for it.
"""

from __future__ import annotations

import numpy as np

S3 = np.sqrt(3.0)


def sphere_x(u, v):
    t = (u - v) / S3
    x1 = (np.cos(t) + np.sin(t)) / S3
    x2 = (
        (3 + S3) * np.cos(t + v)
        + 3 * (-1 + S3) * np.cos(t - v)
        - 3 * (1 + S3) * np.sin(t + v)
        + (-3 + S3) * np.sin(t - v)
    ) / 12
    x3 = (
        3 * (1 + S3) * np.cos(t + v)
        + (-3 + S3) * np.cos(t - v)
        + (3 + S3) * np.sin(t + v)
        - 3 * (-1 + S3) * np.sin(t - v)
    ) / 12
    return np.array([x1, x2, x3])


def sphere_metric(u, v):
    """``(H_1^2, H_2^2)``."""
    return np.array([1 / 3 + 0 * u, (1 - np.sin(2 * (u - v) / S3)) / 3])


def hyperbolic_x(u, v):
    em, ep = np.exp(-u - v), np.exp(u + v)
    x1 = (em + (2 + S3) * ep) / (1 + S3)
    x2 = (
        (-2 * em + (6 + 4 * S3) * ep) * np.cos(v) - 2 * (S3 * em + (2 + S3) * ep) * np.sin(v)
    ) / (4 * (1 + S3))
    x3 = (
        ((3 + S3) * em + (5 + 3 * S3) * ep) * np.cos(v)
        + ((-1 - S3) * em + (9 + 5 * S3) * ep) * np.sin(v)
    ) / (4 * (2 + S3))
    return np.array([x1, x2, x3])


def hyperbolic_metric(u, v):
    """``(H_1^2, H_2^2)``."""
    g = ((7 + 4 * S3) * np.exp(-2 * (u + v)) + (97 + 56 * S3) * np.exp(2 * (u + v))) / (
        52 + 30 * S3
    ) - 1
    return np.array([1 + 0 * u, g])


CLOSED_FORMS = {
    "s2": (sphere_x, sphere_metric),
    "h2": (hyperbolic_x, hyperbolic_metric),
}
