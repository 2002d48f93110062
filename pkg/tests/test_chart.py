import dataclasses
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ba_orthocoords.chart import build_chart, central_difference, sign_pattern_ok, with_residues
from ba_orthocoords.errors import ConfigurationError, SignViolation
from ba_orthocoords.omega import ResidueData, extract_residue_data, normalize_form
from ba_orthocoords.reference import hyperbolic_metric, sphere_metric

S3 = math.sqrt(3)
params = st.tuples(st.floats(-2, 2), st.floats(-2, 2)).map(np.array)


def test_sphere_chart_at_origin(sphere_chart):
    x = sphere_chart.x(np.zeros(2))
    np.testing.assert_allclose(x, [1 / S3] * 3, atol=1e-12)
    assert np.sum(x**2) == pytest.approx(1, abs=1e-12)


def test_hyperbolic_chart_at_origin(hyperbolic_chart):
    x = hyperbolic_chart.x(np.zeros(2))
    np.testing.assert_allclose(x, [S3, 1, 1], atol=1e-12)
    assert x[0] ** 2 - x[1] ** 2 - x[2] ** 2 == pytest.approx(1, abs=1e-12)


def test_signatures(sphere_chart, hyperbolic_chart):
    assert list(sphere_chart.signature) == [1, 1, 1]
    assert list(hyperbolic_chart.signature) == [1, -1, -1]


@settings(max_examples=25, deadline=None)
@given(params)
def test_sphere_first_lame_coefficient_is_constant(sphere_chart, u):
    assert sphere_chart.lame_squared(u)[0] == pytest.approx(1 / 3, abs=1e-12)


def test_sphere_second_lame_coefficient_on_diagonal(sphere_chart):
    for t in (0.0, 0.7, 2.5):
        assert sphere_chart.lame(np.array([t, t]))[1] == pytest.approx(1 / S3, abs=1e-12)


def test_hyperbolic_lame_at_origin(hyperbolic_chart):
    np.testing.assert_allclose(hyperbolic_chart.lame(np.zeros(2)), [1, 1], atol=1e-12)
    # the closed-form expression reduces to (104 + 60 sqrt 3)/(52 + 30 sqrt 3) - 1 = 1
    assert hyperbolic_metric(0.0, 0.0)[1] == pytest.approx(1, abs=1e-12)


@settings(max_examples=25, deadline=None)
@given(params)
def test_metric_matches_closed_form(sphere_chart, hyperbolic_chart, u):
    np.testing.assert_allclose(sphere_chart.lame_squared(u), sphere_metric(*u), atol=1e-9)
    ref = hyperbolic_metric(*u)
    np.testing.assert_allclose(hyperbolic_chart.lame_squared(u), ref, atol=1e-9 * max(1, ref[1]))


@settings(max_examples=25, deadline=None)
@given(params)
def test_lame_matches_coordinate_derivatives(sphere_chart, u):
    dx = sphere_chart.dx(u)
    if np.min(sphere_chart.lame_squared(u)) < 1e-8:
        return
    np.testing.assert_allclose(np.sum(dx**2, axis=1), sphere_chart.lame_squared(u), atol=1e-12)


def test_dx_matches_finite_differences(hyperbolic_chart):
    u = np.array([0.2, -0.3])
    dx = hyperbolic_chart.dx(u)
    for i in range(2):
        fd = central_difference(hyperbolic_chart.x, u, i, 1e-4)
        np.testing.assert_allclose(dx[i], fd, atol=1e-9)


def test_rotation_coefficients(sphere_chart):
    u = np.array([0.5, 0.2])
    beta = sphere_chart.rotation_coefficients(u)
    assert beta[1, 0] == pytest.approx(0, abs=1e-12)  # H_1 is constant
    assert beta[0, 0] == beta[1, 1] == 0
    finer = sphere_chart.rotation_coefficients(u, step=5e-5)
    assert np.max(np.abs(beta - finer)) <= 1e-7
    # d H_2 / du over H_1, from the closed-form metric
    t = 2 * (u[0] - u[1]) / S3
    dh2 = -(2 / S3) * math.cos(t) / 3 / (2 * math.sqrt((1 - math.sin(t)) / 3))
    assert beta[0, 1] == pytest.approx(dh2 * S3, abs=1e-8)


def test_unnormalized_form_is_rejected(sphere):
    sd, om = sphere
    with pytest.raises(ConfigurationError, match="not normalized"):
        build_chart(sd, om.scaled(2.0))


def test_wrong_curvature_target_is_rejected(sphere):
    sd, om = sphere
    om_n, _ = normalize_form(sd, om, extract_residue_data(sd, om))
    with pytest.raises(ConfigurationError, match="data realizes curvature \\+1"):
        build_chart(dataclasses.replace(sd, curvature_target=-1), om_n)


def test_sign_pattern():
    assert sign_pattern_ok(ResidueData((1, 1, 1), -3, (1, 1)), 1)
    assert not sign_pattern_ok(ResidueData((1, 1, 1), -3, (1, 1)), -1)
    assert sign_pattern_ok(ResidueData((3, -1, -1), -1, (-1, -1)), -1)
    assert not sign_pattern_ok(ResidueData((3, 1, -1), -1, (-1, -1)), 1)


def test_wrong_sign_lame_raises(sphere_chart):
    broken = with_residues(sphere_chart, C=(-1.0, -1.0))
    with pytest.raises(SignViolation) as err:
        broken.lame(np.zeros(2))
    assert err.value.index == 0
    assert err.value.u == (0.0, 0.0)
