import dataclasses
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ba_orthocoords.chart import central_difference
from ba_orthocoords.curve import PointOnCurve
from ba_orthocoords.errors import ConfigurationError, DomainError
from ba_orthocoords.rational import INF
from ba_orthocoords.reference import hyperbolic_x, sphere_x
from ba_orthocoords.solver import assemble_system, build_ansatz, eval_psi, eval_psi_derivative, solve

S3 = math.sqrt(3)
params = st.tuples(st.floats(-3, 3), st.floats(-3, 3)).map(np.array)


def test_system_is_five_by_five(sphere, hyperbolic):
    for sd, _ in (sphere, hyperbolic):
        M, rhs = assemble_system(sd, np.zeros(2))
        assert M.shape == (5, 5)
        assert rhs.shape == (5,)


@settings(max_examples=25, deadline=None)
@given(params)
def test_leading_coefficient_is_constant(sphere, hyperbolic, u):
    assert solve(sphere[0], u).leading[0] == pytest.approx(1 / S3, abs=1e-12)
    assert solve(hyperbolic[0], u).leading[0] == pytest.approx(1, abs=1e-12)


@settings(max_examples=25, deadline=None)
@given(params)
def test_psi_at_r_is_h(sphere, u):
    sd, _ = sphere
    sol = solve(sd, u)
    assert eval_psi(sol, sd.r) == pytest.approx(1 / S3, abs=1e-12)
    assert abs(sol.psi_derivative(0, sd.r)) < 1e-12
    assert abs(sol.psi_derivative(1, sd.r)) < 1e-12


@settings(max_examples=25, deadline=None)
@given(params)
def test_glued_points_agree(sphere, hyperbolic, u):
    for sd, _ in (sphere, hyperbolic):
        sol = solve(sd, u)
        for g in sd.glue:
            a, b = sol.psi(g.first), sol.psi(g.second)
            assert abs(a - b) <= 1e-12 * max(1.0, abs(a))  # psi grows like e^(u+v) on H^2


def test_psi_at_origin_matches_closed_forms(sphere, hyperbolic):
    sd, _ = sphere
    sol = solve(sd, np.zeros(2))
    # A_1 = 1 after normalization, so psi(Q_1) = x_1
    assert sol.psi(sd.Q[0]) == pytest.approx(sphere_x(0.0, 0.0)[0], abs=1e-12)
    assert sol.psi(sd.Q[0]) == pytest.approx(1 / S3, abs=1e-12)
    sd, _ = hyperbolic
    sol = solve(sd, np.zeros(2))
    assert sd.Q[1].is_infinite
    assert sol.psi(sd.Q[1]) == pytest.approx(hyperbolic_x(0.0, 0.0)[1], abs=1e-12)
    assert sol.psi(sd.Q[1]) == pytest.approx(1.0, abs=1e-12)


def test_exact_derivative_example(sphere):
    sd, _ = sphere
    # d/du of (cos t + sin t)/sqrt(3) with t = (u - v)/sqrt(3), at the origin
    assert eval_psi_derivative(sd, np.zeros(2), 0, sd.Q[0]) == pytest.approx(1 / 3, abs=1e-12)


@pytest.mark.parametrize("which", ["sphere", "hyperbolic"])
def test_exact_derivatives_match_finite_differences(which, request):
    sd, _ = request.getfixturevalue(which)
    ans = build_ansatz(sd)
    rng = np.random.default_rng(7)
    for u in rng.uniform(0, 1, size=(25, 2)):
        sol = solve(ans, u)
        for q in sd.Q:
            for j in range(2):
                fd = central_difference(lambda p: solve(ans, p, derivatives=False).psi(q), u, j, 1e-5)
                assert abs(sol.psi_derivative(j, q) - fd) <= 1e-8


def test_solve_is_deterministic(sphere):
    sd, _ = sphere
    u = np.array([0.3, -1.7])
    a, b = solve(sd, u), solve(sd, u)
    assert np.array_equal(a.coeffs, b.coeffs)
    assert np.array_equal(a.coeff_derivs, b.coeff_derivs)


def test_gamma_on_node_is_a_configuration_error(sphere):
    sd, _ = sphere
    node = sd.glue[2].first  # c on the second component
    with pytest.raises(ConfigurationError):
        assemble_system(dataclasses.replace(sd, gamma=(node, sd.gamma[1])), np.zeros(2))


def test_psi_undefined_at_p_and_gamma(sphere):
    sd, _ = sphere
    sol = solve(sd, np.zeros(2))
    with pytest.raises(DomainError):
        sol.psi(sd.P[0])
    with pytest.raises(DomainError):
        sol.psi(sd.gamma[0])


def test_p_at_zero_is_supported(sphere):
    # swap the roles of 0 and inf on the first component: z -> 1/z maps the
    # data to itself with P_1 at 0 and r at inf
    sd, _ = sphere
    flip = lambda p: PointOnCurve(p.component, INF if p.z == 0 else (0 if p.is_infinite else 1 / p.z))
    glue = tuple(
        dataclasses.replace(g, first=flip(g.first)) if g.first.component == 0 else g for g in sd.glue
    )
    flipped = dataclasses.replace(sd, glue=glue, P=(flip(sd.P[0]), sd.P[1]), r=flip(sd.r))
    u = np.array([0.4, 0.9])
    a, b = solve(sd, u), solve(flipped, u)
    for q in sd.Q:
        assert a.psi(q) == pytest.approx(b.psi(q), abs=1e-12)


def test_wrong_parameter_count(sphere):
    with pytest.raises(ValueError):
        solve(sphere[0], np.zeros(3))
