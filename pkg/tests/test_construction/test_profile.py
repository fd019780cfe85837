"""
Tests the boundary row x(v), the nodoid reference solution and the omega
field built from them.
"""

import math

import numpy as np
import pytest
from pytest import fixture as sync_fixture

from cmcannuli.construction.annulus import symmetric_grid
from cmcannuli.construction.dynamics import integrate_yz
from cmcannuli.construction.omega import build_omega, riccati_phi
from cmcannuli.construction.parameters import eval_p, quartic
from cmcannuli.construction.periods import sigma_period
from cmcannuli.construction.profile import (
    necksize,
    nodoid_omega,
    nodoid_period,
    profile_x,
)
from cmcannuli.models.parameters import ParamPoint

GENERIC = ParamPoint(alpha=1.2, beta=1.5, gamma=2.0)


def test_profile_end_points():
    p = ParamPoint(alpha=2.0, beta=1.0, gamma=2.0)
    sigma = sigma_period(p)

    samples = profile_x(p, [0.0, sigma, 2.0 * sigma])

    np.testing.assert_allclose(samples.x, [0.25, 1.0, 0.25], atol=1e-9)
    np.testing.assert_allclose(samples.x_prime, 0.0, atol=1e-8)


def test_profile_solves_quartic_equation():
    p = ParamPoint(alpha=2.0, beta=1.5, gamma=2.5)
    v = np.linspace(0.0, 2.0 * sigma_period(p), 301)

    samples = profile_x(p, v)

    np.testing.assert_allclose(
        4.0 * samples.x_prime**2, eval_p(quartic(p), samples.x), atol=1e-10
    )


def test_profile_is_even():
    samples = profile_x(GENERIC, [-0.7, 0.7, -2.1, 2.1])

    assert samples.x[0] == samples.x[1]
    assert samples.x[2] == samples.x[3]
    assert samples.x_prime[0] == -samples.x_prime[1]


def test_profile_rotational():
    samples = profile_x(ParamPoint(alpha=1.0, beta=2.0, gamma=3.0), [0.0, 0.4, 5.0])

    np.testing.assert_allclose(samples.x, 1.0 / 3.0, rtol=1e-15)
    assert np.all(samples.x_prime == 0.0)


def test_necksize():
    assert necksize(math.sqrt(3.0)) == pytest.approx(1.0)


def test_nodoid_period():
    gamma = 2.0
    period = nodoid_period(gamma)
    values = nodoid_omega(gamma, [0.0, 0.5 * period, period, -0.3, 0.3])

    assert values[0] == pytest.approx(-math.log(gamma), abs=1e-14)
    assert values[1] == pytest.approx(math.log(gamma), abs=1e-8)
    assert values[2] == pytest.approx(-math.log(gamma), abs=1e-8)
    assert values[3] == values[4]


@sync_fixture(scope="module")
def generic_field():
    trajectory = integrate_yz(GENERIC)
    u = symmetric_grid(0.5 * trajectory.u1, 41)
    v = np.linspace(0.0, 2.0 * sigma_period(GENERIC), 401)

    return trajectory, build_omega(GENERIC, trajectory, u, v)


def test_omega_boundary_row(generic_field):
    _, field = generic_field
    middle = len(field.u) // 2

    assert field.u[middle] == 0.0
    np.testing.assert_allclose(
        field.omega[middle], np.log(profile_x(GENERIC, field.v).x), atol=1e-15
    )
    np.testing.assert_allclose(field.omega_u[middle], 0.0, atol=0.0)


def test_riccati_phi_on_boundary_row(generic_field):
    trajectory, field = generic_field
    x = profile_x(GENERIC, field.v).x
    rows = trajectory.evaluate(0.0)[:, None]

    np.testing.assert_allclose(
        riccati_phi(rows, x, trajectory.a_hat), eval_p(quartic(GENERIC), x), atol=1e-12
    )


def test_omega_derivatives_match_differences(generic_field):
    _, field = generic_field

    du = np.gradient(field.omega, field.u, axis=0)
    dv = np.gradient(field.omega, field.v, axis=1)

    np.testing.assert_allclose(du[1:-1, 1:-1], field.omega_u[1:-1, 1:-1], atol=1e-3)
    np.testing.assert_allclose(dv[1:-1, 1:-1], field.omega_v[1:-1, 1:-1], atol=1e-3)


def test_omega_odd_symmetry_in_v(generic_field):
    _, field = generic_field

    np.testing.assert_allclose(field.omega, field.omega[:, ::-1], atol=1e-8)
    np.testing.assert_allclose(field.omega_v, -field.omega_v[:, ::-1], atol=1e-4)


def test_omega_rotational_is_v_independent():
    p = ParamPoint(alpha=1.0, beta=1.0, gamma=math.sqrt(3.0))
    trajectory = integrate_yz(p)
    field = build_omega(
        p, trajectory, symmetric_grid(0.5 * trajectory.u1, 11), np.linspace(0.0, 3.0, 7)
    )

    assert np.all(field.omega == field.omega[:, :1])
    np.testing.assert_allclose(field.omega_v, 0.0, atol=1e-6)
