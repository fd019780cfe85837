"""
Tests the (y, z) integration, its first integrals and the separated oracle.
"""

import math

import numpy as np
import pytest
from pytest import fixture as sync_fixture

from cmcannuli.construction.dynamics import (
    default_u_window,
    find_tau,
    find_u1,
    first_integrals,
    integrate_yz,
    st_oracle,
)
from cmcannuli.construction.parameters import derive_constants, region_membership
from cmcannuli.construction.periods import st_half_periods
from cmcannuli.models.exceptions import DomainException
from cmcannuli.models.parameters import ParamPoint

GENERIC = ParamPoint(alpha=1.2, beta=1.5, gamma=2.0)
ROTATIONAL = ParamPoint(alpha=1.0, beta=1.0, gamma=math.sqrt(3.0))

# Off-diagonal points inside the region where the first crossing of y and z
# exists.
REGION_POINTS = [
    (1.2, 1.5, 2.0),
    (1.5, 2.0, 2.0),
    (1.1, 1.3, 1.5),
    (2.0, 3.0, 2.0),
    (1.3, 2.5, 1.8),
    (1.05, 1.2, 1.3),
]


@sync_fixture(scope="module")
def generic_trajectory():
    return integrate_yz(GENERIC)


def test_first_integrals_at_origin(generic_trajectory):
    start = generic_trajectory.state_at(0.0)
    h, k = first_integrals(start, generic_trajectory.a_hat)

    assert start.y == start.z == 0.0
    assert h == pytest.approx(start.y_prime**2 - start.z_prime**2, abs=1e-15)
    assert k == pytest.approx(start.z_prime**2, abs=1e-15)


def test_rotational_first_integrals():
    trajectory = integrate_yz(ROTATIONAL)

    assert trajectory.h0 == pytest.approx(1.0 / 3.0, abs=1e-14)
    assert trajectory.k0 == pytest.approx(0.0, abs=1e-15)


def test_first_integrals_conserved(generic_trajectory):
    assert generic_trajectory.max_drift < 1e-9

    for u in np.linspace(0.1, generic_trajectory.u1, 7):
        h, k = first_integrals(generic_trajectory.state_at(u), generic_trajectory.a_hat)
        assert h == pytest.approx(generic_trajectory.h0, abs=1e-9)
        assert k == pytest.approx(generic_trajectory.k0, abs=1e-9)


def test_z_vanishes_on_diagonal():
    trajectory = integrate_yz(ParamPoint(alpha=1.5, beta=1.5, gamma=2.0))

    assert np.all(trajectory.states[1] == 0.0)
    assert np.all(trajectory.states[3] == 0.0)


def test_parity(generic_trajectory):
    u = np.array([0.2, 0.5, 0.9])
    forward = generic_trajectory.evaluate(u)
    backward = generic_trajectory.evaluate(-u)

    np.testing.assert_allclose(backward[:2], -forward[:2], atol=0.0)
    np.testing.assert_allclose(backward[2:], forward[2:], atol=0.0)


def test_evaluate_outside_window(generic_trajectory):
    with pytest.raises(DomainException):
        generic_trajectory.evaluate(2.0 * generic_trajectory.u_max)


def test_window_contains_u1(generic_trajectory):
    assert generic_trajectory.u1 is not None
    assert 0.0 < generic_trajectory.u1 < generic_trajectory.u_max
    assert generic_trajectory.u_max == pytest.approx(default_u_window(GENERIC))
    assert abs(generic_trajectory.y(generic_trajectory.u1)) < 1e-10


def test_y_positive_before_u1(generic_trajectory):
    u = np.linspace(1e-6, generic_trajectory.u1 * (1.0 - 1e-6), 401)

    assert np.all(generic_trajectory.y(u) > 0.0)


def test_tau(generic_trajectory):
    tau = generic_trajectory.tau

    assert tau is not None
    assert 0.0 < tau < generic_trajectory.u1
    y, z = generic_trajectory.evaluate(tau)[:2]
    assert y == pytest.approx(z, abs=1e-10)


def test_tau_equals_u1_on_diagonal():
    trajectory = integrate_yz(ROTATIONAL)

    assert trajectory.tau == trajectory.u1


def test_tau_outside_region():
    p = ParamPoint(alpha=1.5, beta=1.2, gamma=2.0)
    trajectory = integrate_yz(p)

    assert trajectory.u1 is not None
    assert trajectory.tau is None

    with pytest.raises(DomainException):
        find_tau(trajectory, p)


def test_u1_needs_gamma_above_one():
    trajectory = integrate_yz(ParamPoint(alpha=1.2, beta=1.5, gamma=1.0))

    assert trajectory.u1 is None

    with pytest.raises(DomainException):
        find_u1(trajectory)


def test_integrate_rejects_bad_window():
    with pytest.raises(DomainException):
        integrate_yz(GENERIC, u_max=-1.0)


def test_initial_slope(generic_trajectory):
    constants = derive_constants(GENERIC)

    assert generic_trajectory.initial_slope == pytest.approx(
        0.5 * (constants.A + constants.B) * constants.C, rel=1e-15
    )


def test_st_oracle_turning_point():
    path = st_oracle(GENERIC)
    middle = len(path.lam) // 2

    assert path.lam[-1] == pytest.approx(2.0 * path.L_half)
    assert path.s[0] == 1.0
    r3 = derive_constants(GENERIC).C ** 2 + 1.0
    assert path.s[middle] == pytest.approx(r3, abs=1e-9)
    assert path.s[-1] == pytest.approx(1.0, abs=1e-9)


def test_st_oracle_matches_yz(generic_trajectory):
    path = st_oracle(GENERIC)
    y, z = path.mapped_yz()

    values = generic_trajectory.evaluate(path.u[1:-1])

    np.testing.assert_allclose(values[0], y[1:-1], atol=1e-7)
    np.testing.assert_allclose(values[1], z[1:-1], atol=1e-7)
    assert path.u[-1] == pytest.approx(generic_trajectory.u1, abs=1e-8)


@pytest.mark.parametrize("point", REGION_POINTS)
def test_st_oracle_matches_yz_across_region(point):
    p = ParamPoint(alpha=point[0], beta=point[1], gamma=point[2])

    assert region_membership(p).in_W
    assert p.alpha != p.beta

    trajectory = integrate_yz(p)
    assert trajectory.max_drift < 1e-9, f"first integral drift {trajectory.max_drift:.3e}"

    path = st_oracle(p)
    y, z = path.mapped_yz()
    values = trajectory.evaluate(path.u[1:-1])

    np.testing.assert_allclose(values[0], y[1:-1], atol=1e-7)
    np.testing.assert_allclose(values[1], z[1:-1], atol=1e-7)
    assert path.u[-1] == pytest.approx(trajectory.u1, abs=1e-8)


@pytest.mark.parametrize("point", REGION_POINTS)
def test_s_half_period_below_t_half_period(point):
    periods = st_half_periods(ParamPoint(alpha=point[0], beta=point[1], gamma=point[2]))

    assert periods.t_periodic
    margin = periods.M_half - periods.L_half
    assert margin > 1e-6, f"L = {periods.L_half}, M = {periods.M_half}"
