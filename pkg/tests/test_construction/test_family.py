"""
Tests the rotational arc, its roots beta1 and beta*, and the continuation
in mu, using the session constructions for n = 2.
"""

import math

import pytest

import cmcannuli.construction.family as family
from cmcannuli.construction.dynamics import integrate_yz
from cmcannuli.construction.family import (
    continue_family,
    level_point,
    upsilon,
)
from cmcannuli.construction.frame import integrate_profile_frame
from cmcannuli.construction.parameters import auxiliary_function, derive_constants
from cmcannuli.construction.periods import per_map
from cmcannuli.construction.spheres import center_height
from cmcannuli.models.exceptions import BracketException, DomainException
from cmcannuli.models.family import FamilyPoint
from cmcannuli.models.parameters import ParamPoint


def test_level_point_rotational():
    p = level_point(2, 1.0, 1.0)

    assert p.gamma == pytest.approx(math.sqrt(3.0), abs=1e-10)


@pytest.mark.parametrize("n", [0, 1, -3])
def test_level_point_rejects_n(n):
    with pytest.raises(DomainException):
        level_point(n, 1.0, 1.5)


def test_upsilon_domain():
    with pytest.raises(DomainException):
        upsilon(2, 0.5)

    assert upsilon(3, 2.0).alpha == 1.0


def test_beta1(beta1):
    assert beta1 > 1.0
    assert auxiliary_function(derive_constants(upsilon(2, beta1))) == pytest.approx(
        0.0, abs=1e-10
    )


def test_beta_star(beta1, beta_star, rotational_point):
    assert 1.0 < beta_star < beta1
    assert rotational_point.mu == 0.0
    assert rotational_point.param.alpha == 1.0
    assert rotational_point.param.beta == beta_star
    assert rotational_point.matching_residual == pytest.approx(0.0, abs=1e-8)
    assert rotational_point.per == pytest.approx(-0.5, abs=1e-10)


def test_u_star_is_center_root(rotational_point):
    p = rotational_point.param
    trajectory = integrate_yz(p)
    curve = integrate_profile_frame(p, trajectory)

    assert 0.0 < rotational_point.u_star < trajectory.u1
    assert center_height(curve, rotational_point.u_star)[0] == pytest.approx(
        0.0, abs=1e-9
    )
    assert center_height(curve, 0.5 * rotational_point.u_star)[0] < 0.0


def test_branch(branch, mu_list):
    assert not branch.truncated
    assert branch.notice is None
    assert branch.mu == pytest.approx(mu_list)

    for point in branch.points:
        assert point.param.alpha == pytest.approx(1.0 + point.mu, abs=1e-15)
        assert point.per == pytest.approx(-0.5, abs=1e-10)
        assert point.matching_residual == pytest.approx(0.0, abs=1e-8)
        assert per_map(point.param) == pytest.approx(-0.5, abs=1e-10)


def test_branch_moves_in_beta(branch):
    betas = [p.param.beta for p in branch.points]

    assert len(set(betas)) == len(betas)


@pytest.mark.parametrize("mu_list", [[], [0.1, 0.2], [0.0, 0.2, 0.1], [0.0, 0.0]])
def test_continue_rejects_mu_lists(mu_list):
    with pytest.raises(DomainException):
        continue_family(2, mu_list, beta_star=1.5)


def test_continue_truncates(beta_star, monkeypatch):
    attempts = []

    def refuse(n, mu, guess, width, tol):
        attempts.append(mu)
        raise BracketException(f"refused mu={mu}", estimate=guess)

    monkeypatch.setattr(family, "_correct", refuse)

    branch = continue_family(2, [0.0, 0.04], beta_star=beta_star, max_halvings=2)

    assert branch.truncated
    assert branch.mu == [0.0]
    assert "mu=0.04" in branch.notice
    assert attempts == pytest.approx([0.04, 0.02, 0.01])


def test_secant_prediction():
    def point(mu, beta):
        return FamilyPoint(
            n=2,
            mu=mu,
            param=ParamPoint(alpha=1.0 + mu, beta=beta, gamma=2.0),
            u_star=0.5,
            tau=0.5,
            sigma=1.0,
            per=-0.5,
        )

    history = [point(0.0, 1.5), point(0.1, 1.7)]

    assert family._predict(history[:1], 0.1) == 1.5
    assert family._predict(history, 0.2) == pytest.approx(1.9)
