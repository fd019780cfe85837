"""
Shared constructions for the test session: the n = 2 family near its
rotational end, the rotational ends for n = 3, 4, 5, and annuli assembled at
a reduced resolution.
"""

from pytest import fixture as sync_fixture

from cmcannuli.construction.annulus import assemble_annulus, assemble_nodoid_control
from cmcannuli.construction.family import (
    continue_family,
    family_point,
    find_beta1,
    find_beta_star,
)
from cmcannuli.verification.runner import verify_model_sync

RESOLUTION = (65, 1024)
MU_LIST = [0.0, 0.02, 0.04]


@sync_fixture(scope="session")
def beta1():
    return find_beta1(2)


@sync_fixture(scope="session")
def beta_star(beta1):
    return find_beta_star(2, beta1=beta1)


@sync_fixture(scope="session")
def rotational_point(beta_star):
    return family_point(2, 1.0, beta_star, mu=0.0)


@sync_fixture(scope="session")
def branch(beta_star):
    return continue_family(2, MU_LIST, beta_star=beta_star)


@sync_fixture(scope="session")
def rotational_model(rotational_point):
    return assemble_annulus(rotational_point, RESOLUTION)


@sync_fixture(scope="session")
def deformed_model(branch):
    return assemble_annulus(branch.points[-1], RESOLUTION)


@sync_fixture(scope="session")
def rotational_verdicts(rotational_model):
    return {v.name: v for v in verify_model_sync(rotational_model)}


@sync_fixture(scope="session")
def deformed_verdicts(deformed_model):
    return {v.name: v for v in verify_model_sync(deformed_model)}


@sync_fixture(scope="session")
def nodoid_control(rotational_point):
    return assemble_nodoid_control(rotational_point, (65, 256))


@sync_fixture(scope="session")
def resolution():
    return RESOLUTION


@sync_fixture(scope="session")
def mu_list():
    return MU_LIST


@sync_fixture(scope="session")
def rotational_points(rotational_point):
    """
    The mu = 0 family points for n = 2, ..., 5.
    """
    points = {2: rotational_point}

    for n in range(3, 6):
        points[n] = family_point(n, 1.0, find_beta_star(n), mu=0.0)

    return points


@sync_fixture(scope="session")
def higher_order_models(rotational_points):
    return {n: assemble_annulus(rotational_points[n], (65, 512 * n)) for n in (3, 4)}


@sync_fixture(scope="session")
def branch_n3(rotational_points):
    return continue_family(3, [0.0, 0.01, 0.02], beta_star=rotational_points[3].param.beta)


@sync_fixture(scope="session")
def deformed_model_n3(branch_n3):
    return assemble_annulus(branch_n3.points[-1], (65, 1536))
