"""
Tests the annuli with three, four and five symmetry planes: rotation index,
embeddedness and the growth of the mean curvature with n.
"""

import numpy as np
import pytest

from cmcannuli.construction.annulus import boundary_sphere
from cmcannuli.verification.embedding import check_embedded
from cmcannuli.verification.rotation import check_rotation_index


@pytest.mark.parametrize("n", [3, 4])
def test_rotation_index(n, higher_order_models):
    model = higher_order_models[n]
    verdict = check_rotation_index(model)

    assert model.n == n
    assert verdict.passed, verdict.details
    assert verdict.details.startswith("index -1")


def test_rotation_index_deformed_n3(deformed_model_n3):
    verdict = check_rotation_index(deformed_model_n3)

    assert verdict.passed, verdict.details


def test_embedded_n3_rotational(higher_order_models):
    verdict = check_embedded(higher_order_models[3])

    assert verdict.passed, verdict.details
    assert verdict.residual == 0.0


def test_embedded_n3_deformed(branch_n3, deformed_model_n3):
    assert not branch_n3.truncated, branch_n3.notice
    assert branch_n3.mu == pytest.approx([0.0, 0.01, 0.02])
    assert not deformed_model_n3.rotational

    verdict = check_embedded(deformed_model_n3)

    assert verdict.passed, verdict.details
    assert verdict.residual == 0.0


def test_boundary_sphere_matches_assembly(
    rotational_point, rotational_model, higher_order_models
):
    _, radius = boundary_sphere(rotational_point)

    assert radius == pytest.approx(rotational_model.boundary_radius, rel=1e-12)

    model = higher_order_models[3]
    _, radius = boundary_sphere(model.family_point)

    assert radius == pytest.approx(model.boundary_radius, rel=1e-12)


def test_mean_curvature_increases_with_n(rotational_points):
    H = [0.5 * boundary_sphere(rotational_points[n])[1] for n in range(2, 6)]

    assert np.all(np.diff(H) > 0.0), f"H at mu = 0 for n = 2..5: {H}"
