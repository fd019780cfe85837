"""
Tests the discrete geometry helpers, the symmetry transforms and the
turning angles on hand-built meshes.
"""

import math

import numpy as np
import pytest

from cmcannuli.models.exceptions import MeshException, NumericException
from cmcannuli.verification.mesh import (
    angle_defect,
    barycentric_areas,
    check_nondegenerate,
    corner_angles,
    cotangent_laplacian,
    edge_valence,
    hausdorff,
    max_edge_length,
)
from cmcannuli.verification.rotation import segment_turning, turning_angles
from cmcannuli.verification.symmetry import reflect, rotate_about_axis


def grid_mesh(count: int = 6):
    """
    A flat count x count grid in the x1 x2 plane, split like the annulus
    quads.
    """
    x, y = np.meshgrid(np.arange(count), np.arange(count), indexing="ij")
    vertices = np.stack([x, y, np.zeros_like(x)], axis=-1).reshape(-1, 3).astype(float)

    faces = []
    for i in range(count - 1):
        for j in range(count - 1):
            a, b = i * count + j, (i + 1) * count + j
            c, d = (i + 1) * count + j + 1, i * count + j + 1
            faces += [[a, b, c], [a, c, d]]

    return vertices, np.array(faces)


def octahedron():
    vertices = np.array(
        [[1, 0, 0], [-1, 0, 0], [0, 1, 0], [0, -1, 0], [0, 0, 1], [0, 0, -1]], dtype=float
    )
    faces = np.array(
        [
            [0, 2, 4],
            [2, 1, 4],
            [1, 3, 4],
            [3, 0, 4],
            [2, 0, 5],
            [1, 2, 5],
            [3, 1, 5],
            [0, 3, 5],
        ]
    )
    return vertices, faces


def test_corner_angles_sum_to_pi():
    vertices, faces = grid_mesh()
    angles = corner_angles(vertices, faces)

    np.testing.assert_allclose(angles.sum(axis=1), math.pi, atol=1e-14)
    assert set(np.round(angles.ravel(), 12)) == {
        round(math.pi / 2, 12),
        round(math.pi / 4, 12),
    }


def test_barycentric_areas_partition_area():
    vertices, faces = grid_mesh()

    assert barycentric_areas(vertices, faces).sum() == pytest.approx(25.0)


def test_flat_laplacian_vanishes():
    vertices, faces = grid_mesh()
    laplacian = cotangent_laplacian(vertices, faces)
    interior = [i * 6 + j for i in range(1, 5) for j in range(1, 5)]

    np.testing.assert_allclose(laplacian[interior], 0.0, atol=1e-12)
    np.testing.assert_allclose(angle_defect(vertices, faces)[interior], 0.0, atol=1e-12)


def test_octahedron_curvature():
    vertices, faces = octahedron()

    # Four equilateral corners meet at each vertex.
    np.testing.assert_allclose(
        angle_defect(vertices, faces) * barycentric_areas(vertices, faces),
        2.0 * math.pi / 3.0,
        atol=1e-12,
    )

    laplacian = cotangent_laplacian(vertices, faces)
    radial = np.einsum("ij,ij->i", laplacian, vertices)
    assert np.all(radial < 0.0)


def test_edge_valence():
    vertices, faces = grid_mesh(3)
    counts = edge_valence(faces)

    assert counts.max() == 2
    assert np.sum(counts == 1) == 8
    assert max_edge_length(vertices, faces) == pytest.approx(math.sqrt(2.0))


def test_nondegenerate():
    vertices, faces = grid_mesh(3)
    check_nondegenerate(vertices, faces, 2.0)

    vertices[4] = vertices[0]

    with pytest.raises(MeshException):
        check_nondegenerate(vertices, faces, 2.0)


def test_hausdorff():
    points = np.random.default_rng(3).normal(size=(50, 3))

    assert hausdorff(points, points[::-1]) == 0.0
    assert hausdorff(points, points + [0.0, 0.0, 0.25]) <= 0.25 + 1e-15
    assert hausdorff(points, np.vstack([points, [[10.0, 0.0, 0.0]]])) > 5.0


def test_reflect_and_rotate():
    points = np.array([[1.0, 2.0, 3.0], [-1.0, 0.5, -2.0]])
    origin = np.array([0.5, 0.0, 0.0])

    mirrored = reflect(points, np.array([0.0, 0.0, 2.0]), origin)
    np.testing.assert_allclose(mirrored, points * [1.0, 1.0, -1.0])
    np.testing.assert_allclose(reflect(mirrored, np.array([0.0, 0.0, 1.0]), origin), points)

    turned = rotate_about_axis(points, math.pi, origin)
    np.testing.assert_allclose(turned[:, 2], points[:, 2])
    np.testing.assert_allclose(turned[:, :2] + points[:, :2], 2.0 * origin[:2], atol=1e-15)
    np.testing.assert_allclose(
        rotate_about_axis(turned, math.pi, origin), points, atol=1e-15
    )


@pytest.mark.parametrize("direction", [1.0, -1.0])
def test_turning_angles_circle(direction):
    theta = direction * np.linspace(0.0, 2.0 * math.pi, 64, endpoint=False)
    curve = np.stack([np.cos(theta), np.sin(theta), np.zeros_like(theta)], axis=-1)

    angles = turning_angles(curve)

    np.testing.assert_allclose(angles, direction * 2.0 * math.pi / 64, atol=1e-14)
    assert angles.sum() == pytest.approx(direction * 2.0 * math.pi)


def test_turning_angles_degenerate():
    curve = np.array([[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]])

    with pytest.raises(NumericException):
        turning_angles(curve)


def test_segment_turning_on_ellipse():
    # Clockwise, with mirror vertices at 0, 16, 32 and 48.
    theta = -np.linspace(0.0, 2.0 * math.pi, 64, endpoint=False)
    curve = np.stack([2.0 * np.cos(theta), np.sin(theta), np.zeros_like(theta)], axis=-1)

    angles = turning_angles(curve)
    arcs = segment_turning(angles, 2)

    np.testing.assert_allclose(arcs, -0.5 * math.pi, atol=1e-12)

    # Without splitting the mirror turns the arcs are unequal.
    whole = np.add.reduceat(np.roll(angles, 1), np.arange(0, 64, 16))
    assert np.max(np.abs(whole + 0.5 * math.pi)) > 1e-3
