"""
Tests the orientation predicate, the segment and triangle tests and the
self-intersection search.
"""

import numpy as np
import pytest

from cmcannuli.verification.embedding import (
    candidate_pairs,
    check_embedded,
    intersecting_pairs,
    orient3d,
    segment_crosses_triangle,
    triangles_intersect,
)

A = np.array([[0.0, 0.0, 0.0]])
B = np.array([[1.0, 0.0, 0.0]])
C = np.array([[0.0, 1.0, 0.0]])


@pytest.mark.parametrize(
    "d,expected",
    [
        ([0.0, 0.0, -1.0], 1),
        ([0.2, 0.3, 1.0], -1),
        ([0.3, 0.3, 0.0], 0),
        ([5.0, -7.0, 0.0], 0),
        ([0.1, 0.2, 2.0**-60], -1),
        ([0.1, 0.2, -(2.0**-60)], 1),
    ],
)
def test_orient3d(d, expected):
    assert orient3d(A, B, C, np.array([d]))[0] == expected


def test_orient3d_exact_fallback():
    # Nearly collinear points whose determinant cancels in floating point.
    a = np.array([[0.1, 0.1, 0.1]])
    b = np.array([[0.2, 0.2, 0.2]])
    c = np.array([[0.3, 0.3, 0.3]])
    d = np.array([[0.7, 0.2, 0.9]])

    assert orient3d(a, b, c, d)[0] == 0
    assert orient3d(a, b, c + [0.0, 0.0, 1e-12], d)[0] != 0


def segment(p, q):
    return np.array([p]), np.array([q])


def test_segment_through_triangle():
    p, q = segment([0.2, 0.2, -1.0], [0.2, 0.2, 1.0])
    assert segment_crosses_triangle(p, q, A, B, C)[0]


def test_segment_beside_triangle():
    p, q = segment([0.8, 0.8, -1.0], [0.8, 0.8, 1.0])
    assert not segment_crosses_triangle(p, q, A, B, C)[0]


def test_segment_touching_triangle():
    p, q = segment([0.2, 0.2, 0.0], [0.2, 0.2, 1.0])
    assert segment_crosses_triangle(p, q, A, B, C)[0]


def test_segment_above_triangle():
    p, q = segment([0.2, 0.2, 0.5], [0.2, 0.2, 1.0])
    assert not segment_crosses_triangle(p, q, A, B, C)[0]


def test_coplanar_segment_not_reported():
    p, q = segment([0.1, 0.1, 0.0], [0.3, 0.3, 0.0])
    assert not segment_crosses_triangle(p, q, A, B, C)[0]


def test_triangles_intersect():
    first = np.array([[[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]]])
    crossing = np.array([[[0.2, 0.2, -1.0], [0.2, 0.2, 1.0], [0.3, -1.0, 0.0]]])
    apart = crossing + [0.0, 0.0, 3.0]

    assert triangles_intersect(first, crossing)[0]
    assert not triangles_intersect(first, apart)[0]
    np.testing.assert_array_equal(
        triangles_intersect(np.repeat(first, 2, axis=0), np.vstack([crossing, apart])),
        [True, False],
    )


def test_adjacent_triangles_skipped():
    vertices = np.array(
        [[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [1.0, 1.0, 0.0]]
    )
    faces = np.array([[0, 1, 2], [1, 3, 2]])

    assert len(candidate_pairs(vertices, faces)) == 0
    assert len(intersecting_pairs(vertices, faces)) == 0


def test_crossing_sheets():
    vertices = np.array(
        [
            [0.0, 0.0, 0.0],
            [1.0, 0.0, 0.0],
            [0.0, 1.0, 0.0],
            [0.2, 0.2, -1.0],
            [0.2, 0.2, 1.0],
            [0.3, -1.0, 0.0],
        ]
    )
    faces = np.array([[0, 1, 2], [3, 4, 5]])

    np.testing.assert_array_equal(intersecting_pairs(vertices, faces), [[0, 1]])


def test_rotational_model_is_embedded(rotational_model):
    verdict = check_embedded(rotational_model)

    assert verdict.passed
    assert verdict.residual == 0.0


def test_nodoid_control_self_intersects(nodoid_control):
    verdict = check_embedded(nodoid_control)

    assert not verdict.passed
    assert verdict.residual > 0.0
    assert "first pair" in verdict.details
