"""
Discrete geometry on triangle meshes: corner angles, vertex areas, the
cotangent Laplacian, angle defects and point-set distances.
"""

import numpy as np
from scipy.spatial import cKDTree

from cmcannuli.models.exceptions import MeshException


def triangle_corners(vertices: np.ndarray, faces: np.ndarray):
    """
    Corner positions (F, 3, 3) and doubled areas (F,) of every triangle.
    """
    corners = vertices[faces]
    cross = np.cross(corners[:, 1] - corners[:, 0], corners[:, 2] - corners[:, 0])
    return corners, np.linalg.norm(cross, axis=-1)


def check_nondegenerate(vertices: np.ndarray, faces: np.ndarray, scale: float):
    _, doubled = triangle_corners(vertices, faces)
    smallest = float(doubled.min())

    if smallest <= 1e-14 * scale * scale:
        raise MeshException(
            f"Degenerate triangle {int(doubled.argmin())} with doubled area {smallest:.3e}"
        )


def corner_angles(vertices: np.ndarray, faces: np.ndarray) -> np.ndarray:
    """
    Interior angle at each corner, shape (F, 3).
    """
    corners = vertices[faces]
    angles = np.empty(faces.shape)

    for k in range(3):
        a = corners[:, (k + 1) % 3] - corners[:, k]
        b = corners[:, (k + 2) % 3] - corners[:, k]
        sin = np.linalg.norm(np.cross(a, b), axis=-1)
        angles[:, k] = np.arctan2(sin, np.einsum("ij,ij->i", a, b))

    return angles


def barycentric_areas(vertices: np.ndarray, faces: np.ndarray) -> np.ndarray:
    _, doubled = triangle_corners(vertices, faces)
    areas = np.zeros(len(vertices))
    np.add.at(areas, faces.ravel(), np.repeat(doubled / 6.0, 3))
    return areas


def cotangent_laplacian(vertices: np.ndarray, faces: np.ndarray) -> np.ndarray:
    """
    Delta x_i = (1 / (2 A_i)) sum_j (cot a_ij + cot b_ij)(x_j - x_i) with
    barycentric areas A_i; equal to 2 H n_i on a smooth surface.
    """
    angles = corner_angles(vertices, faces)
    cot = 1.0 / np.tan(angles)

    laplacian = np.zeros_like(vertices)

    for k in range(3):
        # The angle at corner k weighs the opposite edge (k+1, k+2).
        i, j = faces[:, (k + 1) % 3], faces[:, (k + 2) % 3]
        edge = (vertices[j] - vertices[i]) * cot[:, k, None]
        np.add.at(laplacian, i, edge)
        np.add.at(laplacian, j, -edge)

    return laplacian / (2.0 * barycentric_areas(vertices, faces)[:, None])


def angle_defect(vertices: np.ndarray, faces: np.ndarray) -> np.ndarray:
    """
    Gaussian curvature estimate (2 pi - sum of corner angles) / A_i.
    Only meaningful at interior vertices.
    """
    sums = np.zeros(len(vertices))
    np.add.at(sums, faces.ravel(), corner_angles(vertices, faces).ravel())
    return (2.0 * np.pi - sums) / barycentric_areas(vertices, faces)


def edge_valence(faces: np.ndarray) -> np.ndarray:
    """
    Number of faces sharing each undirected edge.
    """
    edges = np.concatenate([faces[:, [0, 1]], faces[:, [1, 2]], faces[:, [2, 0]]])
    edges = np.sort(edges, axis=1)
    _, counts = np.unique(edges, axis=0, return_counts=True)
    return counts


def max_edge_length(vertices: np.ndarray, faces: np.ndarray) -> float:
    corners = vertices[faces]
    lengths = np.linalg.norm(corners - np.roll(corners, 1, axis=1), axis=-1)
    return float(lengths.max())


def hausdorff(a: np.ndarray, b: np.ndarray) -> float:
    """
    Two-sided Hausdorff distance between two point sets.
    """
    forward = cKDTree(b).query(a)[0]
    backward = cKDTree(a).query(b)[0]
    return float(max(forward.max(), backward.max()))
