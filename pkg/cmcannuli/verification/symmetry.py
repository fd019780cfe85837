"""
Symmetry checks: the horizontal mirror, the n vertical mirror planes through
the axis and the rotations about it.
"""

import math

import numpy as np

from cmcannuli.config import settings
from cmcannuli.models.family import AnnulusModel
from cmcannuli.models.report import Verdict
from cmcannuli.verification.mesh import hausdorff, max_edge_length

ROTATION_FACTOR = 100.0


def reflect(points: np.ndarray, normal: np.ndarray, origin: np.ndarray) -> np.ndarray:
    normal = normal / np.linalg.norm(normal)
    offset = (points - origin) @ normal
    return points - 2.0 * offset[:, None] * normal


def rotate_about_axis(points: np.ndarray, angle: float, origin: np.ndarray) -> np.ndarray:
    """
    Rotate about the vertical line through ``origin``.
    """
    cos, sin = math.cos(angle), math.sin(angle)
    rotation = np.array([[cos, -sin, 0.0], [sin, cos, 0.0], [0.0, 0.0, 1.0]])
    return (points - origin) @ rotation.T + origin


def symmetry_residuals(model: AnnulusModel) -> dict[str, float]:
    """
    Normalized Hausdorff residuals of every tested transformation, keyed by
    a short label.
    """
    vertices = model.vertices()
    origin = model.axis_point
    diameter = model.diameter

    def residual(image: np.ndarray) -> float:
        return hausdorff(vertices, image) / diameter

    residuals = {"mirror x3": residual(reflect(vertices, np.array([0.0, 0.0, 1.0]), origin))}

    for k, normal in enumerate(model.symmetry_plane_normals()):
        residuals[f"plane {k}"] = residual(reflect(vertices, normal, origin))

    residuals["rotation 2pi/n"] = residual(
        rotate_about_axis(vertices, 2.0 * math.pi / model.n, origin)
    )
    residuals["rotation pi/n"] = residual(
        rotate_about_axis(vertices, math.pi / model.n, origin)
    )

    if model.rotational:
        rng = np.random.default_rng(settings.symmetry_seed)
        for k, angle in enumerate(rng.uniform(0.0, 2.0 * math.pi, 3)):
            residuals[f"random rotation {k}"] = residual(
                rotate_about_axis(vertices, float(angle), origin)
            )

    return residuals


def check_symmetry(model: AnnulusModel, tolerance: float | None = None) -> Verdict:
    """
    The mirror images of the vertex set through x3 = 0 and through each of
    the n vertical planes, and its image under rotation by 2 pi / n, must
    reproduce the vertex set.

    For mu > 0 the rotation by pi / n must fail by more than 100 tolerances,
    so the tested group is exactly the prismatic group of order 4n. At
    mu = 0 three seeded rotations by arbitrary angles must pass instead, to
    within the mesh resolution.
    """
    tolerance = settings.tol_symmetry if tolerance is None else tolerance

    residuals = symmetry_residuals(model)
    required = [
        value
        for label, value in residuals.items()
        if label == "mirror x3" or label.startswith("plane") or label == "rotation 2pi/n"
    ]
    residual = max(required)

    rotated = residuals["rotation pi/n"]
    summary = ", ".join(f"{label}: {value:.2e}" for label, value in residuals.items())

    if model.rotational:
        discrete = max_edge_length(model.vertices(), model.faces()) / model.diameter
        arbitrary = max(v for k, v in residuals.items() if k.startswith("random"))

        if arbitrary > discrete:
            residual = math.inf

        order = "rotational"
    else:
        if rotated <= ROTATION_FACTOR * tolerance:
            residual = math.inf

        order = f"prismatic of order {4 * model.n}"

    return Verdict.from_residual(
        "symmetry", residual, tolerance, details=f"group {order}; {summary}"
    )
